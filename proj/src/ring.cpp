#include "cdelta/ring.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include "cdelta/subset.hpp"
#include "ring_data.hpp"

namespace cdelta {

// ---------------------------------------------------------------------------
// Errors

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::MalformedTable: return "MalformedTable";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::NonCommutativeBase: return "NonCommutativeBase";
    case ErrorCode::NonMonicModulus: return "NonMonicModulus";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::NotUnital: return "NotUnital";
    case ErrorCode::NotASubring: return "NotASubring";
    case ErrorCode::NonCentralParameter: return "NonCentralParameter";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::PredicateParseError: return "PredicateParseError";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::vector<std::uint32_t> witness,
             std::string law)
    : std::runtime_error(message), code_(code), witness_(std::move(witness)), law_(std::move(law)) {}

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : Error(ErrorCode::SyntaxError,
            "syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
                message),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------
// Helpers

std::size_t checked_power(std::size_t base, std::size_t exponent, std::size_t cap) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > cap / base) return cap + 1;
    result *= base;
  }
  return result;
}

void require_order_within(std::size_t order, std::size_t cap, const std::string& what) {
  if (order > cap) {
    throw Error(ErrorCode::OrderCapExceeded,
                what + " would have order " +
                    (order == std::numeric_limits<std::size_t>::max() ? std::string(">cap")
                                                                      : std::to_string(order)) +
                    ", above the order cap " + std::to_string(cap));
  }
}

namespace {
std::atomic<std::uint64_t> next_tag{1};
}

// ---------------------------------------------------------------------------
// Layout

Layout Layout::tuple(std::vector<FiniteRing> slots, std::vector<Index> coords) {
  Layout l;
  l.kind = LayoutKind::Tuple;
  l.slots = std::move(slots);
  l.coords = std::move(coords);
  return l;
}

Layout Layout::matrix(FiniteRing base, std::size_t rows, std::size_t cols, std::vector<Index> coords) {
  Layout l;
  l.kind = LayoutKind::Matrix;
  l.slots = {std::move(base)};
  l.rows = rows;
  l.cols = cols;
  l.coords = std::move(coords);
  return l;
}

Layout Layout::sub(FiniteRing parent, std::vector<Index> embed) {
  Layout l;
  l.kind = LayoutKind::Sub;
  l.parent = std::move(parent);
  l.embed = std::move(embed);
  return l;
}

Layout Layout::quotient(FiniteRing parent, std::vector<Index> representatives,
                        std::vector<Index> projection) {
  Layout l;
  l.kind = LayoutKind::Quotient;
  l.parent = std::move(parent);
  l.embed = std::move(representatives);
  l.projection = std::move(projection);
  return l;
}

// ---------------------------------------------------------------------------
// FiniteRing

FiniteRing FiniteRing::create(RingTables tables, Provenance provenance, Layout layout,
                              const BuildOptions& options) {
  require_order_within(tables.order, options.order_cap, provenance.expr.empty() ? "ring" : provenance.expr);
  auto report = detail::verify_ring_axioms(tables);
  const std::size_t w = layout.width();
  if (w != 0 && layout.coords.size() != tables.order * w)
    throw Error(ErrorCode::InternalInconsistency, "layout coordinate table has the wrong size");

  auto data = std::make_shared<detail::RingData>();
  data->tables = std::move(tables);
  data->neg = std::move(report.neg);
  data->generators = std::move(report.generators);
  data->tag = next_tag.fetch_add(1);
  data->provenance = std::move(provenance);
  data->layout = std::move(layout);

  FiniteRing r;
  r.add_ = data->tables.add.data();
  r.mul_ = data->tables.mul.data();
  r.neg_ = data->neg.data();
  r.n_ = data->tables.order;
  r.zero_ = data->tables.zero;
  r.one_ = data->tables.one;
  r.data_ = std::move(data);
  return r;
}

std::span<const Index> FiniteRing::add_table() const noexcept { return data_->tables.add; }
std::span<const Index> FiniteRing::mul_table() const noexcept { return data_->tables.mul; }
std::uint64_t FiniteRing::tag() const noexcept { return data_ ? data_->tag : 0; }
const Provenance& FiniteRing::provenance() const noexcept { return data_->provenance; }
const std::string& FiniteRing::name() const noexcept { return data_->provenance.expr; }
const Layout& FiniteRing::layout() const noexcept { return data_->layout; }
std::span<const Index> FiniteRing::additive_generators() const noexcept { return data_->generators; }

std::string FiniteRing::label(Index a) const {
  const Layout& l = data_->layout;
  switch (l.kind) {
    case LayoutKind::Scalar: return std::to_string(a);
    case LayoutKind::Tuple: {
      std::string s = "[";
      auto c = coords(a);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i != 0) s += ",";
        s += l.slots[i].label(c[i]);
      }
      return s + "]";
    }
    case LayoutKind::Matrix: {
      std::string s = "[";
      auto c = coords(a);
      for (std::size_t i = 0; i < l.rows; ++i) {
        if (i != 0) s += ",";
        s += "[";
        for (std::size_t j = 0; j < l.cols; ++j) {
          if (j != 0) s += ",";
          s += l.slots[0].label(c[i * l.cols + j]);
        }
        s += "]";
      }
      return s + "]";
    }
    case LayoutKind::Sub:
    case LayoutKind::Quotient: return l.parent->label(l.embed.at(a));
  }
  return std::to_string(a);
}

ElementId FiniteRing::element(Index a) const {
  if (a >= n_)
    throw Error(ErrorCode::InvalidParameter,
                "element index " + std::to_string(a) + " out of range for ring of order " +
                    std::to_string(n_));
  return ElementId{tag(), a};
}

Index FiniteRing::index_of(ElementId e) const {
  if (e.ring != tag())
    throw Error(ErrorCode::RingMismatch, "element belongs to a different ring than " + name());
  if (e.index >= n_) throw Error(ErrorCode::InvalidParameter, "element index out of range");
  return e.index;
}

ElementId FiniteRing::add(ElementId a, ElementId b) const {
  return ElementId{tag(), add(index_of(a), index_of(b))};
}
ElementId FiniteRing::mul(ElementId a, ElementId b) const {
  return ElementId{tag(), mul(index_of(a), index_of(b))};
}
ElementId FiniteRing::neg(ElementId a) const { return ElementId{tag(), neg(index_of(a))}; }

bool FiniteRing::is_commutative() const noexcept {
  for (Index a = 0; a < n_; ++a)
    for (Index b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteRing::is_central(Index a) const noexcept {
  for (Index b = 0; b < n_; ++b)
    if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::span<const Index> FiniteRing::coords(Index a) const {
  const Layout& l = data_->layout;
  const std::size_t w = l.width();
  if (w == 0) throw Error(ErrorCode::InvalidParameter, name() + " has no coordinate layout");
  return std::span<const Index>(l.coords).subspan(std::size_t{a} * w, w);
}

std::optional<Index> FiniteRing::find(std::span<const Index> c) const {
  const Layout& l = data_->layout;
  const std::size_t w = l.width();
  if (w == 0 || c.size() != w) return std::nullopt;
  std::call_once(data_->lookup_once, [&] {
    for (Index a = 0; a < n_; ++a) {
      auto s = std::span<const Index>(l.coords).subspan(std::size_t{a} * w, w);
      data_->lookup.emplace(std::vector<Index>(s.begin(), s.end()), a);
    }
  });
  auto it = data_->lookup.find(std::vector<Index>(c.begin(), c.end()));
  if (it == data_->lookup.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Tuple rings

namespace detail {

std::vector<Index> decode_all(std::span<const std::size_t> radices, std::size_t count) {
  const std::size_t w = radices.size();
  std::vector<Index> out(count * w);
  std::vector<Index> digit(w, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::copy(digit.begin(), digit.end(), out.begin() + static_cast<std::ptrdiff_t>(idx * w));
    for (std::size_t k = w; k-- > 0;) {
      if (++digit[k] < radices[k]) break;
      digit[k] = 0;
    }
  }
  return out;
}

FiniteRing build_tuple_ring(TupleRingSpec spec, const BuildOptions& options) {
  const std::size_t w = spec.slots.size();
  std::vector<std::size_t> radices(w);
  std::size_t order = 1;
  for (std::size_t k = 0; k < w; ++k) {
    radices[k] = spec.slots[k].order();
    if (radices[k] != 0 && order > options.order_cap / radices[k]) {
      order = options.order_cap + 1;
      break;
    }
    order *= radices[k];
  }
  require_order_within(order, options.order_cap, spec.provenance.expr);

  std::vector<std::size_t> stride(w, 1);
  for (std::size_t k = w; k-- > 1;) stride[k - 1] = stride[k] * radices[k];
  auto encode = [&](std::span<const Index> c) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < w; ++k) idx += c[k] * stride[k];
    return static_cast<Index>(idx);
  };

  std::vector<Index> coords = decode_all(radices, order);
  RingTables t;
  t.order = order;
  t.add.resize(order * order);
  t.mul.resize(order * order);
  std::vector<Index> tmp(w);
  for (std::size_t a = 0; a < order; ++a) {
    std::span<const Index> ca(coords.data() + a * w, w);
    for (std::size_t b = 0; b < order; ++b) {
      std::span<const Index> cb(coords.data() + b * w, w);
      for (std::size_t k = 0; k < w; ++k) tmp[k] = spec.slots[k].add(ca[k], cb[k]);
      t.add[a * order + b] = encode(tmp);
      spec.product(ca, cb, tmp);
      t.mul[a * order + b] = encode(tmp);
    }
  }
  std::vector<Index> zero(w);
  for (std::size_t k = 0; k < w; ++k) zero[k] = spec.slots[k].zero();
  t.zero = encode(zero);
  t.one = encode(spec.one);

  Layout layout = spec.matrix_rows != 0
                      ? Layout::matrix(spec.slots.at(0), spec.matrix_rows, spec.matrix_cols, std::move(coords))
                      : Layout::tuple(spec.slots, std::move(coords));
  return FiniteRing::create(std::move(t), std::move(spec.provenance), std::move(layout), options);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Foundational constructions

FiniteRing zn(std::size_t n, const BuildOptions& options) {
  if (n == 0) throw Error(ErrorCode::InvalidParameter, "Z n requires n >= 1");
  require_order_within(n, options.order_cap, "Z " + std::to_string(n));
  RingTables t;
  t.order = n;
  t.add.resize(n * n);
  t.mul.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      t.add[a * n + b] = static_cast<Index>((a + b) % n);
      t.mul[a * n + b] = static_cast<Index>((a * b) % n);
    }
  t.zero = 0;
  t.one = static_cast<Index>(1 % n);
  Provenance p{"Z " + std::to_string(n), "Z", {}, {static_cast<long>(n)}, {}};
  return FiniteRing::create(std::move(t), std::move(p), Layout::scalar(), options);
}

FiniteRing table_ring(const std::vector<std::vector<Index>>& add_table,
                      const std::vector<std::vector<Index>>& mul_table, Index zero, Index one,
                      const BuildOptions& options) {
  const std::size_t n = add_table.size();
  if (n == 0 || mul_table.size() != n)
    throw Error(ErrorCode::MalformedTable, "addition and multiplication tables must be non-empty and equally sized");
  RingTables t;
  t.order = n;
  t.zero = zero;
  t.one = one;
  t.add.reserve(n * n);
  t.mul.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (add_table[i].size() != n || mul_table[i].size() != n)
      throw Error(ErrorCode::MalformedTable, "table row " + std::to_string(i) + " is ragged");
    t.add.insert(t.add.end(), add_table[i].begin(), add_table[i].end());
    t.mul.insert(t.mul.end(), mul_table[i].begin(), mul_table[i].end());
  }
  Provenance p{"Table(" + std::to_string(n) + ")", "table", {}, {static_cast<long>(n)}, {}};
  return FiniteRing::create(std::move(t), std::move(p), Layout::scalar(), options);
}

FiniteRing direct_product(std::span<const FiniteRing> factors, const BuildOptions& options) {
  if (factors.empty()) throw Error(ErrorCode::InvalidParameter, "direct product needs at least one factor");
  detail::TupleRingSpec spec;
  spec.slots.assign(factors.begin(), factors.end());
  std::string expr;
  for (const auto& f : factors) {
    if (!expr.empty()) expr += " * ";
    const bool wrap = f.provenance().kind == "product";
    expr += wrap ? "(" + f.name() + ")" : f.name();
    spec.one.push_back(f.one());
  }
  spec.product = [slots = spec.slots](std::span<const Index> a, std::span<const Index> b, std::span<Index> out) {
    for (std::size_t k = 0; k < slots.size(); ++k) out[k] = slots[k].mul(a[k], b[k]);
  };
  spec.provenance = Provenance{expr, "product", spec.slots, {}, {}};
  return detail::build_tuple_ring(std::move(spec), options);
}

FiniteRing poly_quotient(const FiniteRing& base, std::span<const Index> modulus, const BuildOptions& options) {
  if (modulus.size() < 2) throw Error(ErrorCode::InvalidParameter, "modulus must have degree at least 1");
  for (Index c : modulus)
    if (c >= base.order()) throw Error(ErrorCode::InvalidParameter, "modulus coefficient out of range");
  if (modulus.back() != base.one())
    throw Error(ErrorCode::NonMonicModulus, "modulus must be monic (leading coefficient = one)");
  if (!base.is_commutative())
    throw Error(ErrorCode::NonCommutativeBase, "polynomial quotients need a commutative base ring");

  const std::size_t d = modulus.size() - 1;
  std::vector<Index> f(modulus.begin(), modulus.end());
  detail::TupleRingSpec spec;
  spec.slots.assign(d, base);
  spec.one.assign(d, base.zero());
  spec.one[0] = base.one();
  spec.product = [base, f, d](std::span<const Index> a, std::span<const Index> b, std::span<Index> out) {
    std::vector<Index> prod(2 * d - 1, base.zero());
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == base.zero()) continue;
      for (std::size_t j = 0; j < d; ++j) prod[i + j] = base.add(prod[i + j], base.mul(a[i], b[j]));
    }
    // x^d = -(f_0 + ... + f_{d-1} x^{d-1})
    for (std::size_t k = prod.size(); k-- > d;) {
      const Index c = prod[k];
      if (c == base.zero()) continue;
      for (std::size_t i = 0; i < d; ++i) prod[k - d + i] = base.sub(prod[k - d + i], base.mul(c, f[i]));
      prod[k] = base.zero();
    }
    std::copy_n(prod.begin(), d, out.begin());
  };
  std::string coeffs;
  for (std::size_t i = 0; i < modulus.size(); ++i) {
    if (i != 0) coeffs += ",";
    coeffs += base.label(modulus[i]);
  }
  spec.provenance = Provenance{"PolyQuot(" + base.name() + ", [" + coeffs + "])", "poly_quotient", {base},
                               {static_cast<long>(d)}, std::vector<Index>(modulus.begin(), modulus.end())};
  return detail::build_tuple_ring(std::move(spec), options);
}

std::optional<std::pair<Index, Index>> find_homomorphism_violation(const FiniteRing& source,
                                                                   const FiniteRing& target,
                                                                   std::span<const Index> image) {
  const auto n = static_cast<Index>(source.order());
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      if (image[source.add(a, b)] != target.add(image[a], image[b])) return std::pair{a, b};
      if (image[source.mul(a, b)] != target.mul(image[a], image[b])) return std::pair{a, b};
    }
  return std::nullopt;
}

RingMap endomorphism_of(const FiniteRing& ring, std::vector<Index> image) {
  if (image.size() != ring.order())
    throw Error(ErrorCode::InvalidParameter, "endomorphism image must list one target per element");
  for (Index x : image)
    if (x >= ring.order()) throw Error(ErrorCode::InvalidParameter, "endomorphism image out of range");
  if (image[ring.one()] != ring.one()) throw Error(ErrorCode::NotUnital, "map does not send one to one");
  if (auto bad = find_homomorphism_violation(ring, ring, image)) {
    throw Error(ErrorCode::NotAHomomorphism,
                "map is not a ring homomorphism at (" + std::to_string(bad->first) + ", " +
                    std::to_string(bad->second) + ")",
                {bad->first, bad->second});
  }
  return RingMap{ring, ring, std::move(image), MapKind::Endomorphism};
}

bool check_isomorphism(const RingMap& map) {
  const FiniteRing& s = map.source;
  const FiniteRing& t = map.target;
  if (!s.valid() || !t.valid() || s.order() != t.order() || map.image.size() != s.order()) return false;
  std::vector<char> hit(t.order(), 0);
  for (Index x : map.image) {
    if (x >= t.order() || hit[x]) return false;
    hit[x] = 1;
  }
  if (map.image[s.one()] != t.one() || map.image[s.zero()] != t.zero()) return false;
  return !find_homomorphism_violation(s, t, map.image).has_value();
}

// ---------------------------------------------------------------------------
// Subset

Subset::Subset(std::uint64_t ring_tag, std::size_t universe)
    : tag_(ring_tag), size_(universe), words_((universe + 63) / 64, 0) {}

Subset Subset::full_of(const FiniteRing& ring) {
  Subset s = empty_of(ring);
  for (Index a = 0; a < ring.order(); ++a) s.insert(a);
  return s;
}

Subset Subset::from_indices(const FiniteRing& ring, const std::vector<Index>& indices) {
  Subset s = empty_of(ring);
  for (Index a : indices) {
    if (a >= ring.order()) throw Error(ErrorCode::InvalidParameter, "subset index out of range");
    s.insert(a);
  }
  return s;
}

std::size_t Subset::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Subset::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<Index> Subset::indices() const {
  std::vector<Index> out;
  out.reserve(count());
  for_each([&](Index a) { out.push_back(a); });
  return out;
}

void Subset::require_same(const Subset& other) const {
  if (tag_ != other.tag_ || size_ != other.size_)
    throw Error(ErrorCode::RingMismatch, "subset operation across different rings");
}

Subset& Subset::operator|=(const Subset& other) {
  require_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}
Subset& Subset::operator&=(const Subset& other) {
  require_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}
Subset& Subset::operator-=(const Subset& other) {
  require_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

bool Subset::is_subset_of(const Subset& other) const {
  require_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

std::optional<Index> Subset::first_not_in(const Subset& other) const {
  require_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t d = words_[i] & ~other.words_[i];
    if (d != 0) return static_cast<Index>(i * 64 + static_cast<std::size_t>(std::countr_zero(d)));
  }
  return std::nullopt;
}

bool operator==(const Subset& a, const Subset& b) {
  a.require_same(b);
  return a.words_ == b.words_;
}

Subset translate(const FiniteRing& ring, const Subset& s, Index shift) {
  Subset out = Subset::empty_of(ring);
  if (s.ring_tag() != ring.tag()) throw Error(ErrorCode::RingMismatch, "translate: subset of another ring");
  s.for_each([&](Index x) { out.insert(ring.add(x, shift)); });
  return out;
}

}  // namespace cdelta
