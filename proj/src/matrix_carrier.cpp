#include "matrix_carrier.hpp"

#include <algorithm>
#include <cstring>

namespace cdelta::detail {
namespace {

// Parameter tuples are enumerated before deduplication, so the parameter
// space may be larger than the carrier itself (e.g. L_(0,0)).
constexpr std::size_t kMaxParamSpace = std::size_t{1} << 24;

std::uint64_t hash_entries(const Index* e, std::size_t w) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < w; ++i) {
    h ^= e[i];
    h *= 1099511628211ull;
  }
  return h ^ (h >> 29);
}

// Open-addressing set of matrices stored in a shared coordinate buffer.
class MatrixIndex {
 public:
  MatrixIndex(const std::vector<Index>& coords, std::size_t width) : coords_(coords), w_(width) {}

  void reserve(std::size_t n) {
    std::size_t cap = 16;
    while (cap < 2 * n) cap <<= 1;
    slots_.assign(cap, kEmpty);
  }

  std::optional<Index> find(const Index* m) const {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t p = hash_entries(m, w_) & mask;; p = (p + 1) & mask) {
      const Index s = slots_[p];
      if (s == kEmpty) return std::nullopt;
      if (std::equal(m, m + w_, coords_.data() + std::size_t{s} * w_)) return s;
    }
  }

  // `id`'s coordinates must already be in the buffer.
  void insert(Index id) {
    if (2 * (count_ + 1) > slots_.size()) grow();
    place(id);
    ++count_;
  }

 private:
  static constexpr Index kEmpty = ~Index{0};

  void place(Index id) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t p = hash_entries(coords_.data() + std::size_t{id} * w_, w_) & mask;
    while (slots_[p] != kEmpty) p = (p + 1) & mask;
    slots_[p] = id;
  }

  void grow() {
    std::vector<Index> old = std::move(slots_);
    slots_.assign(std::max<std::size_t>(16, old.size() * 2), kEmpty);
    for (Index s : old)
      if (s != kEmpty) place(s);
  }

  const std::vector<Index>& coords_;
  std::size_t w_;
  std::vector<Index> slots_;
  std::size_t count_ = 0;
};

}  // namespace

CarrierSpec carrier(const FiniteRing& base, std::size_t size) {
  CarrierSpec s;
  s.base = base;
  s.size = size;
  s.entries.assign(size * size, {});
  return s;
}

void matrix_product(const FiniteRing& r, std::size_t n, const Index* a, const Index* b, Index* out) {
  const Index zero = r.zero();
  std::fill(out, out + n * n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Index x = a[i * n + k];
      if (x == zero) continue;
      const Index* brow = b + k * n;
      Index* orow = out + i * n;
      for (std::size_t j = 0; j < n; ++j)
        if (brow[j] != zero) orow[j] = r.add(orow[j], r.mul(x, brow[j]));
    }
}

FiniteRing build_matrix_carrier(CarrierSpec spec, const BuildOptions& options) {
  const FiniteRing& R = spec.base;
  const std::size_t q = R.order();
  const std::size_t n = spec.size;
  const std::size_t w = n * n;
  const std::size_t p = spec.params;
  const std::string& what = spec.provenance.expr;

  const std::size_t space = checked_power(q, p, kMaxParamSpace);
  if (space > kMaxParamSpace)
    throw Error(ErrorCode::OrderCapExceeded, what + " has too many parameter combinations to enumerate");

  std::vector<Index> coords;
  MatrixIndex index(coords, w);
  index.reserve(std::min(space, options.order_cap + 1));

  std::vector<Index> param(p, R.zero());
  std::vector<Index> m(w);
  std::size_t count = 0;
  for (std::size_t t = 0; t < space; ++t) {
    for (std::size_t e = 0; e < w; ++e) {
      Index v = R.zero();
      for (const Term& term : spec.entries[e]) {
        const Index x = term.multiplier == R.one() ? param[term.param] : R.mul(term.multiplier, param[term.param]);
        v = R.add(v, x);
      }
      m[e] = v;
    }
    if (!index.find(m.data())) {
      if (count + 1 > options.order_cap) require_order_within(count + 1, options.order_cap, what);
      coords.insert(coords.end(), m.begin(), m.end());
      index.insert(static_cast<Index>(count));
      ++count;
    }
    for (std::size_t k = p; k-- > 0;) {
      if (++param[k] < q) break;
      param[k] = 0;
    }
  }

  // Fast path: every parameter sits alone in some entry and the carrier is
  // in bijection with the parameter space, so an element's index can be read
  // off those entries directly (and is then confirmed against its coordinates).
  std::vector<std::size_t> plain(p, w);
  for (std::size_t e = 0; e < w; ++e)
    if (spec.entries[e].size() == 1 && spec.entries[e][0].multiplier == R.one() && plain[spec.entries[e][0].param] == w)
      plain[spec.entries[e][0].param] = e;
  const bool direct = count == space && std::none_of(plain.begin(), plain.end(), [&](std::size_t e) { return e == w; });

  auto locate = [&](const Index* mat) -> std::optional<Index> {
    if (direct) {
      std::size_t id = 0;
      for (std::size_t k = 0; k < p; ++k) id = id * q + mat[plain[k]];
      if (std::equal(mat, mat + w, coords.data() + id * w)) return static_cast<Index>(id);
      return std::nullopt;
    }
    return index.find(mat);
  };

  RingTables t;
  t.order = count;
  t.add.resize(count * count);
  t.mul.resize(count * count);
  if (direct) {
    // Entries are linear in the parameters, so sums are computed digitwise.
    // Products use distributivity: b = b' + s where s keeps only the lowest
    // nonzero digit of b, so a*b = a*b' + a*s and only the products with
    // single-digit elements go through matrices (and the closure check).
    std::vector<std::size_t> weight(p, 1);
    for (std::size_t k = p; k-- > 1;) weight[k - 1] = weight[k] * q;
    std::vector<Index> digits(count * p);
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t k = 0, rest = a; k < p; ++k) {
        digits[a * p + k] = static_cast<Index>(rest / weight[k]);
        rest %= weight[k];
      }
    std::vector<std::size_t> low(count, 0);
    for (std::size_t b = 1; b < count; ++b) {
      std::size_t k = p - 1;
      while (digits[b * p + k] == 0) --k;
      low[b] = digits[b * p + k] * weight[k];
    }
    for (std::size_t a = 0; a < count; ++a) {
      const Index* da = digits.data() + a * p;
      Index* row = t.add.data() + a * count;
      for (std::size_t b = 0; b < count; ++b) {
        const Index* db = digits.data() + b * p;
        std::size_t id = 0;
        for (std::size_t k = 0; k < p; ++k) id += R.add(da[k], db[k]) * weight[k];
        row[b] = static_cast<Index>(id);
      }
    }
    for (std::size_t a = 0; a < count; ++a) {
      const Index* ma = coords.data() + a * w;
      Index* row = t.mul.data() + a * count;
      for (std::size_t b = 0; b < count; ++b) {
        if (b != 0 && low[b] != b) {
          row[b] = t.add[std::size_t{row[b - low[b]]} * count + row[low[b]]];
          continue;
        }
        matrix_product(R, n, ma, coords.data() + b * w, m.data());
        auto pr = locate(m.data());
        if (!pr)
          throw Error(ErrorCode::NotASubring, what + " is not closed under multiplication",
                      {static_cast<Index>(a), static_cast<Index>(b)});
        row[b] = *pr;
      }
    }
  }
  for (std::size_t a = 0; a < (direct ? 0 : count); ++a) {
    const Index* ma = coords.data() + a * w;
    for (std::size_t b = 0; b < count; ++b) {
      const Index* mb = coords.data() + b * w;
      for (std::size_t e = 0; e < w; ++e) m[e] = R.add(ma[e], mb[e]);
      auto s = locate(m.data());
      if (!s)
        throw Error(ErrorCode::NotASubring, what + " is not closed under addition",
                    {static_cast<Index>(a), static_cast<Index>(b)});
      t.add[a * count + b] = *s;
      matrix_product(R, n, ma, mb, m.data());
      auto pr = locate(m.data());
      if (!pr)
        throw Error(ErrorCode::NotASubring, what + " is not closed under multiplication",
                    {static_cast<Index>(a), static_cast<Index>(b)});
      t.mul[a * count + b] = *pr;
    }
  }

  std::fill(m.begin(), m.end(), R.zero());
  t.zero = *locate(m.data());
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = R.one();
  auto one = locate(m.data());
  if (!one) throw Error(ErrorCode::NotASubring, what + " does not contain the identity matrix");
  t.one = *one;

  Layout layout = Layout::matrix(R, n, n, std::move(coords));
  return FiniteRing::create(std::move(t), std::move(spec.provenance), std::move(layout), options);
}

}  // namespace cdelta::detail
