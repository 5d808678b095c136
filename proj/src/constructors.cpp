#include "cdelta/constructors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "matrix_carrier.hpp"
#include "ring_data.hpp"

namespace cdelta {
namespace {

std::string nstr(std::size_t n) { return std::to_string(n); }

Provenance provenance(std::string expr, std::string kind, std::vector<FiniteRing> operands,
                      std::vector<long> params = {}, std::vector<Index> elements = {}) {
  return Provenance{std::move(expr), std::move(kind), std::move(operands), std::move(params), std::move(elements)};
}

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw Error(ErrorCode::InvalidParameter, std::string(what) + " must be at least 1");
}

void require_element(const FiniteRing& r, Index a, const char* what) {
  if (a >= r.order())
    throw Error(ErrorCode::InvalidParameter, std::string(what) + " is not an element of " + r.name());
}

void require_central(const FiniteRing& r, Index a, const char* what) {
  require_element(r, a, what);
  if (!r.is_central(a))
    throw Error(ErrorCode::NonCentralParameter, std::string(what) + " = " + r.label(a) + " is not central in " + r.name(),
                {a});
}

std::string set_literal(const FiniteRing& r, const Subset& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](Index a) {
    if (!first) out += ", ";
    first = false;
    out += r.label(a);
  });
  return out + "}";
}

// Builds a ring on a subset of `parent` closed under the operations; the
// elements are listed in ascending parent index and `one` is the identity.
FiniteRing induced_ring(const FiniteRing& parent, const std::vector<Index>& elems, Index one, Provenance prov,
                        Layout layout, const BuildOptions& options) {
  const std::size_t k = elems.size();
  require_order_within(k, options.order_cap, prov.expr);
  std::vector<Index> pos(parent.order(), ~Index{0});
  for (std::size_t i = 0; i < k; ++i) pos[elems[i]] = static_cast<Index>(i);
  RingTables t;
  t.order = k;
  t.add.resize(k * k);
  t.mul.resize(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const Index s = pos[parent.add(elems[i], elems[j])];
      const Index p = pos[parent.mul(elems[i], elems[j])];
      if (s == ~Index{0} || p == ~Index{0})
        throw Error(ErrorCode::NotASubring, prov.expr + " is not closed", {elems[i], elems[j]});
      t.add[i * k + j] = s;
      t.mul[i * k + j] = p;
    }
  t.zero = pos[parent.zero()];
  t.one = pos[one];
  return FiniteRing::create(std::move(t), std::move(prov), std::move(layout), options);
}

// Closure of `seed` under addition: BFS over x -> x + g for the seed elements.
void additive_closure(const FiniteRing& r, Subset& set, std::vector<Index>& members, std::vector<Index>& gens) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Index x = members[i];
    for (Index g : gens) {
      const Index y = r.add(x, g);
      if (!set.contains(y)) {
        set.insert(y);
        members.push_back(y);
      }
    }
  }
}

}  // namespace

std::string_view to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::Dn: return "Dn";
    case FamilyKind::Vn: return "Vn";
    case FamilyKind::VnK: return "VnK";
    case FamilyKind::DnK: return "DnK";
    case FamilyKind::Sn: return "Sn";
    case FamilyKind::Snm: return "Snm";
    case FamilyKind::Tnm: return "Tnm";
    case FamilyKind::Un: return "Un";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Matrix rings and their subrings

FiniteRing matrix_ring(std::size_t n, const FiniteRing& base, const BuildOptions& options) {
  require_positive(n, "matrix size");
  const std::string expr = "M(" + nstr(n) + ", " + base.name() + ")";
  require_order_within(checked_power(base.order(), n * n, options.order_cap), options.order_cap, expr);
  auto c = detail::carrier(base, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c.set(i, j, c.params++);
  c.provenance = provenance(expr, "M", {base}, {static_cast<long>(n)});
  return detail::build_matrix_carrier(std::move(c), options);
}

FiniteRing triangular_ring(std::size_t n, const FiniteRing& base, const BuildOptions& options) {
  require_positive(n, "matrix size");
  const std::string expr = "T(" + nstr(n) + ", " + base.name() + ")";
  require_order_within(checked_power(base.order(), n * (n + 1) / 2, options.order_cap), options.order_cap, expr);
  auto c = detail::carrier(base, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) c.set(i, j, c.params++);
  c.provenance = provenance(expr, "T", {base}, {static_cast<long>(n)});
  return detail::build_matrix_carrier(std::move(c), options);
}

FiniteRing special_matrix_family(const FamilySpec& spec, const FiniteRing& base, const BuildOptions& options) {
  const std::size_t n = spec.n, m = spec.m;
  std::size_t k = spec.k;
  require_positive(n, "n");
  std::string expr;
  std::vector<long> params{static_cast<long>(n)};
  detail::CarrierSpec c;

  switch (spec.kind) {
    case FamilyKind::Dn:
    case FamilyKind::Sn: {
      expr = std::string(to_string(spec.kind)) + "(" + nstr(n) + ", " + base.name() + ")";
      c = detail::carrier(base, n);
      const std::size_t a = c.params++;
      for (std::size_t i = 0; i < n; ++i) c.set(i, i, a);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) c.set(i, j, c.params++);
      break;
    }
    case FamilyKind::Vn: {
      expr = "Vn(" + nstr(n) + ", " + base.name() + ")";
      c = detail::carrier(base, n);
      c.params = n;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) c.set(i, j, j - i);
      break;
    }
    case FamilyKind::VnK: {
      if (k == 0 || k > n) throw Error(ErrorCode::InvalidParameter, "VnK needs 1 <= k <= n");
      expr = "VnK(" + nstr(n) + ", " + nstr(k) + ", " + base.name() + ")";
      params.push_back(static_cast<long>(k));
      c = detail::carrier(base, n);
      c.params = k;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n && j - i < k; ++j) c.set(i, j, j - i);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + k; j < n; ++j) c.set(i, j, c.params++);
      break;
    }
    case FamilyKind::DnK: {
      k = n / 2;
      expr = "DnK(" + nstr(n) + ", " + base.name() + ")";
      c = detail::carrier(base, n);
      const std::size_t scalar = c.params++;
      for (std::size_t i = 0; i < n; ++i) c.set(i, i, scalar);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = k; j < n; ++j) c.set(i, j, c.params++);
      for (std::size_t j = k + 1; j < n; ++j) c.set(k, j, c.params++);
      break;
    }
    case FamilyKind::Snm: {
      require_positive(m, "m");
      expr = "Snm(" + nstr(n) + ", " + nstr(m) + ", " + base.name() + ")";
      params.push_back(static_cast<long>(m));
      const std::size_t size = n + m - 1;
      c = detail::carrier(base, size);
      const std::size_t a = c.params++;
      for (std::size_t i = 0; i < size; ++i) c.set(i, i, a);
      for (std::size_t d = 1; d < n; ++d) {
        const std::size_t b = c.params++;
        for (std::size_t i = 0; i + d < n; ++i) c.set(i, i + d, b);
      }
      for (std::size_t d = 1; d < m; ++d) {
        const std::size_t dd = c.params++;
        for (std::size_t i = n - 1; i + d < size; ++i) c.set(i, i + d, dd);
      }
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n; j < size; ++j) c.set(i, j, c.params++);
      break;
    }
    case FamilyKind::Tnm: {
      require_positive(m, "m");
      expr = "Tnm(" + nstr(n) + ", " + nstr(m) + ", " + base.name() + ")";
      params.push_back(static_cast<long>(m));
      const std::size_t size = n + m;
      c = detail::carrier(base, size);
      const std::size_t a = c.params++;
      for (std::size_t i = 0; i < size; ++i) c.set(i, i, a);
      for (std::size_t d = 1; d < n; ++d) {
        const std::size_t b = c.params++;
        for (std::size_t i = 0; i + d < n; ++i) c.set(i, i + d, b);
      }
      for (std::size_t d = 1; d < m; ++d) {
        const std::size_t cc = c.params++;
        for (std::size_t i = n; i + d < size; ++i) c.set(i, i + d, cc);
      }
      break;
    }
    case FamilyKind::Un: {
      expr = "Un(" + nstr(n) + ", " + base.name() + ")";
      c = detail::carrier(base, n);
      const std::size_t a = c.params++;
      for (std::size_t i = 0; i < n; ++i) c.set(i, i, a);
      std::vector<std::size_t> b(n), cc(n);
      for (std::size_t d = 1; d < n; ++d) b[d] = c.params++;
      for (std::size_t d = 1; d + 1 < n; ++d) cc[d] = c.params++;
      // Rows 0, 2, 4, ... carry the b's; rows 1, 3, ... the c's.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) c.set(i, j, i % 2 == 0 ? b[j - i] : cc[j - i]);
      break;
    }
  }
  const std::size_t est = checked_power(base.order(), c.params, options.order_cap);
  require_order_within(est, options.order_cap, expr);
  c.provenance = provenance(expr, std::string(to_string(spec.kind)), {base}, params);
  return detail::build_matrix_carrier(std::move(c), options);
}

FiniteRing lst_ring(const CentralParams& st, const FiniteRing& base, const BuildOptions& options) {
  require_central(base, st.s, "s");
  require_central(base, st.t, "t");
  const std::string expr = "L(" + base.label(st.s) + ", " + base.label(st.t) + ", " + base.name() + ")";
  auto c = detail::carrier(base, 3);
  c.params = 5;  // a, c, d, e, f
  c.set(0, 0, 0);
  c.set(1, 0, 1, st.s);
  c.set(1, 1, 2);
  c.set(1, 2, 3, st.t);
  c.set(2, 2, 4);
  c.provenance = provenance(expr, "L", {base}, {}, {st.s, st.t});
  return detail::build_matrix_carrier(std::move(c), options);
}

FiniteRing hst_ring(const CentralParams& st, const FiniteRing& base, const BuildOptions& options) {
  require_central(base, st.s, "s");
  require_central(base, st.t, "t");
  const std::string expr = "H(" + base.label(st.s) + ", " + base.label(st.t) + ", " + base.name() + ")";
  auto c = detail::carrier(base, 3);
  c.params = 3;  // c, e, f
  c.set(0, 0, 0, st.s);
  c.set(0, 0, 1, st.t);
  c.set(0, 0, 2);
  c.set(1, 0, 0);
  c.set(1, 1, 1, st.t);
  c.set(1, 1, 2);
  c.set(1, 2, 1);
  c.set(2, 2, 2);
  c.provenance = provenance(expr, "H", {base}, {}, {st.s, st.t});
  return detail::build_matrix_carrier(std::move(c), options);
}

FiniteRing lst_v2_ring(const CentralParams& st, const FiniteRing& base, const BuildOptions& options) {
  require_central(base, st.s, "s");
  require_central(base, st.t, "t");
  const std::string expr = "V2L(" + base.label(st.s) + ", " + base.label(st.t) + ", " + base.name() + ")";
  auto c = detail::carrier(base, 3);
  c.params = 2;  // a, e
  for (std::size_t i = 0; i < 3; ++i) c.set(i, i, 0);
  c.set(1, 2, 1, st.t);
  c.provenance = provenance(expr, "V2L", {base}, {}, {st.s, st.t});
  return detail::build_matrix_carrier(std::move(c), options);
}

// ---------------------------------------------------------------------------
// Tuple-shaped extensions

namespace {

std::vector<Index> power_table(const RingMap& alpha, std::size_t max_power) {
  const std::size_t q = alpha.source.order();
  // row j = alpha^j
  std::vector<Index> tab((max_power + 1) * q);
  for (Index x = 0; x < q; ++x) tab[x] = x;
  for (std::size_t j = 1; j <= max_power; ++j)
    for (Index x = 0; x < q; ++x) tab[j * q + x] = alpha.image[tab[(j - 1) * q + x]];
  return tab;
}

void require_endomorphism(const FiniteRing& base, const RingMap& alpha) {
  if (!(alpha.source == base) || !(alpha.target == base))
    throw Error(ErrorCode::RingMismatch, "endomorphism belongs to a different ring");
  // Re-verify; a RingMap may have been assembled by hand.
  (void)endomorphism_of(base, alpha.image);
}

}  // namespace

FiniteRing skew_triangular(std::size_t n, const FiniteRing& base, const RingMap& alpha,
                           const std::string& endo_label, const BuildOptions& options) {
  require_positive(n, "n");
  require_endomorphism(base, alpha);
  detail::TupleRingSpec spec;
  spec.slots.assign(n, base);
  spec.one.assign(n, base.zero());
  spec.one[0] = base.one();
  const std::size_t q = base.order();
  spec.product = [base, n, q, pw = power_table(alpha, n)](std::span<const Index> a, std::span<const Index> b,
                                                         std::span<Index> out) {
    for (std::size_t i = 0; i < n; ++i) {
      Index c = base.zero();
      for (std::size_t j = 0; j <= i; ++j) c = base.add(c, base.mul(a[j], pw[j * q + b[i - j]]));
      out[i] = c;
    }
  };
  spec.provenance = provenance("TSkew(" + nstr(n) + ", " + base.name() + ", " + endo_label + ")", "TSkew", {base},
                               {static_cast<long>(n)}, alpha.image);
  return detail::build_tuple_ring(std::move(spec), options);
}

FiniteRing skew_poly_quotient(std::size_t n, const FiniteRing& base, const RingMap& alpha,
                              const std::string& endo_label, const BuildOptions& options) {
  require_positive(n, "n");
  require_endomorphism(base, alpha);
  detail::TupleRingSpec spec;
  spec.slots.assign(n, base);
  spec.one.assign(n, base.zero());
  spec.one[0] = base.one();
  spec.product = [base, n, img = alpha.image](std::span<const Index> a, std::span<const Index> b,
                                             std::span<Index> out) {
    std::fill(out.begin(), out.end(), base.zero());
    // (a_i x^i)(b_j x^j): move x^i past b_j one factor of x at a time.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; i + j < n; ++j) {
        Index coeff = b[j];
        for (std::size_t step = 0; step < i; ++step) coeff = img[coeff];  // x c = alpha(c) x
        out[i + j] = base.add(out[i + j], base.mul(a[i], coeff));
      }
  };
  spec.provenance = provenance("SkewPolyQuot(" + nstr(n) + ", " + base.name() + ", " + endo_label + ")",
                               "SkewPolyQuot", {base}, {static_cast<long>(n)}, alpha.image);
  return detail::build_tuple_ring(std::move(spec), options);
}

FiniteRing generalized_matrix(Index s, const FiniteRing& base, const BuildOptions& options) {
  require_central(base, s, "s");
  detail::TupleRingSpec spec;
  spec.slots.assign(4, base);
  spec.one = {base.one(), base.zero(), base.zero(), base.one()};
  spec.matrix_rows = spec.matrix_cols = 2;
  spec.product = [base, s](std::span<const Index> p, std::span<const Index> q, std::span<Index> out) {
    const Index a1 = p[0], x1 = p[1], y1 = p[2], b1 = p[3];
    const Index a2 = q[0], x2 = q[1], y2 = q[2], b2 = q[3];
    auto M = [&](Index u, Index v) { return base.mul(u, v); };
    auto A = [&](Index u, Index v) { return base.add(u, v); };
    out[0] = A(M(a1, a2), M(s, M(x1, y2)));
    out[1] = A(M(a1, x2), M(x1, b2));
    out[2] = A(M(y1, a2), M(b1, y2));
    out[3] = A(M(s, M(y1, x2)), M(b1, b2));
  };
  spec.provenance = provenance("K(" + base.label(s) + ", " + base.name() + ")", "K", {base}, {}, {s});
  return detail::build_tuple_ring(std::move(spec), options);
}

FiniteRing trivial_extension(const FiniteRing& base, const BuildOptions& options) {
  detail::TupleRingSpec spec;
  spec.slots.assign(2, base);
  spec.one = {base.one(), base.zero()};
  spec.product = [base](std::span<const Index> a, std::span<const Index> b, std::span<Index> out) {
    out[0] = base.mul(a[0], b[0]);
    out[1] = base.add(base.mul(a[0], b[1]), base.mul(a[1], b[0]));
  };
  spec.provenance = provenance("Triv(" + base.name() + ")", "Triv", {base});
  return detail::build_tuple_ring(std::move(spec), options);
}

FiniteRing dt_ring(const FiniteRing& base, const BuildOptions& options) {
  detail::TupleRingSpec spec;
  spec.slots.assign(4, base);
  spec.one = {base.one(), base.zero(), base.zero(), base.zero()};
  spec.product = [base](std::span<const Index> p, std::span<const Index> q, std::span<Index> out) {
    auto M = [&](Index u, Index v) { return base.mul(u, v); };
    auto A = [&](Index u, Index v) { return base.add(u, v); };
    const Index a1 = p[0], m1 = p[1], b1 = p[2], n1 = p[3];
    const Index a2 = q[0], m2 = q[1], b2 = q[2], n2 = q[3];
    out[0] = M(a1, a2);
    out[1] = A(M(a1, m2), M(m1, a2));
    out[2] = A(M(a1, b2), M(b1, a2));
    out[3] = A(A(M(a1, n2), M(m1, b2)), A(M(b1, m2), M(n1, a2)));
  };
  spec.provenance = provenance("DT(" + base.name() + ")", "DT", {base});
  return detail::build_tuple_ring(std::move(spec), options);
}

FiniteRing group_ring(const FiniteRing& base, const FiniteGroup& group, const BuildOptions& options) {
  const std::size_t g = group.order;
  const std::string expr = "GroupRing(" + base.name() + ", " + group.name + ")";
  require_order_within(checked_power(base.order(), g, options.order_cap), options.order_cap, expr);
  detail::TupleRingSpec spec;
  spec.slots.assign(g, base);
  spec.one.assign(g, base.zero());
  spec.one[group.identity] = base.one();
  spec.product = [base, group](std::span<const Index> a, std::span<const Index> b, std::span<Index> out) {
    std::fill(out.begin(), out.end(), base.zero());
    for (Index x = 0; x < group.order; ++x) {
      if (a[x] == base.zero()) continue;
      for (Index y = 0; y < group.order; ++y) {
        const Index xy = group.op(x, y);
        out[xy] = base.add(out[xy], base.mul(a[x], b[y]));
      }
    }
  };
  spec.provenance = provenance(expr, "GroupRing", {base}, {static_cast<long>(g)});
  return detail::build_tuple_ring(std::move(spec), options);
}

// ---------------------------------------------------------------------------
// Subrings, ideals, quotients

FiniteRing corner_ring(const FiniteRing& ring, Index e, const BuildOptions& options) {
  require_element(ring, e, "e");
  if (ring.mul(e, e) != e)
    throw Error(ErrorCode::NotIdempotent, ring.label(e) + " is not idempotent in " + ring.name(), {e});
  Subset seen = Subset::empty_of(ring);
  for (Index r = 0; r < ring.order(); ++r) seen.insert(ring.mul(ring.mul(e, r), e));
  auto elems = seen.indices();
  Provenance p = provenance("Corner(" + ring.name() + ", " + ring.label(e) + ")", "Corner", {ring}, {}, {e});
  return induced_ring(ring, elems, e, std::move(p), Layout::sub(ring, elems), options);
}

FiniteRing subring_generated(const FiniteRing& ring, const Subset& generators, const BuildOptions& options) {
  if (generators.ring_tag() != ring.tag())
    throw Error(ErrorCode::RingMismatch, "generators belong to a different ring");
  Subset set = Subset::empty_of(ring);
  std::vector<Index> members{ring.zero()};
  set.insert(ring.zero());
  std::vector<Index> gens{ring.one()};
  generators.for_each([&](Index a) {
    if (a != ring.one()) gens.push_back(a);
  });
  for (Index g : gens)
    if (!set.contains(g)) {
      set.insert(g);
      members.push_back(g);
    }
  // Alternate additive closure with products of the additive generators
  // until nothing new appears; products of generators suffice by distributivity.
  for (;;) {
    additive_closure(ring, set, members, gens);
    std::vector<Index> fresh;
    Subset queued = Subset::empty_of(ring);
    for (Index a : gens)
      for (Index b : gens) {
        const Index p = ring.mul(a, b);
        if (!set.contains(p) && !queued.contains(p)) {
          queued.insert(p);
          fresh.push_back(p);
        }
      }
    if (fresh.empty()) break;
    for (Index f : fresh) {
      gens.push_back(f);
      set.insert(f);
      members.push_back(f);
    }
  }
  auto elems = set.indices();
  Provenance p =
      provenance("SubringGen(" + ring.name() + ", " + set_literal(ring, generators) + ")", "SubringGen", {ring}, {},
                 generators.indices());
  return induced_ring(ring, elems, ring.one(), std::move(p), Layout::sub(ring, elems), options);
}

Subset ideal_generated(const FiniteRing& ring, const Subset& generators) {
  if (generators.ring_tag() != ring.tag())
    throw Error(ErrorCode::RingMismatch, "generators belong to a different ring");
  // The ideal is the additive span of {r g s}; grow it until it absorbs
  // multiplication from both sides.
  Subset set = Subset::empty_of(ring);
  set.insert(ring.zero());
  std::vector<Index> members{ring.zero()};
  std::vector<Index> gens;
  Subset queued = Subset::empty_of(ring);
  for (;;) {
    std::vector<Index> fresh;
    auto consider = [&](Index x) {
      if (!set.contains(x) && !queued.contains(x)) {
        queued.insert(x);
        fresh.push_back(x);
      }
    };
    if (gens.empty()) generators.for_each(consider);
    for (Index g : gens)
      for (Index r = 0; r < ring.order(); ++r) {
        consider(ring.mul(r, g));
        consider(ring.mul(g, r));
      }
    if (fresh.empty()) break;
    for (Index f : fresh) {
      set.insert(f);
      members.push_back(f);
      gens.push_back(f);
    }
    additive_closure(ring, set, members, gens);
  }
  return set;
}

void require_ideal(const FiniteRing& ring, const Subset& ideal) {
  if (ideal.ring_tag() != ring.tag()) throw Error(ErrorCode::RingMismatch, "ideal belongs to a different ring");
  if (!ideal.contains(ring.zero())) throw Error(ErrorCode::NotAnIdeal, "subset does not contain zero", {ring.zero()});
  const auto members = ideal.indices();
  for (Index x : members) {
    if (!ideal.contains(ring.neg(x))) throw Error(ErrorCode::NotAnIdeal, "subset is not closed under negation", {x});
    for (Index y : members)
      if (!ideal.contains(ring.add(x, y)))
        throw Error(ErrorCode::NotAnIdeal, "subset is not closed under addition", {x, y});
    for (Index r = 0; r < ring.order(); ++r) {
      if (!ideal.contains(ring.mul(r, x)))
        throw Error(ErrorCode::NotAnIdeal, "subset does not absorb left multiplication", {r, x});
      if (!ideal.contains(ring.mul(x, r)))
        throw Error(ErrorCode::NotAnIdeal, "subset does not absorb right multiplication", {x, r});
    }
  }
}

FiniteRing quotient_ring(const FiniteRing& ring, const Subset& ideal, const BuildOptions& options) {
  require_ideal(ring, ideal);
  const std::size_t n = ring.order();
  constexpr Index kUnset = ~Index{0};
  std::vector<Index> projection(n, kUnset);
  std::vector<Index> reps;
  const auto members = ideal.indices();
  for (Index a = 0; a < n; ++a) {
    if (projection[a] != kUnset) continue;
    const auto cls = static_cast<Index>(reps.size());
    reps.push_back(a);
    for (Index i : members) projection[ring.add(a, i)] = cls;
  }
  const std::size_t k = reps.size();
  Provenance p = provenance("Quot(" + ring.name() + ", " + set_literal(ring, ideal) + ")", "Quot", {ring}, {},
                            members);
  require_order_within(k, options.order_cap, p.expr);
  RingTables t;
  t.order = k;
  t.add.resize(k * k);
  t.mul.resize(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      t.add[i * k + j] = projection[ring.add(reps[i], reps[j])];
      t.mul[i * k + j] = projection[ring.mul(reps[i], reps[j])];
    }
  t.zero = projection[ring.zero()];
  t.one = projection[ring.one()];
  return FiniteRing::create(std::move(t), std::move(p), Layout::quotient(ring, reps, std::move(projection)),
                            options);
}

// ---------------------------------------------------------------------------
// Finite fields

FiniteRing galois_field(std::size_t p, std::size_t k, const BuildOptions& options) {
  if (p < 2 || k == 0) throw Error(ErrorCode::InvalidParameter, "GF(p,k) needs p >= 2 and k >= 1");
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw Error(ErrorCode::InvalidParameter, "GF(p,k) needs a prime p");
  const std::string expr = "GF(" + nstr(p) + "," + nstr(k) + ")";
  const std::size_t order = checked_power(p, k, options.order_cap);
  require_order_within(order, options.order_cap, expr);
  auto base = zn(p, options);
  if (k == 1) {
    RingTables t;
    t.order = p;
    t.add.assign(base.add_table().begin(), base.add_table().end());
    t.mul.assign(base.mul_table().begin(), base.mul_table().end());
    t.zero = 0;
    t.one = 1;
    return FiniteRing::create(std::move(t), provenance(expr, "GF", {}, {static_cast<long>(p), 1}),
                              Layout::scalar(), options);
  }
  const std::size_t candidates = checked_power(p, k, options.order_cap);
  std::vector<Index> f(k + 1, 0);
  f[k] = 1;
  for (std::size_t c = 0; c < candidates; ++c) {
    std::size_t rest = c;
    for (std::size_t i = k; i-- > 0;) {
      f[i] = static_cast<Index>(rest % p);
      rest /= p;
    }
    if (f[0] == 0) continue;  // divisible by x
    auto q = poly_quotient(base, f, options);
    // A finite commutative ring is a field iff every nonzero element is a unit.
    bool field = true;
    for (Index a = 1; a < q.order() && field; ++a) {
      bool unit = false;
      for (Index b = 1; b < q.order() && !unit; ++b) unit = q.mul(a, b) == q.one();
      field = unit;
    }
    if (!field) continue;
    RingTables t;
    t.order = q.order();
    t.add.assign(q.add_table().begin(), q.add_table().end());
    t.mul.assign(q.mul_table().begin(), q.mul_table().end());
    t.zero = q.zero();
    t.one = q.one();
    Layout layout = Layout::tuple(std::vector<FiniteRing>(k, base), std::vector<Index>(q.layout().coords));
    return FiniteRing::create(std::move(t), provenance(expr, "GF", {}, {static_cast<long>(p), static_cast<long>(k)}, f),
                              std::move(layout), options);
  }
  throw Error(ErrorCode::InternalInconsistency, "no irreducible polynomial found for " + expr);
}

RingMap frobenius(const FiniteRing& ring) {
  std::size_t p = 1;
  for (Index x = ring.one(); x != ring.zero(); x = ring.add(x, ring.one())) ++p;
  if (ring.order() == 1) p = 1;
  // p is now the additive order of 1.
  std::vector<Index> image(ring.order());
  for (Index a = 0; a < ring.order(); ++a) {
    Index v = ring.one();
    for (std::size_t i = 0; i < p; ++i) v = ring.mul(v, a);
    image[a] = v;
  }
  return endomorphism_of(ring, std::move(image));
}

}  // namespace cdelta
