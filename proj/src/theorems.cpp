#include "cdelta/theorems.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include "cdelta/constructors.hpp"

namespace cdelta {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Definition-level predicates

namespace replay {
namespace {

std::vector<char> unit_flags(const FiniteRing& r) {
  std::vector<char> u(r.order(), 0);
  for (Index a = 0; a < r.order(); ++a) u[a] = is_unit(r, a);
  return u;
}

std::vector<char> delta_flags(const FiniteRing& r, const std::vector<char>& unit) {
  std::vector<char> d(r.order(), 0);
  for (Index a = 0; a < r.order(); ++a) {
    bool ok = true;
    for (Index u = 0; u < r.order() && ok; ++u)
      if (unit[u]) ok = unit[r.sub(r.one(), r.mul(u, a))];
    d[a] = ok;
  }
  return d;
}

// Membership flags of the second summand of a central decomposition kind.
std::vector<char> second_flags(const FiniteRing& r, DecompositionKind kind) {
  const auto unit = unit_flags(r);
  switch (kind) {
    case DecompositionKind::CDelta: return delta_flags(r, unit);
    case DecompositionKind::CJ: {
      std::vector<char> j(r.order(), 0);
      for (Index a = 0; a < r.order(); ++a) {
        bool ok = true;
        for (Index x = 0; x < r.order() && ok; ++x)
          ok = unit[r.sub(r.one(), r.mul(x, a))] && unit[r.sub(r.one(), r.mul(a, x))];
        j[a] = ok;
      }
      return j;
    }
    case DecompositionKind::CN: {
      std::vector<char> n(r.order(), 0);
      for (Index a = 0; a < r.order(); ++a) n[a] = is_nilpotent(r, a);
      return n;
    }
    default: return unit;
  }
}

bool decomposes(const FiniteRing& r, Index a, DecompositionKind kind, const std::vector<char>& second,
                const std::vector<char>& central, const std::vector<char>& unit, const std::vector<char>& delta) {
  switch (kind) {
    case DecompositionKind::CDelta:
    case DecompositionKind::CJ:
    case DecompositionKind::CN:
    case DecompositionKind::CU:
      for (Index c = 0; c < r.order(); ++c)
        if (central[c] && second[r.sub(a, c)]) return true;
      return false;
    case DecompositionKind::Clean:
    case DecompositionKind::StronglyClean:
      for (Index e = 0; e < r.order(); ++e) {
        if (r.mul(e, e) != e || !unit[r.sub(a, e)]) continue;
        if (kind == DecompositionKind::Clean || r.mul(a, e) == r.mul(e, a)) return true;
      }
      return false;
    default:
      for (Index d = 0; d < r.order(); ++d) {
        if (!delta[d]) continue;
        for (Index e = 0; e < r.order(); ++e) {
          if (r.mul(e, e) != e) continue;
          const Index f = r.sub(r.add(d, e), a);
          if (r.mul(f, f) != f || r.mul(e, f) != r.zero() || r.mul(f, e) != r.zero()) continue;
          if (kind == DecompositionKind::StronglyFeeblyDeltaClean && r.mul(d, e) != r.mul(e, d) &&
              r.mul(d, f) != r.mul(f, d))
            continue;
          return true;
        }
      }
      return false;
  }
}

}  // namespace

bool is_unit(const FiniteRing& r, Index a) {
  for (Index b = 0; b < r.order(); ++b)
    if (r.mul(a, b) == r.one() && r.mul(b, a) == r.one()) return true;
  return false;
}

bool is_central(const FiniteRing& r, Index a) {
  for (Index b = 0; b < r.order(); ++b)
    if (r.mul(a, b) != r.mul(b, a)) return false;
  return true;
}

bool in_delta(const FiniteRing& r, Index a) {
  for (Index u = 0; u < r.order(); ++u)
    if (is_unit(r, u) && !is_unit(r, r.sub(r.one(), r.mul(u, a)))) return false;
  return true;
}

bool in_jacobson(const FiniteRing& r, Index a) {
  for (Index x = 0; x < r.order(); ++x)
    if (!is_unit(r, r.sub(r.one(), r.mul(x, a))) || !is_unit(r, r.sub(r.one(), r.mul(a, x)))) return false;
  return true;
}

bool is_nilpotent(const FiniteRing& r, Index a) {
  Index p = a;
  for (std::size_t k = 0; k <= r.order() && p != r.zero(); ++k) p = r.mul(p, a);
  return p == r.zero();
}

bool has_decomposition(const FiniteRing& r, Index a, DecompositionKind kind) {
  const auto unit = unit_flags(r);
  std::vector<char> central(r.order());
  for (Index c = 0; c < r.order(); ++c) central[c] = is_central(r, c);
  const auto second = second_flags(r, kind);
  const auto delta = delta_flags(r, unit);
  return decomposes(r, a, kind, second, central, unit, delta);
}

bool all_decompose(const FiniteRing& r, DecompositionKind kind) {
  const auto unit = unit_flags(r);
  std::vector<char> central(r.order());
  for (Index c = 0; c < r.order(); ++c) central[c] = is_central(r, c);
  const auto second = second_flags(r, kind);
  const auto delta = delta_flags(r, unit);
  for (Index a = 0; a < r.order(); ++a)
    if (!decomposes(r, a, kind, second, central, unit, delta)) return false;
  return true;
}

}  // namespace replay

// ---------------------------------------------------------------------------
// Context

struct CheckContext::Impl {
  explicit Impl(FiniteRing r, CheckOptions o) : ring(std::move(r)), analysis(ring), options(o) {}

  struct Slot {
    std::once_flag once;
    std::shared_ptr<const DerivedRing> value;
  };

  FiniteRing ring;
  RingAnalysis analysis;
  CheckOptions options;
  std::mutex mutex;
  std::map<std::string, std::shared_ptr<Slot>> derived;
  std::once_flag ideals_once;
  std::vector<Subset> ideals;
  bool ideals_complete = false;
};

CheckContext::CheckContext(FiniteRing ring, CheckOptions options)
    : impl_(std::make_unique<Impl>(std::move(ring), options)) {}
CheckContext::~CheckContext() = default;

const FiniteRing& CheckContext::ring() const noexcept { return impl_->ring; }
const RingAnalysis& CheckContext::analysis() const noexcept { return impl_->analysis; }
const CheckOptions& CheckContext::options() const noexcept { return impl_->options; }

std::shared_ptr<const DerivedRing> CheckContext::derived(
    const std::string& key, const std::function<FiniteRing(const BuildOptions&)>& build) {
  std::shared_ptr<Impl::Slot> slot;
  {
    std::lock_guard lock(impl_->mutex);
    auto& s = impl_->derived[key];
    if (!s) s = std::make_shared<Impl::Slot>();
    slot = s;
  }
  std::call_once(slot->once, [&] {
    BuildOptions opts;
    opts.order_cap = impl_->options.derived_order_cap;
    try {
      slot->value = std::make_shared<const DerivedRing>(build(opts));
    } catch (const Error& e) {
      switch (e.code()) {
        case ErrorCode::OrderCapExceeded:
        case ErrorCode::NonCommutativeBase:
        case ErrorCode::NotAHomomorphism:
        case ErrorCode::NotUnital:
        case ErrorCode::NonCentralParameter:
          break;
        default:
          throw;
      }
    }
  });
  return slot->value;
}

namespace {

constexpr std::size_t kMaxFullLattice = 64;
constexpr std::size_t kMaxLatticeSearchRadical = 256;
constexpr std::size_t kPrincipalIdeals = 14;

bool subset_less(const Subset& a, const Subset& b) {
  if (a.count() != b.count()) return a.count() < b.count();
  return a.indices() < b.indices();
}

}  // namespace

const std::vector<Subset>& CheckContext::ideals_in_jacobson() {
  std::call_once(impl_->ideals_once, [&] {
    const FiniteRing& R = impl_->ring;
    const Subset& J = impl_->analysis.jacobson();
    std::vector<Subset> found{Subset::empty_of(R)};
    found[0].insert(R.zero());
    auto known = [&](const Subset& s) {
      return std::any_of(found.begin(), found.end(), [&](const Subset& t) { return t == s; });
    };
    bool complete = J.count() <= kMaxLatticeSearchRadical;
    // Breadth-first: every ideal inside J is reached by adding one element
    // at a time to a smaller ideal.
    for (std::size_t i = 0; complete && i < found.size(); ++i) {
      const Subset base = found[i];
      for (Index x : (J - base).indices()) {
        Subset gens = base;
        gens.insert(x);
        Subset ideal = ideal_generated(R, gens);
        if (known(ideal)) continue;
        found.push_back(std::move(ideal));
        if (found.size() > kMaxFullLattice) {
          complete = false;
          break;
        }
      }
    }
    if (!complete) {
      found.assign(1, found[0]);
      if (!known(J)) found.push_back(J);
      std::size_t taken = 0;
      for (Index x : J.indices()) {
        if (x == R.zero()) continue;
        if (taken++ == kPrincipalIdeals) break;
        Subset gens = Subset::empty_of(R);
        gens.insert(x);
        Subset ideal = ideal_generated(R, gens);
        if (!known(ideal)) found.push_back(std::move(ideal));
      }
    }
    std::sort(found.begin(), found.end(), subset_less);
    impl_->ideals = std::move(found);
    impl_->ideals_complete = complete;
  });
  return impl_->ideals;
}

bool CheckContext::ideal_family_complete() {
  ideals_in_jacobson();
  return impl_->ideals_complete;
}

// ---------------------------------------------------------------------------
// Check helpers

namespace {

struct Outcome {
  Verdict verdict = Verdict::Pass;
  std::string hypothesis;
  std::string detail;
  std::vector<WitnessEntry> witness;
  std::function<bool()> replay;
};

Outcome pass(std::string detail = {}) {
  Outcome o;
  o.detail = std::move(detail);
  return o;
}

Outcome not_applicable(std::string hypothesis, std::string detail = {}) {
  Outcome o;
  o.verdict = Verdict::NotApplicable;
  o.hypothesis = std::move(hypothesis);
  o.detail = std::move(detail);
  return o;
}

Outcome failure(std::vector<WitnessEntry> witness, std::function<bool()> replay, std::string detail) {
  Outcome o;
  o.verdict = Verdict::Fail;
  o.witness = std::move(witness);
  o.replay = std::move(replay);
  o.detail = std::move(detail);
  return o;
}

WitnessEntry W(std::string role, const FiniteRing& r, Index x) { return {std::move(role), r.name(), x, r.label(x)}; }

const std::string kCapHypothesis = "derived ring within order cap";
const std::string kCDelta = "R is CDelta";
const std::string kCN = "R is CN";

using DK = DecompositionKind;
using Builder = std::function<FiniteRing(const BuildOptions&)>;
using DerivedPtr = std::shared_ptr<const DerivedRing>;

bool is_cdelta(const RingAnalysis& an) { return an.all_decompose(DK::CDelta); }

/// k * 1 in R.
Index scalar(const FiniteRing& r, long k) {
  Index x = r.zero();
  for (long i = 0; i < k; ++i) x = r.add(x, r.one());
  return x;
}

/// The element of a matrix-shaped ring with the given entries.
std::optional<Index> matrix_element(const FiniteRing& r, std::size_t n,
                                    const std::vector<std::pair<std::pair<std::size_t, std::size_t>, Index>>& entries) {
  const Index zero = r.layout().slot(0).zero();
  std::vector<Index> coords(n * n, zero);
  for (const auto& [pos, v] : entries) coords[pos.first * n + pos.second] = v;
  return r.find(coords);
}

/// (s, t) pairs used for the L and H families: all of {0, 1}^2 without
/// duplicates (they coincide in the zero ring).
std::vector<CentralParams> central_pairs(const FiniteRing& r) {
  std::vector<CentralParams> out;
  for (Index s : {r.zero(), r.one()})
    for (Index t : {r.zero(), r.one()}) {
      const bool dup = std::any_of(out.begin(), out.end(), [&](const CentralParams& p) { return p.s == s && p.t == t; });
      if (!dup) out.push_back({s, t});
    }
  return out;
}

std::string pair_label(const FiniteRing& r, const CentralParams& p) {
  return "(" + r.label(p.s) + "," + r.label(p.t) + ")";
}

/// Failure showing an element of `ring` without a decomposition of `kind`.
Outcome undecomposable(const DerivedRing& d, DK kind, Index a, std::string detail) {
  FiniteRing r = d.ring;
  return failure({W("undecomposable (" + std::string(to_string(kind)) + ")", r, a)},
                 [r, a, kind] { return !replay::has_decomposition(r, a, kind); }, std::move(detail));
}

Outcome undecomposable(const FiniteRing& r, DK kind, Index a, std::string detail) {
  return failure({W("undecomposable (" + std::string(to_string(kind)) + ")", r, a)},
                 [r, a, kind] { return !replay::has_decomposition(r, a, kind); }, std::move(detail));
}

/// Compares CDelta-ness of R and a derived ring; witnesses the side that
/// has an undecomposable element.
std::optional<Outcome> compare_cdelta(CheckContext& ctx, const DerivedRing& d, const std::string& what) {
  const bool base = is_cdelta(ctx.analysis());
  const bool derived = is_cdelta(d.analysis);
  if (base == derived) return std::nullopt;
  if (base) {
    const Index a = *d.analysis.first_undecomposable(DK::CDelta);
    FiniteRing dr = d.ring, r = ctx.ring();
    return failure({W("undecomposable in " + what, dr, a)},
                   [dr, r, a] { return !replay::has_decomposition(dr, a, DK::CDelta) && replay::all_decompose(r, DK::CDelta); },
                   "R is CDelta but " + what + " is not");
  }
  const Index a = *ctx.analysis().first_undecomposable(DK::CDelta);
  FiniteRing dr = d.ring, r = ctx.ring();
  return failure({W("undecomposable in R", r, a)},
                 [dr, r, a] { return !replay::has_decomposition(r, a, DK::CDelta) && replay::all_decompose(dr, DK::CDelta); },
                 what + " is CDelta but R is not");
}

struct Family {
  std::string key;
  Builder build;
};

/// CDelta(R) == CDelta(D) for every listed derived ring within the cap.
Outcome transfer(CheckContext& ctx, const std::vector<Family>& families) {
  std::string used, skipped;
  for (const auto& f : families) {
    auto d = ctx.derived(f.key, f.build);
    if (!d) {
      skipped += (skipped.empty() ? "" : ", ") + f.key;
      continue;
    }
    used += (used.empty() ? "" : ", ") + d->ring.name();
    if (auto o = compare_cdelta(ctx, *d, d->ring.name())) return *o;
  }
  if (used.empty()) return not_applicable(kCapHypothesis, "skipped: " + skipped);
  return pass("compared with " + used + (skipped.empty() ? "" : "; skipped: " + skipped));
}

Builder family_builder(const FiniteRing& r, FamilySpec spec) {
  return [r, spec](const BuildOptions& o) { return special_matrix_family(spec, r, o); };
}

std::string ideal_key(const Subset& I) {
  std::string k = "ideal";
  for (Index x : I.indices()) k += ":" + std::to_string(x);
  return k;
}

DerivedPtr quotient_by(CheckContext& ctx, const Subset& I) {
  FiniteRing r = ctx.ring();
  return ctx.derived(ideal_key(I), [r, I](const BuildOptions& o) { return quotient_ring(r, I, o); });
}

DerivedPtr radical_quotient(CheckContext& ctx) { return quotient_by(ctx, ctx.analysis().jacobson()); }

std::string ideal_detail(CheckContext& ctx) {
  return std::to_string(ctx.ideals_in_jacobson().size()) + " ideals inside J(R)" +
         (ctx.ideal_family_complete() ? " (complete lattice)" : " (bounded family)");
}

DerivedPtr corner_of(CheckContext& ctx, Index e) {
  FiniteRing r = ctx.ring();
  return ctx.derived("corner:" + std::to_string(e), [r, e](const BuildOptions& o) { return corner_ring(r, e, o); });
}

DerivedPtr matrix2(CheckContext& ctx) {
  FiniteRing r = ctx.ring();
  return ctx.derived("M2", [r](const BuildOptions& o) { return matrix_ring(2, r, o); });
}

// Identity-index isomorphism test between two rings of equal order.
std::optional<Outcome> identity_isomorphism(const FiniteRing& a, const FiniteRing& b, const std::string& what) {
  if (a.order() != b.order())
    return failure({W("order of source", a, a.zero())}, [a, b] { return a.order() != b.order(); },
                   what + ": orders differ");
  std::vector<Index> image(a.order());
  for (Index x = 0; x < a.order(); ++x) image[x] = x;
  if (auto v = find_homomorphism_violation(a, b, image)) {
    const auto [x, y] = *v;
    return failure({W("left operand", a, x), W("right operand", a, y)},
                   [a, b, x = x, y = y] {
                     return a.add(x, y) != b.add(x, y) || a.mul(x, y) != b.mul(x, y);
                   },
                   what + ": the coefficient map is not a homomorphism");
  }
  if (a.one() != b.one() || a.zero() != b.zero())
    return failure({W("identity", a, a.one())}, [a, b] { return a.one() != b.one() || a.zero() != b.zero(); },
                   what + ": the coefficient map does not preserve 0 and 1");
  return std::nullopt;
}

std::optional<RingMap> frobenius_of(const FiniteRing& r) {
  try {
    return frobenius(r);
  } catch (const Error&) {
    return std::nullopt;
  }
}

RingMap identity_map(const FiniteRing& r) {
  std::vector<Index> image(r.order());
  for (Index x = 0; x < r.order(); ++x) image[x] = x;
  return RingMap{r, r, std::move(image), MapKind::Endomorphism};
}

struct Endo {
  std::string label;
  RingMap map;
};

std::vector<Endo> endomorphisms(const FiniteRing& r) {
  std::vector<Endo> out{{"id", identity_map(r)}};
  if (auto f = frobenius_of(r); f && f->image != out[0].map.image) out.push_back({"frob", *f});
  return out;
}

// ---------------------------------------------------------------------------
// Section: basic properties of Delta and CDelta

Outcome lemma_2_2(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  const FiniteRing& R = ctx.ring();
  std::optional<std::pair<Index, Index>> bad;
  an.units().for_each([&](Index u) {
    if (bad) return;
    an.delta().for_each([&](Index d) {
      if (!bad && !an.units().contains(R.add(u, d))) bad = std::pair{u, d};
    });
  });
  if (!bad) return pass();
  const auto [u, d] = *bad;
  FiniteRing r = R;
  return failure({W("unit", R, u), W("delta element", R, d)},
                 [r, u = u, d = d] {
                   return replay::is_unit(r, u) && replay::in_delta(r, d) && !replay::is_unit(r, r.add(u, d));
                 },
                 "unit plus Delta element is not a unit");
}

Outcome lemma_2_3(CheckContext& ctx) {
  auto m = matrix2(ctx);
  if (!m) return not_applicable(kCapHypothesis, "M(2, R) too large");
  const FiniteRing& M = m->ring;
  const auto& J = ctx.analysis().jacobson();
  for (Index x = 0; x < M.order(); ++x) {
    const bool in_delta = m->analysis.delta().contains(x);
    const bool in_j = m->analysis.jacobson().contains(x);
    const auto c = M.coords(x);
    const bool entries_in_j = std::all_of(c.begin(), c.end(), [&](Index e) { return J.contains(e); });
    if (in_delta == in_j && in_j == entries_in_j) continue;
    FiniteRing mr = M, r = ctx.ring();
    return failure({W("matrix", M, x)},
                   [mr, r, x] {
                     const auto cc = mr.coords(x);
                     const bool ej = std::all_of(cc.begin(), cc.end(), [&](Index e) { return replay::in_jacobson(r, e); });
                     const bool d = replay::in_delta(mr, x), j = replay::in_jacobson(mr, x);
                     return !(d == j && j == ej);
                   },
                   "membership in Delta(M), J(M) and M(J(R)) disagrees");
  }
  return pass("on " + M.name());
}

Outcome lemma_2_7(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  std::size_t applicable = 0;
  for (const Subset& I : ctx.ideals_in_jacobson()) {
    auto q = quotient_by(ctx, I);
    if (!q || q->analysis.delta().count() != 1) continue;
    ++applicable;
    const Subset& D = an.delta();
    const Subset& J = an.jacobson();
    if (D == I && I == J) continue;
    const Index x = ((D - I) | (I - D) | (J - I) | (I - J)).indices().front();
    FiniteRing r = ctx.ring(), qr = q->ring;
    Subset ideal = I;
    return failure({W("element", r, x)},
                   [r, qr, ideal, x] {
                     for (Index y = 0; y < qr.order(); ++y)
                       if (y != qr.zero() && replay::in_delta(qr, y)) return false;  // hypothesis no longer holds
                     return replay::in_delta(r, x) != ideal.contains(x) || replay::in_jacobson(r, x) != ideal.contains(x);
                   },
                   "ideal of size " + std::to_string(I.count()) + " with Delta(R/I) = 0 differs from Delta(R) or J(R)");
  }
  if (applicable == 0) return not_applicable("an ideal I inside J(R) with Delta(R/I) = 0", ideal_detail(ctx));
  return pass(std::to_string(applicable) + " qualifying ideals; " + ideal_detail(ctx));
}

Outcome cor_2_8(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  auto q = radical_quotient(ctx);
  if (!q) return not_applicable(kCapHypothesis);
  const bool lhs = an.delta() == an.jacobson();
  const bool rhs = q->analysis.delta().count() == 1;
  if (lhs == rhs) return pass();
  FiniteRing r = ctx.ring(), qr = q->ring;
  if (!lhs) {
    const Index x = *an.delta().first_not_in(an.jacobson());
    return failure({W("in Delta(R) outside J(R)", r, x)},
                   [r, x] { return replay::in_delta(r, x) && !replay::in_jacobson(r, x); },
                   "Delta(R) != J(R) although Delta(R/J(R)) = 0");
  }
  Subset zero = Subset::empty_of(qr);
  zero.insert(qr.zero());
  const Index y = *q->analysis.delta().first_not_in(zero);
  return failure({W("nonzero element of Delta(R/J(R))", qr, y)}, [qr, y] { return replay::in_delta(qr, y); },
                 "Delta(R) = J(R) although Delta(R/J(R)) != 0");
}

Outcome cor_2_9(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  for (const Subset& I : ctx.ideals_in_jacobson()) {
    auto q = quotient_by(ctx, I);
    if (!q) continue;
    const FiniteRing& Q = q->ring;
    const auto& proj = Q.layout().projection;
    Subset image = Subset::empty_of(Q);
    an.delta().for_each([&](Index x) { image.insert(proj[x]); });
    if (image == q->analysis.delta()) continue;
    const Index y = image.first_not_in(q->analysis.delta()).value_or(*q->analysis.delta().first_not_in(image));
    FiniteRing r = ctx.ring(), qr = Q;
    return failure({W("coset", Q, y)},
                   [r, qr, y] {
                     const auto& p = qr.layout().projection;
                     bool hit = false;
                     for (Index x = 0; x < r.order() && !hit; ++x) hit = p[x] == y && replay::in_delta(r, x);
                     return hit != replay::in_delta(qr, y);
                   },
                   "(I + Delta(R))/I differs from Delta(R/I) for an ideal of size " + std::to_string(I.count()));
  }
  return pass(ideal_detail(ctx));
}

Outcome example_2_10(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  const auto& rep = an.report();
  const std::size_t n = ctx.ring().order();
  const bool radical = an.jacobson().count() == n;
  const bool delta_ring = an.delta().count() == n;
  const bool any = rep.commutative || radical || delta_ring || rep.cj;
  if (!any) return not_applicable("R commutative, radical, equal to Delta(R) or CJ");
  if (rep.cdelta) return pass();
  const Index a = *an.first_undecomposable(DK::CDelta);
  return undecomposable(ctx.ring(), DK::CDelta, a, "a ring of one of the listed kinds is not CDelta");
}

// Prop 4.3 battery ---------------------------------------------------------

Outcome prop_4_3_i(CheckContext& ctx) {
  if (!is_cdelta(ctx.analysis())) return not_applicable(kCDelta);
  for (const Subset& I : ctx.ideals_in_jacobson()) {
    auto q = quotient_by(ctx, I);
    if (!q) continue;
    if (auto a = q->analysis.first_undecomposable(DK::CDelta))
      return undecomposable(*q, DK::CDelta, *a, "R/I is not CDelta for an ideal of size " + std::to_string(I.count()));
  }
  return pass(ideal_detail(ctx));
}

Outcome prop_4_3_ii(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!is_cdelta(an)) return not_applicable(kCDelta);
  const FiniteRing& R = ctx.ring();
  for (Index a = 0; a < R.order(); ++a)
    for (Index b = a + 1; b < R.order(); ++b) {
      const Index comm = R.sub(R.mul(a, b), R.mul(b, a));
      if (an.delta().contains(comm)) continue;
      FiniteRing r = R;
      return failure({W("a", R, a), W("b", R, b)},
                     [r, a, b] { return !replay::in_delta(r, r.sub(r.mul(a, b), r.mul(b, a))); },
                     "ab - ba is outside Delta(R)");
    }
  return pass();
}

Outcome prop_4_3_iii(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!is_cdelta(an)) return not_applicable(kCDelta);
  auto bad = an.dedekind_failure();
  if (!bad) return pass();
  const auto [a, b] = *bad;
  FiniteRing r = ctx.ring();
  return failure({W("a", r, a), W("b", r, b)},
                 [r, a = a, b = b] { return r.mul(a, b) == r.one() && r.mul(b, a) != r.one(); },
                 "ab = 1 but ba != 1");
}

Outcome prop_4_3_iv(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!is_cdelta(an)) return not_applicable(kCDelta);
  const FiniteRing& R = ctx.ring();
  for (Index a = 0; a < R.order(); ++a) {
    if (!an.delta().contains(R.mul(a, a)) || an.delta().contains(a)) continue;
    FiniteRing r = R;
    return failure({W("a", R, a)},
                   [r, a] { return replay::in_delta(r, r.mul(a, a)) && !replay::in_delta(r, a); },
                   "a^2 in Delta(R) but a is not");
  }
  return pass();
}

Outcome prop_4_3_v(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!is_cdelta(an)) return not_applicable(kCDelta);
  if (auto a = an.first_undecomposable(DK::CU)) return undecomposable(ctx.ring(), DK::CU, *a, "R is not CU");
  return pass();
}

Outcome prop_4_3_vi(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!is_cdelta(an)) return not_applicable(kCDelta);
  const Subset target = an.jacobson() & an.delta();
  if (auto a = an.nilpotents().first_not_in(target)) {
    FiniteRing r = ctx.ring();
    const Index x = *a;
    return failure({W("nilpotent", r, x)},
                   [r, x] { return replay::is_nilpotent(r, x) && !(replay::in_jacobson(r, x) && replay::in_delta(r, x)); },
                   "a nilpotent element lies outside J(R) or Delta(R)");
  }
  return pass();
}

Outcome prop_4_3_vii(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!is_cdelta(an)) return not_applicable(kCDelta);
  const FiniteRing& R = ctx.ring();
  for (Index a = 0; a < R.order(); ++a) {
    if (!an.jacobson().contains(R.mul(a, a)) || an.jacobson().contains(a)) continue;
    FiniteRing r = R;
    return failure({W("a", R, a)},
                   [r, a] { return replay::in_jacobson(r, r.mul(a, a)) && !replay::in_jacobson(r, a); },
                   "a^2 in J(R) but a is not");
  }
  auto q = radical_quotient(ctx);
  if (!q) return pass("R/J(R) not built (order cap)");
  if (q->analysis.nilpotents().count() != 1) {
    Subset zero = Subset::empty_of(q->ring);
    zero.insert(q->ring.zero());
    const Index y = *q->analysis.nilpotents().first_not_in(zero);
    FiniteRing qr = q->ring;
    return failure({W("nonzero nilpotent", qr, y)}, [qr, y] { return y != qr.zero() && replay::is_nilpotent(qr, y); },
                   "R/J(R) is not reduced");
  }
  return pass();
}

/// Every corner eRe has decompositions of `kind` (the whole ring when e = 1).
Outcome corners_decompose(CheckContext& ctx, DK kind) {
  const auto& an = ctx.analysis();
  const FiniteRing& R = ctx.ring();
  std::size_t checked = 0, skipped = 0;
  for (Index e : an.idempotents().indices()) {
    if (e == R.one()) {
      ++checked;
      if (auto a = an.first_undecomposable(kind)) return undecomposable(R, kind, *a, "the corner 1R1 = R fails");
      continue;
    }
    auto c = corner_of(ctx, e);
    if (!c) {
      ++skipped;
      continue;
    }
    ++checked;
    if (auto a = c->analysis.first_undecomposable(kind)) {
      Outcome o = undecomposable(*c, kind, *a, "a corner ring is not " + std::string(to_string(kind)));
      o.witness.insert(o.witness.begin(), W("idempotent", R, e));
      o.witness.push_back(W("same element in R", R, c->ring.layout().embed[*a]));
      return o;
    }
  }
  return pass(std::to_string(checked) + " corners" + (skipped ? ", " + std::to_string(skipped) + " over cap" : ""));
}

Outcome prop_4_3_viii(CheckContext& ctx) {
  if (!is_cdelta(ctx.analysis())) return not_applicable(kCDelta);
  return corners_decompose(ctx, DK::CDelta);
}

Outcome cor_exchange_clean(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!an.is_exchange()) return not_applicable("R is exchange");
  if (!is_cdelta(an)) return not_applicable(kCDelta);
  if (auto a = an.first_undecomposable(DK::Clean)) return undecomposable(ctx.ring(), DK::Clean, *a, "R is not clean");
  return pass();
}

Outcome prop_2_14(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!is_cdelta(an)) return not_applicable(kCDelta);
  const FiniteRing& R = ctx.ring();
  std::optional<Index> repeated;
  for (Index a = 0; a < R.order() && !repeated; ++a)
    if (an.count_cdelta_decompositions(a) > 1) repeated = a;
  const Subset meet = an.delta() & an.center();
  const bool unique = !repeated;
  const bool trivial_meet = meet.count() == 1;
  std::string detail = unique ? "unique decompositions" : "element " + R.label(*repeated) + " has several decompositions";
  if (unique == trivial_meet) return pass(detail);
  FiniteRing r = R;
  if (unique) {
    Subset zero = Subset::empty_of(R);
    zero.insert(R.zero());
    const Index c = *meet.first_not_in(zero);
    return failure({W("nonzero central Delta element", R, c)},
                   [r, c] { return c != r.zero() && replay::is_central(r, c) && replay::in_delta(r, c); },
                   "decompositions are unique but Delta(R) meets C(R) nontrivially");
  }
  const Index a = *repeated;
  return failure({W("element with two decompositions", R, a)},
                 [r, a] {
                   std::size_t n = 0;
                   for (Index c = 0; c < r.order(); ++c)
                     if (replay::is_central(r, c) && replay::in_delta(r, r.sub(a, c))) ++n;
                   for (Index c = 0; c < r.order(); ++c)
                     if (c != r.zero() && replay::is_central(r, c) && replay::in_delta(r, c)) return false;
                   return n > 1;
                 },
                 "Delta(R) meets C(R) trivially but decompositions are not unique");
}

DerivedPtr central_plus_delta(CheckContext& ctx) {
  FiniteRing r = ctx.ring();
  Subset gens = ctx.analysis().center() | ctx.analysis().delta();
  return ctx.derived("C+Delta", [r, gens](const BuildOptions& o) { return subring_generated(r, gens, o); });
}

Outcome prop_2_15(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  const FiniteRing& R = ctx.ring();
  auto s = central_plus_delta(ctx);
  if (!s) return not_applicable(kCapHypothesis);
  const FiniteRing& S = s->ring;
  const auto& embed = S.layout().embed;
  std::vector<Index> back(R.order(), ~Index{0});
  for (Index i = 0; i < embed.size(); ++i) back[embed[i]] = i;
  const Subset cd = sumset(R, an.center(), an.delta());
  const bool closed = cd.count() == S.order();
  FiniteRing sr = S;
  auto local = [back](Index x) { return back[x]; };

  std::optional<Outcome> bad;
  (an.units() & cd).for_each([&](Index x) {
    if (!bad && !s->analysis.units().contains(local(x)))
      bad = failure({W("unit of R in C + Delta", R, x)},
                    [sr, y = local(x)] { return !replay::is_unit(sr, y); },
                    "a unit of R in C + Delta is not invertible in C + Delta");
  });
  an.delta().for_each([&](Index x) {
    if (!bad && !s->analysis.delta().contains(local(x)))
      bad = failure({W("Delta element", R, x)}, [sr, y = local(x)] { return !replay::in_delta(sr, y); },
                    "an element of Delta(R) is outside Delta(C + Delta)");
  });
  an.center().for_each([&](Index x) {
    if (!bad && !s->analysis.center().contains(local(x)))
      bad = failure({W("central element", R, x)}, [sr, y = local(x)] { return !replay::is_central(sr, y); },
                    "a central element of R is not central in C + Delta");
  });
  if (bad) return *bad;
  return pass(closed ? "C + Delta is a subring" : "C + Delta generates a larger subring of order " +
                                                       std::to_string(S.order()));
}

Outcome cor_2_16(CheckContext& ctx) {
  auto s = central_plus_delta(ctx);
  if (!s) return not_applicable(kCapHypothesis);
  if (auto a = s->analysis.first_undecomposable(DK::CDelta))
    return undecomposable(*s, DK::CDelta, *a, "the subring generated by C(R) and Delta(R) is not CDelta");
  return pass("order " + std::to_string(s->ring.order()));
}

Outcome remark_2_18(CheckContext& ctx) {
  const auto& rep = ctx.analysis().report();
  if (!rep.delta_u) return not_applicable("R is DeltaU");
  if (rep.cdelta == rep.cu) return pass();
  const DK missing = rep.cdelta ? DK::CU : DK::CDelta;
  return undecomposable(ctx.ring(), missing, *ctx.analysis().first_undecomposable(missing),
                        "CDelta and CU disagree on a DeltaU ring");
}

Outcome prop_2_19(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  const FiniteRing& R = ctx.ring();
  const Subset covered = sumset(R, an.center(), an.delta());
  const auto units = an.units().indices();
  for (Index p : units) {
    const Index q = an.inverse(p);
    for (Index a = 0; a < R.order(); ++a) {
      const Index conj = R.mul(R.mul(p, a), q);
      if (covered.contains(a) == covered.contains(conj)) continue;
      FiniteRing r = R;
      return failure({W("a", R, a), W("p", R, p)},
                     [r, a, p, q] {
                       const Index c = r.mul(r.mul(p, a), q);
                       return replay::has_decomposition(r, a, DK::CDelta) != replay::has_decomposition(r, c, DK::CDelta);
                     },
                     "a and p a p^-1 differ in having a CDelta decomposition");
    }
  }
  return pass();
}

Outcome lemma_2_22(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  const auto& rep = an.report();
  if (!rep.uj && !rep.uu && !rep.delta_u) return not_applicable("R is UJ, UU or DeltaU");
  FiniteRing r = ctx.ring();
  if (rep.uj)
    if (auto x = an.nilpotents().first_not_in(an.jacobson()))
      return failure({W("nilpotent outside J(R)", r, *x)},
                     [r, x = *x] { return replay::is_nilpotent(r, x) && !replay::in_jacobson(r, x); },
                     "UJ ring with Nil(R) not inside J(R)");
  if (rep.uu) {
    if (auto x = an.jacobson().first_not_in(an.nilpotents()))
      return failure({W("radical element not nilpotent", r, *x)},
                     [r, x = *x] { return replay::in_jacobson(r, x) && !replay::is_nilpotent(r, x); },
                     "UU ring with J(R) not inside Nil(R)");
    if (auto x = an.delta().first_not_in(an.nilpotents()))
      return failure({W("Delta element not nilpotent", r, *x)},
                     [r, x = *x] { return replay::in_delta(r, x) && !replay::is_nilpotent(r, x); },
                     "UU ring with Delta(R) not inside Nil(R)");
  }
  if (rep.delta_u)
    if (auto x = an.nilpotents().first_not_in(an.delta()))
      return failure({W("nilpotent outside Delta(R)", r, *x)},
                     [r, x = *x] { return replay::is_nilpotent(r, x) && !replay::in_delta(r, x); },
                     "DeltaU ring with Nil(R) not inside Delta(R)");
  return pass();
}

Outcome cor_2_23(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  const auto& rep = an.report();
  struct Item {
    bool hypothesis;
    DK conclusion;
    const char* text;
  };
  const Item items[] = {
      {rep.uu && rep.cdelta, DK::CN, "UU and CDelta but not CN"},
      {rep.delta_u && rep.cn, DK::CDelta, "DeltaU and CN but not CDelta"},
      {rep.uj && rep.cn, DK::CJ, "UJ and CN but not CJ"},
      {rep.uu && rep.cj, DK::CN, "UU and CJ but not CN"},
  };
  std::size_t applicable = 0;
  for (const auto& item : items) {
    if (!item.hypothesis) continue;
    ++applicable;
    if (auto a = an.first_undecomposable(item.conclusion))
      return undecomposable(ctx.ring(), item.conclusion, *a, item.text);
  }
  if (applicable == 0) return not_applicable("one of: UU and CDelta, DeltaU and CN, UJ and CN, UU and CJ");
  return pass(std::to_string(applicable) + " implications applicable");
}

Outcome central_kinds_agree(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  const bool cn = an.all_decompose(DK::CN), cj = an.all_decompose(DK::CJ), cd = an.all_decompose(DK::CDelta);
  if (cn == cj && cj == cd) return pass(cd ? "all three hold" : "none holds");
  // Witness an element undecomposable for a kind while another kind holds.
  for (DK k : {DK::CN, DK::CJ, DK::CDelta})
    if (auto a = an.first_undecomposable(k))
      return undecomposable(ctx.ring(), k, *a, "CN, CJ and CDelta disagree");
  return pass();
}

Outcome lemma_4_1(CheckContext& ctx) {
  if (!ctx.analysis().is_commutative()) return not_applicable("R is commutative");
  return central_kinds_agree(ctx);
}

Outcome cor_4_4(CheckContext& ctx) { return central_kinds_agree(ctx); }

Outcome lemma_4_5(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!an.is_semipotent()) return not_applicable("R is semipotent");
  if (!an.all_decompose(DK::CN)) return not_applicable(kCN);
  if (auto a = an.first_undecomposable(DK::CJ)) return undecomposable(ctx.ring(), DK::CJ, *a, "R is not CJ");
  return pass();
}

Outcome cor_4_8(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!an.is_semipotent()) return not_applicable("R is semipotent");
  if (!an.all_decompose(DK::CN)) return not_applicable(kCN);
  auto q = radical_quotient(ctx);
  if (!q) return not_applicable(kCapHypothesis);
  const FiniteRing& Q = q->ring;
  for (Index x = 0; x < Q.order(); ++x)
    for (Index y = x + 1; y < Q.order(); ++y)
      if (Q.mul(x, y) != Q.mul(y, x)) {
        FiniteRing qr = Q;
        return failure({W("x", Q, x), W("y", Q, y)}, [qr, x, y] { return qr.mul(x, y) != qr.mul(y, x); },
                       "R/J(R) is not commutative");
      }
  return pass();
}

Outcome lemma_4_6(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!an.all_decompose(DK::CN)) return not_applicable(kCN);
  const FiniteRing& R = ctx.ring();
  if (auto e = an.idempotents().first_not_in(an.center())) {
    Index r = 0;
    while (R.mul(*e, r) == R.mul(r, *e)) ++r;
    FiniteRing rr = R;
    return failure({W("idempotent", R, *e), W("non-commuting element", R, r)},
                   [rr, e = *e, r] { return rr.mul(e, e) == e && rr.mul(e, r) != rr.mul(r, e); },
                   "a CN ring with a non-central idempotent");
  }
  return pass();
}

Outcome lemma_4_9(CheckContext& ctx) {
  if (!ctx.analysis().all_decompose(DK::CN)) return not_applicable(kCN);
  return corners_decompose(ctx, DK::CN);
}

Outcome cor_4_7(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!an.is_exchange()) return not_applicable("R is exchange");
  if (!an.all_decompose(DK::CN)) return not_applicable(kCN);
  if (auto a = an.first_undecomposable(DK::StronglyClean))
    return undecomposable(ctx.ring(), DK::StronglyClean, *a, "R is not strongly clean");
  return pass();
}

// ---------------------------------------------------------------------------
// Section: matrix-type extensions

Outcome lemma_2_20(CheckContext& ctx) {
  if (!ctx.analysis().is_commutative()) return not_applicable("R is commutative");
  auto m = matrix2(ctx);
  if (!m) return not_applicable(kCapHypothesis);
  const FiniteRing& R = ctx.ring();
  const FiniteRing& M = m->ring;
  const Subset& J = ctx.analysis().jacobson();
  const Subset covered = sumset(M, m->analysis.center(), m->analysis.delta());
  for (Index x = 0; x < M.order(); ++x) {
    const auto c = M.coords(x);  // a11, a12, a21, a22
    bool criterion = false;
    if (J.contains(c[1]) && J.contains(c[2]))
      for (Index s = 0; s < R.order() && !criterion; ++s)
        criterion = J.contains(R.sub(c[0], s)) && J.contains(R.sub(c[3], s));
    if (criterion == covered.contains(x)) continue;
    FiniteRing mr = M, r = R;
    return failure({W("matrix", M, x)},
                   [mr, r, x] {
                     const auto cc = mr.coords(x);
                     bool crit = false;
                     if (replay::in_jacobson(r, cc[1]) && replay::in_jacobson(r, cc[2]))
                       for (Index s = 0; s < r.order() && !crit; ++s)
                         crit = replay::in_jacobson(r, r.sub(cc[0], s)) && replay::in_jacobson(r, r.sub(cc[3], s));
                     return crit != replay::has_decomposition(mr, x, DK::CDelta);
                   },
                   "the scalar-shift criterion disagrees with the decomposition search");
  }
  return pass("on " + M.name());
}

Outcome cor_2_21(CheckContext& ctx) {
  auto m = matrix2(ctx);
  if (!m) return not_applicable(kCapHypothesis);
  const FiniteRing& M = m->ring;
  const auto& an = m->analysis;
  const Subset covered = sumset(M, an.center(), an.delta());
  for (Index p : an.units().indices()) {
    const Index q = an.inverse(p);
    for (Index a = 0; a < M.order(); ++a) {
      if (covered.contains(a) == covered.contains(M.mul(M.mul(p, a), q))) continue;
      FiniteRing mr = M;
      return failure({W("A", M, a), W("P", M, p)},
                     [mr, a, p, q] {
                       return replay::has_decomposition(mr, a, DK::CDelta) !=
                              replay::has_decomposition(mr, mr.mul(mr.mul(p, a), q), DK::CDelta);
                     },
                     "A and P A P^-1 differ in having a CDelta decomposition");
    }
  }
  return pass("on " + M.name());
}

Outcome remark_mn(CheckContext& ctx) {
  const FiniteRing& R = ctx.ring();
  const auto& prov = R.provenance();
  const bool self = prov.kind == "M" && !prov.params.empty() && prov.params[0] >= 2 && !prov.operands.empty() &&
                    prov.operands[0].order() > 1;
  std::shared_ptr<const DerivedRing> d;
  if (!self) {
    if (R.order() == 1) return not_applicable("R is nonzero");
    d = matrix2(ctx);
    if (!d) return not_applicable(kCapHypothesis);
  }
  const FiniteRing& M = self ? R : d->ring;
  const RingAnalysis& an = self ? ctx.analysis() : d->analysis;
  if (!is_cdelta(an)) return pass(M.name() + " is not CDelta");
  FiniteRing mr = M;
  return failure({W("identity", M, M.one())}, [mr] { return replay::all_decompose(mr, DK::CDelta); },
                 M.name() + " is CDelta");
}

Outcome prop_2_25(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!an.is_commutative()) return not_applicable("R is commutative");
  FiniteRing r = ctx.ring();
  auto t = ctx.derived("T2", [r](const BuildOptions& o) { return triangular_ring(2, r, o); });
  if (!t) return not_applicable(kCapHypothesis);
  const bool lhs = is_cdelta(t->analysis);
  std::optional<std::pair<Index, Index>> bad;
  for (Index a = 0; a < r.order() && !bad; ++a)
    for (Index b = 0; b < r.order() && !bad; ++b) {
      bool found = false;
      for (Index c = 0; c < r.order() && !found; ++c)
        found = an.delta().contains(r.sub(a, c)) && an.delta().contains(r.sub(b, c));
      if (!found) bad = std::pair{a, b};
    }
  const bool rhs = !bad;
  if (lhs == rhs) return pass();
  if (lhs) {
    const auto [a, b] = *bad;
    FiniteRing tr = t->ring;
    return failure({W("a", r, a), W("b", r, b)},
                   [r, tr, a = a, b = b] {
                     for (Index c = 0; c < r.order(); ++c)
                       if (replay::in_delta(r, r.sub(a, c)) && replay::in_delta(r, r.sub(b, c))) return false;
                     return replay::all_decompose(tr, DK::CDelta);
                   },
                   "T(2, R) is CDelta but no common shift exists for (a, b)");
  }
  return undecomposable(*t, DK::CDelta, *t->analysis.first_undecomposable(DK::CDelta),
                        "common shifts exist but T(2, R) is not CDelta");
}

/// Finite analogue of a "no decomposition" example: `element` must have no
/// CDelta decomposition in the derived ring.
Outcome no_decomposition(const DerivedRing& d, std::optional<Index> element, const std::string& what) {
  if (!element) throw Error(ErrorCode::InternalInconsistency, what + " is not an element of " + d.ring.name());
  const FiniteRing& X = d.ring;
  const Index x = *element;
  if (d.analysis.count_cdelta_decompositions(x) == 0) return pass(what + " has no decomposition in " + X.name());
  const auto w = d.analysis.decompose(x, DK::CDelta);
  const Index c = X.index_of(w.parts[0]), r = X.index_of(w.parts[1]);
  FiniteRing xr = X;
  return failure({W("element", X, x), W("central part", X, c), W("Delta part", X, r)},
                 [xr, x, c, r] { return xr.add(c, r) == x && replay::is_central(xr, c) && replay::in_delta(xr, r); },
                 what + " has a decomposition");
}

Outcome example_2_26_finite(CheckContext& ctx) {
  const FiniteRing& R = ctx.ring();
  if (!ctx.analysis().is_commutative()) return not_applicable("R is commutative");
  if (R.order() == 1) return not_applicable("R is nonzero");
  FiniteRing r = R;
  auto t = ctx.derived("T2", [r](const BuildOptions& o) { return triangular_ring(2, r, o); });
  if (!t) return not_applicable(kCapHypothesis);
  const auto x = matrix_element(t->ring, 2, {{{0, 0}, scalar(R, 4)}, {{1, 1}, scalar(R, 5)}});
  return no_decomposition(*t, x, "diag(4, 5)");
}

Outcome prop_3_1(CheckContext& ctx) {
  const FiniteRing& r = ctx.ring();
  return transfer(ctx, {{"Dn3", family_builder(r, {FamilyKind::Dn, 3, 0, 0})},
                        {"Vn3", family_builder(r, {FamilyKind::Vn, 3, 0, 0})},
                        {"DnK4", family_builder(r, {FamilyKind::DnK, 4, 0, 0})},
                        {"VnK4_2", family_builder(r, {FamilyKind::VnK, 4, 0, 2})}});
}

Outcome prop_3_2(CheckContext& ctx) {
  const FiniteRing& R = ctx.ring();
  const auto& an = ctx.analysis();
  std::string used;
  // Products with Z2 and with R itself.
  std::vector<std::pair<std::string, FiniteRing>> others{{"Z2", zn(2)}, {"R", R}};
  for (const auto& [key, other] : others) {
    FiniteRing r = R, s = other;
    auto p = ctx.derived("product:" + key, [r, s](const BuildOptions& o) {
      const std::vector<FiniteRing> f{r, s};
      return direct_product(f, o);
    });
    if (!p) continue;
    RingAnalysis sa(other);
    used += (used.empty() ? "" : ", ") + p->ring.name();
    const bool expect = is_cdelta(an) && is_cdelta(sa);
    if (is_cdelta(p->analysis) != expect) {
      if (expect)
        return undecomposable(*p, DK::CDelta, *p->analysis.first_undecomposable(DK::CDelta),
                              "factors are CDelta but the product is not");
      FiniteRing pr = p->ring;
      return failure({W("product ring identity", pr, pr.one())},
                     [pr] { return replay::all_decompose(pr, DK::CDelta); }, "a factor is not CDelta but the product is");
    }
    // Delta and the center are computed componentwise.
    const FiniteRing& P = p->ring;
    for (Index x = 0; x < P.order(); ++x) {
      const auto c = P.coords(x);
      const bool d = an.delta().contains(c[0]) && sa.delta().contains(c[1]);
      const bool z = an.center().contains(c[0]) && sa.center().contains(c[1]);
      if (d == p->analysis.delta().contains(x) && z == p->analysis.center().contains(x)) continue;
      FiniteRing pr = P, rr = R, ss = other;
      return failure({W("element", P, x)},
                     [pr, rr, ss, x] {
                       const auto cc = pr.coords(x);
                       return (replay::in_delta(rr, cc[0]) && replay::in_delta(ss, cc[1])) != replay::in_delta(pr, x) ||
                              (replay::is_central(rr, cc[0]) && replay::is_central(ss, cc[1])) !=
                                  replay::is_central(pr, x);
                     },
                     "Delta or the center of the product is not componentwise");
    }
  }
  // A ring built as a product: compare with its factors.
  const auto& prov = R.provenance();
  if (prov.kind == "product") {
    bool all = true;
    for (const auto& f : prov.operands) all = all && is_cdelta(RingAnalysis(f));
    if (all != is_cdelta(an)) {
      if (all)
        return undecomposable(R, DK::CDelta, *an.first_undecomposable(DK::CDelta),
                              "all factors are CDelta but R is not");
      FiniteRing r = R;
      return failure({W("identity", R, R.one())}, [r] { return replay::all_decompose(r, DK::CDelta); },
                     "R is CDelta but a factor is not");
    }
    used += (used.empty() ? "" : ", ") + std::string("own factors");
  }
  if (used.empty()) return not_applicable(kCapHypothesis);
  return pass("compared with " + used);
}

/// Delta of a 3x3 ring equals the set of matrices whose diagonal lies in Delta(R).
Outcome diagonal_delta(CheckContext& ctx, const DerivedRing& d) {
  const FiniteRing& X = d.ring;
  const Subset& D = ctx.analysis().delta();
  for (Index x = 0; x < X.order(); ++x) {
    const auto c = X.coords(x);
    const bool formula = D.contains(c[0]) && D.contains(c[4]) && D.contains(c[8]);
    if (formula == d.analysis.delta().contains(x)) continue;
    FiniteRing xr = X, r = ctx.ring();
    return failure({W("matrix", X, x)},
                   [xr, r, x] {
                     const auto cc = xr.coords(x);
                     const bool f = replay::in_delta(r, cc[0]) && replay::in_delta(r, cc[4]) && replay::in_delta(r, cc[8]);
                     return f != replay::in_delta(xr, x);
                   },
                   "Delta(" + X.name() + ") differs from the diagonal formula");
  }
  return pass();
}

template <class Build>
Outcome per_pair(CheckContext& ctx, const std::string& prefix, Build build,
                 const std::function<Outcome(const DerivedRing&)>& body) {
  std::string used, skipped;
  FiniteRing r = ctx.ring();
  for (const auto& p : central_pairs(r)) {
    auto d = ctx.derived(prefix + pair_label(r, p), [r, p, build](const BuildOptions& o) { return build(p, r, o); });
    if (!d) {
      skipped += (skipped.empty() ? "" : ", ") + pair_label(r, p);
      continue;
    }
    used += (used.empty() ? "" : ", ") + pair_label(r, p);
    Outcome o = body(*d);
    if (o.verdict == Verdict::Fail) return o;
  }
  if (used.empty()) return not_applicable(kCapHypothesis, "skipped (s,t): " + skipped);
  return pass("(s,t) in " + used + (skipped.empty() ? "" : "; skipped " + skipped));
}

FiniteRing build_l(const CentralParams& p, const FiniteRing& r, const BuildOptions& o) { return lst_ring(p, r, o); }
FiniteRing build_h(const CentralParams& p, const FiniteRing& r, const BuildOptions& o) { return hst_ring(p, r, o); }
FiniteRing build_v2l(const CentralParams& p, const FiniteRing& r, const BuildOptions& o) {
  return lst_v2_ring(p, r, o);
}

Outcome lemma_3_3(CheckContext& ctx) {
  return per_pair(ctx, "L", build_l, [&](const DerivedRing& d) { return diagonal_delta(ctx, d); });
}

Outcome lemma_3_8(CheckContext& ctx) {
  return per_pair(ctx, "H", build_h, [&](const DerivedRing& d) { return diagonal_delta(ctx, d); });
}

Outcome prop_3_4(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  const FiniteRing& R = ctx.ring();
  Outcome first = per_pair(ctx, "V2L", build_v2l, [&](const DerivedRing& d) {
    if (auto o = compare_cdelta(ctx, d, d.ring.name())) return *o;
    return pass();
  });
  if (first.verdict == Verdict::Fail) return first;
  // Part (ii), with its hypothesis read literally: s x = s y and t y = t z
  // for all central x, y, z.
  std::string second;
  if (is_cdelta(an)) {
    const auto center = an.center().indices();
    for (const auto& p : central_pairs(R)) {
      bool hyp = true;
      for (Index x : center)
        for (Index y : center) hyp = hyp && R.mul(p.s, x) == R.mul(p.s, y) && R.mul(p.t, x) == R.mul(p.t, y);
      if (!hyp) continue;
      FiniteRing r = R;
      auto l = ctx.derived("L" + pair_label(R, p), [r, p](const BuildOptions& o) { return lst_ring(p, r, o); });
      if (!l) continue;
      second += (second.empty() ? "" : ", ") + pair_label(R, p);
      if (auto a = l->analysis.first_undecomposable(DK::CDelta))
        return undecomposable(*l, DK::CDelta, *a, "hypothesis of part (ii) holds but L(s,t,R) is not CDelta");
    }
  }
  if (first.verdict == Verdict::NotApplicable && second.empty()) return first;
  return pass("part (i): " + (first.verdict == Verdict::Pass ? first.detail : "not applicable") +
              "; part (ii): " + (second.empty() ? "hypothesis unmet" : "(s,t) in " + second));
}

Outcome cor_3_5(CheckContext& ctx) {
  std::size_t applicable = 0;
  Outcome o = per_pair(ctx, "L", build_l, [&](const DerivedRing& d) {
    if (!is_cdelta(d.analysis)) return pass();
    ++applicable;
    if (auto o2 = compare_cdelta(ctx, d, d.ring.name())) return *o2;
    return pass();
  });
  if (o.verdict != Verdict::Pass) return o;
  if (applicable == 0) return not_applicable("L(s,t,R) is CDelta for some (s,t)", o.detail);
  return o;
}

Outcome example_3_6_finite(CheckContext& ctx) {
  const FiniteRing& R = ctx.ring();
  if (!ctx.analysis().is_commutative()) return not_applicable("R is commutative");
  if (R.order() == 1) return not_applicable("R is nonzero");
  FiniteRing r = R;
  const CentralParams p{R.one(), R.one()};
  auto l = ctx.derived("L" + pair_label(R, p), [r, p](const BuildOptions& o) { return lst_ring(p, r, o); });
  if (!l) return not_applicable(kCapHypothesis);
  const Index one = R.one(), two = scalar(R, 2);
  const auto x = matrix_element(l->ring, 3,
                                {{{0, 0}, one}, {{1, 0}, two}, {{1, 1}, two}, {{1, 2}, one}, {{2, 2}, one}});
  return no_decomposition(*l, x, "[[1,0,0],[2,2,1],[0,0,1]]");
}

Outcome prop_3_7(CheckContext& ctx) {
  const FiniteRing& R = ctx.ring();
  FiniteRing r = R;
  const CentralParams p{R.zero(), R.zero()};
  auto l = ctx.derived("L" + pair_label(R, p), [r, p](const BuildOptions& o) { return lst_ring(p, r, o); });
  auto cube = ctx.derived("R^3", [r](const BuildOptions& o) {
    const std::vector<FiniteRing> f{r, r, r};
    return direct_product(f, o);
  });
  if (!l || !cube) return not_applicable(kCapHypothesis);
  const FiniteRing &L = l->ring, &P = cube->ring;
  std::vector<Index> image(L.order());
  for (Index x = 0; x < L.order(); ++x) {
    const auto c = L.coords(x);
    image[x] = *P.find(std::vector<Index>{c[0], c[4], c[8]});
  }
  if (!check_isomorphism(RingMap{L, P, image})) {
    FiniteRing lr = L, pr = P;
    Index a = 0, b = 0;
    if (auto v = find_homomorphism_violation(L, P, image)) std::tie(a, b) = *v;
    return failure({W("left operand", L, a), W("right operand", L, b)},
                   [lr, pr, image, a, b] { return !check_isomorphism(RingMap{lr, pr, image}); },
                   "the diagonal map L(0,0,R) -> R^3 is not an isomorphism");
  }
  if (auto o = compare_cdelta(ctx, *l, L.name())) return *o;
  return pass("diagonal map is an isomorphism onto " + P.name());
}

Outcome thm_3_9(CheckContext& ctx) {
  return per_pair(ctx, "H", build_h, [&](const DerivedRing& d) {
    if (auto o = compare_cdelta(ctx, d, d.ring.name())) return *o;
    return pass();
  });
}

DerivedPtr k_ring(CheckContext& ctx, Index s) {
  FiniteRing r = ctx.ring();
  return ctx.derived("K" + std::to_string(s), [r, s](const BuildOptions& o) { return generalized_matrix(s, r, o); });
}

Outcome prop_3_10(CheckContext& ctx) {
  const auto& an = ctx.analysis();
  if (!an.is_commutative()) return not_applicable("R is commutative");
  auto k = k_ring(ctx, ctx.ring().zero());
  if (!k) return not_applicable(kCapHypothesis);
  const FiniteRing& K = k->ring;
  for (Index x = 0; x < K.order(); ++x) {
    const auto c = K.coords(x);  // a, x, y, b
    const bool scalar_m = c[1] == ctx.ring().zero() && c[2] == ctx.ring().zero() && c[0] == c[3];
    const bool unit = an.units().contains(c[0]) && an.units().contains(c[3]);
    const bool delta = an.delta().contains(c[0]) && an.delta().contains(c[3]);
    const char* what = nullptr;
    if (scalar_m != k->analysis.center().contains(x)) what = "center";
    else if (unit != k->analysis.units().contains(x)) what = "units";
    else if (delta != k->analysis.delta().contains(x)) what = "Delta";
    if (!what) continue;
    FiniteRing kr = K, r = ctx.ring();
    return failure({W("element", K, x)},
                   [kr, r, x] {
                     const auto cc = kr.coords(x);
                     const bool s = cc[1] == r.zero() && cc[2] == r.zero() && cc[0] == cc[3];
                     const bool u = replay::is_unit(r, cc[0]) && replay::is_unit(r, cc[3]);
                     const bool d = replay::in_delta(r, cc[0]) && replay::in_delta(r, cc[3]);
                     return s != replay::is_central(kr, x) || u != replay::is_unit(kr, x) || d != replay::in_delta(kr, x);
                   },
                   std::string("the ") + what + " of K(0, R) differs from its diagonal description");
  }
  return pass("on " + K.name());
}

Outcome prop_3_11(CheckContext& ctx) {
  auto k = k_ring(ctx, ctx.ring().zero());
  if (!k) return not_applicable(kCapHypothesis);
  FiniteRing kr = k->ring;
  return transfer(ctx, {{"D2(K0)", [kr](const BuildOptions& o) {
                           return special_matrix_family({FamilyKind::Dn, 2, 0, 0}, kr, o);
                         }}});
}

Outcome example_3_12_finite(CheckContext& ctx) {
  const FiniteRing& R = ctx.ring();
  if (!ctx.analysis().is_commutative()) return not_applicable("R is commutative");
  if (R.order() == 1) return not_applicable("R is nonzero");
  auto k = k_ring(ctx, R.zero());
  if (!k) return not_applicable(kCapHypothesis);
  const auto x = k->ring.find(std::vector<Index>{R.one(), R.zero(), R.zero(), R.zero()});
  return no_decomposition(*k, x, "[[1,0],[0,0]]");
}

DerivedPtr triv(CheckContext& ctx) {
  FiniteRing r = ctx.ring();
  return ctx.derived("Triv", [r](const BuildOptions& o) { return trivial_extension(r, o); });
}

Outcome prop_3_15(CheckContext& ctx) {
  auto t = triv(ctx);
  if (!t) return not_applicable(kCapHypothesis);
  const auto& an = ctx.analysis();
  const FiniteRing& T = t->ring;
  for (Index x = 0; x < T.order(); ++x) {
    const auto c = T.coords(x);  // r, m
    if (an.delta().contains(c[0]) == t->analysis.delta().contains(x) &&
        an.units().contains(c[0]) == t->analysis.units().contains(x))
      continue;
    FiniteRing tr = T, r = ctx.ring();
    return failure({W("element", T, x)},
                   [tr, r, x] {
                     const Index a = tr.coords(x)[0];
                     return replay::in_delta(r, a) != replay::in_delta(tr, x) ||
                            replay::is_unit(r, a) != replay::is_unit(tr, x);
                   },
                   "Delta or the units of T(R, R) differ from T(Delta(R), R) or T(U(R), R)");
  }
  // Both directions: the converse hypothesis (central elements commute with
  // the module) holds for M = R.
  if (auto o = compare_cdelta(ctx, *t, T.name())) return *o;
  return pass();
}

Outcome cor_3_16(CheckContext& ctx) {
  auto t = triv(ctx);
  if (!t) return not_applicable(kCapHypothesis);
  if (auto o = compare_cdelta(ctx, *t, t->ring.name())) return *o;
  if (!ctx.analysis().is_commutative()) return pass();
  FiniteRing r = ctx.ring();
  auto p = ctx.derived("R[x]/x^2", [r](const BuildOptions& o) {
    const std::vector<Index> m{r.zero(), r.zero(), r.one()};
    return poly_quotient(r, m, o);
  });
  if (!p) return pass();
  if (auto o = identity_isomorphism(t->ring, p->ring, "T(R, R) vs R[x]/(x^2)")) return *o;
  return pass("T(R, R) = R[x]/(x^2) by coefficients");
}

Outcome prop_3_17(CheckContext& ctx) {
  const FiniteRing& R = ctx.ring();
  const auto& an = ctx.analysis();
  std::string used, skipped;
  for (const auto& endo : endomorphisms(R))
    for (std::size_t n : {2, 3}) {
      FiniteRing r = R;
      RingMap alpha = endo.map;
      const std::string key = "TSkew" + std::to_string(n) + endo.label;
      auto t = ctx.derived(key, [r, n, alpha, label = endo.label](const BuildOptions& o) {
        return skew_triangular(n, r, alpha, label, o);
      });
      if (!t) {
        skipped += (skipped.empty() ? "" : ", ") + key;
        continue;
      }
      used += (used.empty() ? "" : ", ") + t->ring.name();
      // Delta is exactly the set with a_0 in Delta(R).
      const FiniteRing& T = t->ring;
      for (Index x = 0; x < T.order(); ++x) {
        if (an.delta().contains(T.coords(x)[0]) == t->analysis.delta().contains(x)) continue;
        FiniteRing tr = T;
        return failure({W("element", T, x)},
                       [tr, r, x] { return replay::in_delta(r, tr.coords(x)[0]) != replay::in_delta(tr, x); },
                       "Delta(" + T.name() + ") differs from the diagonal formula");
      }
      if (auto o = compare_cdelta(ctx, *t, T.name())) return *o;
    }
  if (used.empty()) return not_applicable(kCapHypothesis);
  return pass("compared with " + used + (skipped.empty() ? "" : "; skipped " + skipped));
}

Outcome cor_3_18(CheckContext& ctx) {
  const FiniteRing& R = ctx.ring();
  std::string used;
  for (const auto& endo : endomorphisms(R)) {
    FiniteRing r = R;
    RingMap alpha = endo.map;
    auto q = ctx.derived("SkewPolyQuot2" + endo.label, [r, alpha, label = endo.label](const BuildOptions& o) {
      return skew_poly_quotient(2, r, alpha, label, o);
    });
    auto t = ctx.derived("TSkew2" + endo.label, [r, alpha, label = endo.label](const BuildOptions& o) {
      return skew_triangular(2, r, alpha, label, o);
    });
    if (!q || !t) continue;
    used += (used.empty() ? "" : ", ") + endo.label;
    if (auto o = identity_isomorphism(q->ring, t->ring, q->ring.name() + " vs " + t->ring.name())) return *o;
    if (auto o = compare_cdelta(ctx, *q, q->ring.name())) return *o;
  }
  if (used.empty()) return not_applicable(kCapHypothesis);
  return pass("coefficient map is an isomorphism for alpha in " + used);
}

Outcome cor_3_19(CheckContext& ctx) {
  const FiniteRing& R = ctx.ring();
  std::string used;
  for (std::size_t n : {2, 3}) {
    FiniteRing r = R;
    RingMap alpha = identity_map(R);
    auto q = ctx.derived("SkewPolyQuot" + std::to_string(n) + "id", [r, n, alpha](const BuildOptions& o) {
      return skew_poly_quotient(n, r, alpha, "id", o);
    });
    if (!q) continue;
    used += (used.empty() ? "" : ", ") + q->ring.name();
    if (auto o = compare_cdelta(ctx, *q, q->ring.name())) return *o;
    if (!ctx.analysis().is_commutative()) continue;
    auto p = ctx.derived("PolyQuot" + std::to_string(n), [r, n](const BuildOptions& o) {
      std::vector<Index> m(n + 1, r.zero());
      m[n] = r.one();
      return poly_quotient(r, m, o);
    });
    if (p)
      if (auto o = identity_isomorphism(q->ring, p->ring, "rewriting vs reduction construction of R[x]/(x^n)"))
        return *o;
  }
  if (used.empty()) return not_applicable(kCapHypothesis);
  return pass("compared with " + used);
}

Outcome cor_dt(CheckContext& ctx) {
  FiniteRing r = ctx.ring();
  auto dt = ctx.derived("DT", [r](const BuildOptions& o) { return dt_ring(r, o); });
  if (!dt) return not_applicable(kCapHypothesis);
  auto tt = ctx.derived("Triv(Triv)", [r](const BuildOptions& o) {
    return trivial_extension(trivial_extension(r, o), o);
  });
  std::string detail;
  if (tt) {
    if (auto o = identity_isomorphism(dt->ring, tt->ring, "DT(R) vs T(T(R,R),T(R,R))")) return *o;
    detail = "DT(R) = T(T(R,R),T(R,R)) by coordinates";
  }
  if (ctx.analysis().is_commutative()) {
    auto p = ctx.derived("R[x,y]/(x^2,y^2)", [r](const BuildOptions& o) {
      const std::vector<Index> m{r.zero(), r.zero(), r.one()};
      FiniteRing x = poly_quotient(r, m, o);
      const std::vector<Index> my{x.zero(), x.zero(), x.one()};
      return poly_quotient(x, my, o);
    });
    if (p) {
      // (a, m, b, n) = a + m x + b y + n xy, with y the outer variable.
      const FiniteRing &D = dt->ring, &P = p->ring;
      std::vector<Index> image(D.order());
      for (Index x = 0; x < D.order(); ++x) {
        const auto c = D.coords(x);
        const FiniteRing& inner = P.layout().slot(0);
        const Index lo = *inner.find(std::vector<Index>{c[0], c[1]});
        const Index hi = *inner.find(std::vector<Index>{c[2], c[3]});
        image[x] = *P.find(std::vector<Index>{lo, hi});
      }
      if (!check_isomorphism(RingMap{D, P, image})) {
        FiniteRing dr = D, pr = P;
        return failure({W("identity", D, D.one())}, [dr, pr, image] { return !check_isomorphism(RingMap{dr, pr, image}); },
                       "DT(R) is not isomorphic to R[x,y]/(x^2,y^2) by coefficients");
      }
      if (auto o = compare_cdelta(ctx, *p, P.name())) return *o;
      detail += std::string(detail.empty() ? "" : "; ") + "DT(R) = R[x,y]/(x^2,y^2)";
    }
  }
  if (auto o = compare_cdelta(ctx, *dt, dt->ring.name())) return *o;
  return pass(detail);
}

Outcome cor_3_20(CheckContext& ctx) {
  const FiniteRing& r = ctx.ring();
  return transfer(ctx, {{"Sn2", family_builder(r, {FamilyKind::Sn, 2, 0, 0})},
                        {"Sn3", family_builder(r, {FamilyKind::Sn, 3, 0, 0})}});
}

Outcome cor_3_21(CheckContext& ctx) {
  const FiniteRing& r = ctx.ring();
  return transfer(ctx, {{"Snm2_3", family_builder(r, {FamilyKind::Snm, 2, 3, 0})},
                        {"Tnm2_3", family_builder(r, {FamilyKind::Tnm, 2, 3, 0})},
                        {"Un4", family_builder(r, {FamilyKind::Un, 4, 0, 0})}});
}

/// Checks that the given words (ring elements) are zero / nonzero, and that
/// R-linear combinations of `basis` cover the ring exactly once.
std::optional<Outcome> presentation(const DerivedRing& d, const std::string& what,
                                    const std::vector<std::pair<std::string, Index>>& zero_words,
                                    const std::vector<Index>& basis) {
  const FiniteRing& X = d.ring;
  for (const auto& [name, w] : zero_words) {
    if (w == X.zero()) continue;
    FiniteRing xr = X;
    return failure({W(name, X, w)}, [xr, w = w] { return w != xr.zero(); }, what + ": relation " + name + " = 0 fails");
  }
  // Coefficients act through the scalar matrices a * I.
  const FiniteRing& base = X.layout().slot(0);
  const std::size_t n = X.layout().rows;
  std::vector<Index> scalars(base.order());
  for (Index a = 0; a < base.order(); ++a) {
    std::vector<Index> c(n * n, base.zero());
    for (std::size_t i = 0; i < n; ++i) c[i * n + i] = a;
    scalars[a] = *X.find(c);
  }
  Subset hit = Subset::empty_of(X);
  std::vector<Index> coeff(basis.size(), 0);
  std::size_t combos = 0;
  for (;;) {
    Index v = X.zero();
    for (std::size_t i = 0; i < basis.size(); ++i) v = X.add(v, X.mul(scalars[coeff[i]], basis[i]));
    hit.insert(v);
    ++combos;
    std::size_t k = basis.size();
    while (k > 0 && ++coeff[k - 1] == base.order()) coeff[--k] = 0;
    if (k == 0) break;
  }
  if (combos == X.order() && hit.count() == X.order()) return std::nullopt;
  FiniteRing xr = X;
  return failure({W("identity", X, X.one())}, [xr, combos] { return combos != xr.order(); },
                 what + ": the normal words do not form a basis");
}

Outcome cor_3_23(CheckContext& ctx) {
  const FiniteRing& R = ctx.ring();
  std::string used;
  auto at = [](const FiniteRing& X, std::vector<std::pair<std::size_t, std::size_t>> ones) {
    const FiniteRing& base = X.layout().slot(0);
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, Index>> entries;
    for (auto p : ones) entries.push_back({p, base.one()});
    return *matrix_element(X, X.layout().rows, entries);
  };
  auto pw = [](const FiniteRing& X, Index a, std::size_t k) {
    Index p = X.one();
    for (std::size_t i = 0; i < k; ++i) p = X.mul(p, a);
    return p;
  };

  // A_{2,3} = R[x, y | x^2 = xy = y^3 = 0] realized as T_{2,3}(R).
  if (auto t = ctx.derived("Tnm2_3", family_builder(R, {FamilyKind::Tnm, 2, 3, 0}))) {
    const FiniteRing& X = t->ring;
    const Index x = at(X, {{0, 1}}), y = at(X, {{2, 3}, {3, 4}});
    if (auto o = presentation(*t, "T(2,3)", {{"x^2", pw(X, x, 2)}, {"xy", X.mul(x, y)}, {"yx", X.mul(y, x)}, {"y^3", pw(X, y, 3)}},
                              {X.one(), x, y, X.mul(y, y)}))
      return *o;
    if (auto o = compare_cdelta(ctx, *t, X.name())) return *o;
    used += X.name();
  }
  // B_{n,m} = R<x, y | x^n = xy = y^m = 0>: in the matrix form S_{2,3}(R) the
  // relations hold with x the d-shift and y the b-shift (exponents 3 and 2).
  if (auto s = ctx.derived("Snm2_3", family_builder(R, {FamilyKind::Snm, 2, 3, 0}))) {
    const FiniteRing& X = s->ring;
    const Index x = at(X, {{1, 2}, {2, 3}}), y = at(X, {{0, 1}});
    std::vector<Index> basis;
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t i = 0; i < 3; ++i) basis.push_back(X.mul(pw(X, y, j), pw(X, x, i)));
    if (auto o = presentation(*s, "S(2,3)", {{"x^3", pw(X, x, 3)}, {"xy", X.mul(x, y)}, {"y^2", pw(X, y, 2)}}, basis))
      return *o;
    if (auto o = compare_cdelta(ctx, *s, X.name())) return *o;
    used += (used.empty() ? "" : ", ") + X.name();
  }
  // C_4 = R<x, y | x^2 = y^2 = xyx = 0> realized as U_4(R) with x the
  // c-shift and y the b-shift.
  if (auto u = ctx.derived("Un4", family_builder(R, {FamilyKind::Un, 4, 0, 0}))) {
    const FiniteRing& X = u->ring;
    const Index x = at(X, {{1, 2}}), y = at(X, {{0, 1}, {2, 3}});
    const Index xy = X.mul(x, y), yx = X.mul(y, x);
    if (auto o = presentation(*u, "U(4)", {{"x^2", pw(X, x, 2)}, {"y^2", pw(X, y, 2)}, {"xyx", X.mul(xy, x)}},
                              {X.one(), x, y, xy, yx, X.mul(yx, y)}))
      return *o;
    if (auto o = compare_cdelta(ctx, *u, X.name())) return *o;
    used += (used.empty() ? "" : ", ") + X.name();
  }
  if (used.empty()) return not_applicable(kCapHypothesis);
  return pass("presentations verified on " + used);
}

// ---------------------------------------------------------------------------
// Catalog

struct Entry {
  const char* id;
  const char* summary;
  Outcome (*run)(CheckContext&);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e{
      {"lemma_2_2", "Adding a Delta element to a unit gives a unit.", lemma_2_2},
      {"lemma_2_3", "Delta, J and the matrices over J(R) coincide in M(2, R).", lemma_2_3},
      {"lemma_2_7", "An ideal I inside J(R) with Delta(R/I) = 0 equals both Delta(R) and J(R).", lemma_2_7},
      {"cor_2_8", "Delta(R) = J(R) exactly when Delta(R/J(R)) is zero.", cor_2_8},
      {"cor_2_9", "For I inside J(R), Delta(R/I) is the image of Delta(R).", cor_2_9},
      {"example_2_10", "Commutative, radical, Delta-equal and CJ rings are CDelta.", example_2_10},
      {"prop_4_3_i", "Quotients of a CDelta ring by ideals inside J(R) are CDelta.", prop_4_3_i},
      {"prop_4_3_ii", "In a CDelta ring every commutator lies in Delta(R).", prop_4_3_ii},
      {"prop_4_3_iii", "A CDelta ring is Dedekind-finite.", prop_4_3_iii},
      {"prop_4_3_iv", "In a CDelta ring a^2 in Delta(R) forces a in Delta(R).", prop_4_3_iv},
      {"prop_4_3_v", "A CDelta ring is CU.", prop_4_3_v},
      {"prop_4_3_vi", "In a CDelta ring nilpotents lie in J(R) and in Delta(R).", prop_4_3_vi},
      {"prop_4_3_vii", "In a CDelta ring a^2 in J(R) forces a in J(R), so R/J(R) is reduced.", prop_4_3_vii},
      {"prop_4_3_viii", "Every corner ring of a CDelta ring is CDelta.", prop_4_3_viii},
      {"cor_exchange_clean", "An exchange CDelta ring is clean.", cor_exchange_clean},
      {"prop_2_14", "A CDelta ring has unique decompositions iff Delta(R) meets C(R) only in 0.", prop_2_14},
      {"prop_2_15", "Units, Delta and the center of R pass to the subring generated by C(R) and Delta(R).",
       prop_2_15},
      {"cor_2_16", "The subring generated by C(R) and Delta(R) is CDelta.", cor_2_16},
      {"remark_2_18", "A DeltaU ring is CDelta iff it is CU.", remark_2_18},
      {"prop_2_19", "Having a CDelta decomposition is invariant under conjugation by units.", prop_2_19},
      {"lemma_2_22", "UJ gives Nil in J; UU gives J and Delta in Nil; DeltaU gives Nil in Delta.", lemma_2_22},
      {"cor_2_23", "Transfers among CDelta, CN and CJ under the UU, DeltaU and UJ conditions.", cor_2_23},
      {"lemma_4_1", "For commutative rings CN, CJ and CDelta agree.", lemma_4_1},
      {"cor_4_4", "For finite rings CN, CJ and CDelta agree.", cor_4_4},
      {"lemma_4_5", "A semipotent CN ring is CJ.", lemma_4_5},
      {"cor_4_8", "A semipotent CN ring has commutative R/J(R).", cor_4_8},
      {"lemma_4_6", "A CN ring is abelian.", lemma_4_6},
      {"lemma_4_9", "Every corner ring of a CN ring is CN.", lemma_4_9},
      {"cor_4_7", "An exchange CN ring is strongly clean.", cor_4_7},
      {"lemma_2_20", "Over a commutative ring, A in M(2, R) decomposes iff A - cI has entries in J(R) for some c.",
       lemma_2_20},
      {"cor_2_21", "In M(2, R), decomposability is invariant under conjugation by invertible matrices.", cor_2_21},
      {"remark_mn", "A full matrix ring of size at least 2 over a nonzero ring is not CDelta.", remark_mn},
      {"prop_2_25", "Over a commutative ring, T(2, R) is CDelta iff any two elements have a common shift into Delta(R).",
       prop_2_25},
      {"example_2_26_finite", "diag(4, 5) has no CDelta decomposition in T(2, R) for commutative nonzero R.",
       example_2_26_finite},
      {"prop_3_1", "R is CDelta iff Dn, Vn, DnK and VnK over R are (n = 3, 3, 4, 4 with k = 2).", prop_3_1},
      {"prop_3_2", "A direct product is CDelta iff each factor is; Delta and the center are componentwise.", prop_3_2},
      {"lemma_3_3", "Delta of L(s,t,R) is the set of matrices with diagonal in Delta(R).", lemma_3_3},
      {"lemma_3_8", "Delta of H(s,t,R) is the set of matrices with diagonal in Delta(R).", lemma_3_8},
      {"prop_3_10", "For commutative R, K(0, R) has scalar center and units and Delta read off the diagonal.",
       prop_3_10},
      {"prop_3_4", "R is CDelta iff V2(L(s,t,R)) is; L(s,t,R) is CDelta under the stated central condition.",
       prop_3_4},
      {"cor_3_5", "If L(s,t,R) is CDelta then so is R.", cor_3_5},
      {"example_3_6_finite", "[[1,0,0],[2,2,1],[0,0,1]] has no CDelta decomposition in L(1,1,R).", example_3_6_finite},
      {"prop_3_7", "L(0,0,R) is isomorphic to R^3 through its diagonal and is CDelta iff R is.", prop_3_7},
      {"thm_3_9", "R is CDelta iff H(s,t,R) is.", thm_3_9},
      {"prop_3_11", "R is CDelta iff D2(K(0, R)) is.", prop_3_11},
      {"example_3_12_finite", "[[1,0],[0,0]] has no CDelta decomposition in K(0, R) for commutative nonzero R.",
       example_3_12_finite},
      {"prop_3_15", "Delta and the units of T(R, R) are read off the first coordinate; T(R, R) is CDelta iff R is.",
       prop_3_15},
      {"cor_3_16", "T(R, R) is CDelta iff R is, and equals R[x]/(x^2) for commutative R.", cor_3_16},
      {"prop_3_17", "T_n(R, alpha) has Delta given by the diagonal and is CDelta iff R is (n = 2, 3).", prop_3_17},
      {"cor_3_18", "R[x; alpha]/(x^2) is isomorphic to T_2(R, alpha) and is CDelta iff R is.", cor_3_18},
      {"cor_3_19", "R[x]/(x^n) is CDelta iff R is (n = 2, 3).", cor_3_19},
      {"cor_dt", "DT(R) is isomorphic to T(T(R,R),T(R,R)) and R[x,y]/(x^2,y^2) and is CDelta iff R is.", cor_dt},
      {"cor_3_20", "R is CDelta iff Sn(R) is (n = 2, 3).", cor_3_20},
      {"cor_3_21", "R is CDelta iff S(2,3), T(2,3) and U(4) over R are.", cor_3_21},
      {"cor_3_23", "The matrix forms satisfy the defining relations of A, B and C with matching bases, and transfer CDelta.",
       cor_3_23},
  };
  return e;
}

const Entry& find_entry(std::string_view id) {
  for (const auto& e : entries())
    if (id == e.id) return e;
  throw Error(ErrorCode::UnknownCheck, "unknown check '" + std::string(id) + "'");
}

}  // namespace

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> info = [] {
    std::vector<CheckInfo> out;
    for (const auto& e : entries()) out.push_back({e.id, e.summary});
    return out;
  }();
  return info;
}

const std::vector<ManifestEntry>& statement_manifest() {
  static const std::vector<ManifestEntry> m = [] {
    std::vector<ManifestEntry> out;
    for (const auto& e : entries()) out.push_back({e.id, e.id, ""});
    const std::vector<ManifestEntry> extra{
        {"lemma_4_2", "cor_4_4", "the Artinian statement is exercised in its finite form"},
        {"lemma_3_22", "cor_3_23", "only the matrix sides of the isomorphisms are realized"},
        {"prop_2_13", "", "out of scope: skew power series rings are infinite"},
        {"cor_2_13", "", "out of scope: power series rings are infinite"},
        {"prop_4_12", "", "out of scope: skew polynomial rings are infinite"},
        {"thm_4_10", "", "out of scope: skew polynomial rings are infinite"},
        {"cor_4_10", "", "out of scope: polynomial rings are infinite"},
        {"thm_4_11", "", "out of scope: concerns R[x] and the upper nilradical"},
        {"example_3_24", "", "out of scope: needs noncommutative division rings, none of which are finite"},
        {"problem_4_1", "", "open problem: explored through group rings, nothing is asserted"},
        {"problem_4_2", "", "open problem: explored through the feebly Delta-clean classifiers"},
    };
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
  }();
  return m;
}

CheckResult run_check(std::string_view id, CheckContext& context) {
  const Entry& e = find_entry(id);
  const auto start = std::chrono::steady_clock::now();
  Outcome o = e.run(context);
  const auto stop = std::chrono::steady_clock::now();
  CheckResult r;
  r.check_id = e.id;
  r.ring_name = context.ring().name();
  r.verdict = o.verdict;
  r.hypothesis = std::move(o.hypothesis);
  r.detail = std::move(o.detail);
  r.witness = std::move(o.witness);
  r.replay = std::move(o.replay);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

CheckResult run_check(std::string_view id, const FiniteRing& ring, const CheckOptions& options) {
  find_entry(id);
  CheckContext ctx(ring, options);
  return run_check(id, ctx);
}

std::size_t SuiteReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [v](const CheckResult& r) { return r.verdict == v; }));
}

SuiteReport run_suite(const std::vector<CorpusEntry>& corpus, const std::vector<std::string>& selection,
                      const CheckOptions& options, std::size_t threads) {
  SuiteReport report;
  if (selection.empty()) {
    for (const auto& e : entries()) report.checks.push_back(e.id);
  } else {
    for (const auto& id : selection) report.checks.push_back(find_entry(id).id);
  }
  for (const auto& c : corpus) report.rings.push_back(c.name);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  const std::size_t nr = corpus.size(), nc = report.checks.size();
  std::vector<std::unique_ptr<CheckContext>> contexts(nr);
  std::vector<std::optional<SuiteError>> build_errors(nr);
  std::vector<std::optional<CheckResult>> results(nr * nc);
  std::vector<std::optional<SuiteError>> check_errors(nr * nc);

  // Rings are processed one at a time so at most one large context (and its
  // derived rings) is alive; checks on a ring run in parallel.
  for (std::size_t i = 0; i < nr; ++i) {
    try {
      contexts[i] = std::make_unique<CheckContext>(corpus[i].build(), options);
    } catch (const Error& e) {
      build_errors[i] = SuiteError{corpus[i].name, "", std::string(to_string(e.code())), e.what()};
      continue;
    } catch (const std::exception& e) {
      build_errors[i] = SuiteError{corpus[i].name, "", "InternalInconsistency", e.what()};
      continue;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t j; (j = next.fetch_add(1)) < nc;) {
        try {
          results[i * nc + j] = run_check(report.checks[j], *contexts[i]);
        } catch (const Error& e) {
          check_errors[i * nc + j] = SuiteError{corpus[i].name, report.checks[j], std::string(to_string(e.code())), e.what()};
        } catch (const std::exception& e) {
          check_errors[i * nc + j] = SuiteError{corpus[i].name, report.checks[j], "InternalInconsistency", e.what()};
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      for (std::size_t t = 1; t < std::min(threads, nc); ++t) pool.emplace_back(worker);
      worker();
    }
    contexts[i].reset();
  }

  for (const auto& id : report.checks) report.tallies.push_back({id});
  for (std::size_t i = 0; i < nr; ++i) {
    if (build_errors[i]) {
      report.errors.push_back(*build_errors[i]);
      continue;
    }
    for (std::size_t j = 0; j < nc; ++j) {
      auto& tally = report.tallies[j];
      if (check_errors[i * nc + j]) {
        report.errors.push_back(*check_errors[i * nc + j]);
        ++tally.error;
        continue;
      }
      CheckResult& r = *results[i * nc + j];
      r.ring_name = corpus[i].name;
      switch (r.verdict) {
        case Verdict::Pass: ++tally.pass; break;
        case Verdict::Fail: ++tally.fail; break;
        case Verdict::NotApplicable: ++tally.not_applicable; break;
      }
      report.results.push_back(std::move(r));
    }
  }
  return report;
}

}  // namespace cdelta
