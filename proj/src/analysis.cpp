#include "cdelta/analysis.hpp"

#include <array>
#include <mutex>

#include "cdelta/constructors.hpp"

namespace cdelta {
namespace {

template <class T>
class Lazy {
 public:
  template <class F>
  const T& get(F&& compute) const {
    std::call_once(once_, [&] { value_.emplace(compute()); });
    return *value_;
  }

 private:
  mutable std::once_flag once_;
  mutable std::optional<T> value_;
};

constexpr std::array<std::pair<std::string_view, DecompositionKind>, 8> kKindNames{{
    {"cdelta", DecompositionKind::CDelta},
    {"cj", DecompositionKind::CJ},
    {"cn", DecompositionKind::CN},
    {"cu", DecompositionKind::CU},
    {"clean", DecompositionKind::Clean},
    {"strongly-clean", DecompositionKind::StronglyClean},
    {"feebly-delta-clean", DecompositionKind::FeeblyDeltaClean},
    {"strongly-feebly-delta-clean", DecompositionKind::StronglyFeeblyDeltaClean},
}};

}  // namespace

std::string_view to_string(DecompositionKind kind) noexcept {
  for (const auto& [name, k] : kKindNames)
    if (k == kind) return name;
  return "?";
}

DecompositionKind parse_kind(std::string_view text) {
  for (const auto& [name, k] : kKindNames)
    if (name == text) return k;
  throw Error(ErrorCode::UnknownKind, "unknown decomposition kind '" + std::string(text) + "'");
}

std::vector<DecompositionKind> all_decomposition_kinds() {
  std::vector<DecompositionKind> out;
  for (const auto& entry : kKindNames) out.push_back(entry.second);
  return out;
}

Subset sumset(const FiniteRing& ring, const Subset& a, const Subset& b) {
  Subset out = Subset::empty_of(ring);
  a.for_each([&](Index x) { b.for_each([&](Index y) { out.insert(ring.add(x, y)); }); });
  return out;
}

bool is_division_ring(const FiniteRing& ring) {
  if (ring.order() == 1) return false;
  for (Index a = 0; a < ring.order(); ++a) {
    if (a == ring.zero()) continue;
    bool unit = false;
    for (Index b = 0; b < ring.order() && !unit; ++b)
      unit = ring.mul(a, b) == ring.one() && ring.mul(b, a) == ring.one();
    if (!unit) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

struct RingAnalysis::Cache {
  Lazy<std::vector<Index>> inverse;  // kNone for non-units
  Lazy<Subset> units, jacobson, delta, center, nilpotents, idempotents, nil_star;
  std::array<Lazy<Subset>, 8> decomposable;  // per kind
  Lazy<std::vector<std::pair<Index, Index>>> orthogonal_pairs;
  Lazy<bool> commutative, uniquely, abelian, dedekind, exchange, semipotent, local;
  Lazy<std::optional<Index>> exchange_failure, semipotent_failure;
  Lazy<std::optional<std::pair<Index, Index>>> dedekind_failure;
  Lazy<PropertyReport> report;
};

namespace {
constexpr Index kNone = ~Index{0};
}

RingAnalysis::RingAnalysis(FiniteRing ring) : ring_(std::move(ring)), cache_(std::make_unique<Cache>()) {}
RingAnalysis::~RingAnalysis() = default;

const Subset& RingAnalysis::units() const {
  return cache_->units.get([&] {
    Subset s = Subset::empty_of(ring_);
    const auto& inv = cache_->inverse.get([&] {
      const Index n = static_cast<Index>(ring_.order());
      std::vector<Index> out(n, kNone);
      for (Index a = 0; a < n; ++a) {
        if (out[a] != kNone) continue;
        for (Index b = 0; b < n; ++b)
          if (ring_.mul(a, b) == ring_.one() && ring_.mul(b, a) == ring_.one()) {
            out[a] = b;
            out[b] = a;
            break;
          }
      }
      return out;
    });
    for (Index a = 0; a < ring_.order(); ++a)
      if (inv[a] != kNone) s.insert(a);
    return s;
  });
}

Index RingAnalysis::inverse(Index u) const {
  units();
  const auto& inv = cache_->inverse.get([] { return std::vector<Index>{}; });
  if (u >= inv.size() || inv[u] == kNone)
    throw Error(ErrorCode::InvalidParameter, ring_.label(u) + " is not a unit", {u});
  return inv[u];
}

const Subset& RingAnalysis::jacobson() const {
  return cache_->jacobson.get([&] {
    const Subset& U = units();
    const Index n = static_cast<Index>(ring_.order());
    Subset left = Subset::empty_of(ring_), right = Subset::empty_of(ring_);
    for (Index a = 0; a < n; ++a) {
      bool l = true, r = true;
      for (Index x = 0; x < n && (l || r); ++x) {
        l = l && U.contains(ring_.sub(ring_.one(), ring_.mul(x, a)));
        r = r && U.contains(ring_.sub(ring_.one(), ring_.mul(a, x)));
      }
      if (l) left.insert(a);
      if (r) right.insert(a);
    }
    if (!(left == right)) {
      const Index w = left.first_not_in(right).value_or(right.first_not_in(left).value_or(0));
      throw Error(ErrorCode::InternalInconsistency,
                  "left and right quasi-regularity disagree on " + ring_.name(), {w});
    }
    try {
      require_ideal(ring_, left);
    } catch (const Error& e) {
      throw Error(ErrorCode::InternalInconsistency, "computed radical of " + ring_.name() + " is not an ideal",
                  e.witness());
    }
    return left;
  });
}

const Subset& RingAnalysis::delta() const {
  return cache_->delta.get([&] {
    const Subset& U = units();
    const auto us = U.indices();
    Subset s = Subset::empty_of(ring_);
    for (Index a = 0; a < ring_.order(); ++a) {
      bool ok = true;
      for (Index u : us)
        if (!U.contains(ring_.sub(ring_.one(), ring_.mul(u, a)))) {
          ok = false;
          break;
        }
      if (ok) s.insert(a);
    }
    return s;
  });
}

const Subset& RingAnalysis::center() const {
  return cache_->center.get([&] {
    Subset s = Subset::empty_of(ring_);
    for (Index a = 0; a < ring_.order(); ++a)
      if (ring_.is_central(a)) s.insert(a);
    return s;
  });
}

const Subset& RingAnalysis::nilpotents() const {
  return cache_->nilpotents.get([&] {
    // a is nilpotent iff a^k = 0 for some k <= order, iff a^(2^j) = 0 once 2^j >= order.
    std::size_t squarings = 0;
    while ((std::size_t{1} << squarings) < ring_.order()) ++squarings;
    Subset s = Subset::empty_of(ring_);
    for (Index a = 0; a < ring_.order(); ++a) {
      Index p = a;
      for (std::size_t i = 0; i < squarings && p != ring_.zero(); ++i) p = ring_.mul(p, p);
      if (p == ring_.zero()) s.insert(a);
    }
    return s;
  });
}

const Subset& RingAnalysis::idempotents() const {
  return cache_->idempotents.get([&] {
    Subset s = Subset::empty_of(ring_);
    for (Index a = 0; a < ring_.order(); ++a)
      if (ring_.mul(a, a) == a) s.insert(a);
    return s;
  });
}

const Subset& RingAnalysis::nil_star() const {
  return cache_->nil_star.get([&] {
    // Least fixpoint of S = {0} u {x : x r x in S for all r}: exactly the
    // nodes of the graph x -> x r x from which every path reaches 0.
    Subset s = Subset::empty_of(ring_);
    s.insert(ring_.zero());
    const Subset& nil = nilpotents();  // strongly nilpotent implies nilpotent (take r = 1)
    for (bool changed = true; changed;) {
      changed = false;
      nil.for_each([&](Index x) {
        if (s.contains(x)) return;
        for (Index r = 0; r < ring_.order(); ++r)
          if (!s.contains(ring_.mul(ring_.mul(x, r), x))) return;
        s.insert(x);
        changed = true;
      });
    }
    try {
      require_ideal(ring_, s);
    } catch (const Error& e) {
      throw Error(ErrorCode::InternalInconsistency,
                  "strongly nilpotent elements of " + ring_.name() + " do not form an ideal", e.witness());
    }
    return s;
  });
}

// ---------------------------------------------------------------------------
// Decompositions

namespace {

const Subset& second_part(const RingAnalysis& an, DecompositionKind kind) {
  switch (kind) {
    case DecompositionKind::CDelta: return an.delta();
    case DecompositionKind::CJ: return an.jacobson();
    case DecompositionKind::CN: return an.nilpotents();
    default: return an.units();
  }
}

bool is_central_kind(DecompositionKind k) {
  return k == DecompositionKind::CDelta || k == DecompositionKind::CJ || k == DecompositionKind::CN ||
         k == DecompositionKind::CU;
}

}  // namespace

DecompositionWitness RingAnalysis::decompose(Index a, DecompositionKind kind) const {
  const FiniteRing& R = ring_;
  if (a >= R.order()) throw Error(ErrorCode::InvalidParameter, "element index out of range", {a});
  DecompositionWitness w;
  w.kind = kind;
  w.element = R.element(a);
  auto found = [&](std::initializer_list<Index> parts) {
    w.found = true;
    for (Index p : parts) w.parts.push_back(R.element(p));
    return w;
  };

  if (is_central_kind(kind)) {
    const Subset& second = second_part(*this, kind);
    std::optional<Index> hit;
    center().for_each([&](Index c) {
      if (!hit && second.contains(R.sub(a, c))) hit = c;
    });
    if (hit) return found({*hit, R.sub(a, *hit)});
    return w;
  }

  if (kind == DecompositionKind::Clean || kind == DecompositionKind::StronglyClean) {
    const Subset& U = units();
    std::optional<Index> hit;
    idempotents().for_each([&](Index e) {
      if (hit || !U.contains(R.sub(a, e))) return;
      if (kind == DecompositionKind::StronglyClean && R.mul(a, e) != R.mul(e, a)) return;
      hit = e;
    });
    if (hit) return found({*hit, R.sub(a, *hit)});
    return w;
  }

  // a = d + e - f; for fixed d and e the only candidate is f = d + e - a.
  const Subset& Id = idempotents();
  const bool strong = kind == DecompositionKind::StronglyFeeblyDeltaClean;
  std::optional<std::array<Index, 3>> hit;
  delta().for_each([&](Index d) {
    if (hit) return;
    Id.for_each([&](Index e) {
      if (hit) return;
      const Index f = R.sub(R.add(d, e), a);
      if (!Id.contains(f) || R.mul(e, f) != R.zero() || R.mul(f, e) != R.zero()) return;
      if (strong && R.mul(d, e) != R.mul(e, d) && R.mul(d, f) != R.mul(f, d)) return;
      hit = std::array<Index, 3>{d, e, f};
    });
  });
  if (hit) return found({(*hit)[0], (*hit)[1], (*hit)[2]});
  return w;
}

std::size_t RingAnalysis::count_cdelta_decompositions(Index a) const {
  std::size_t count = 0;
  const Subset& D = delta();
  center().for_each([&](Index c) {
    if (D.contains(ring_.sub(a, c))) ++count;
  });
  return count;
}

bool RingAnalysis::all_decompose(DecompositionKind kind) const { return !first_undecomposable(kind).has_value(); }

std::optional<Index> RingAnalysis::first_undecomposable(DecompositionKind kind) const {
  const auto slot = static_cast<std::size_t>(kind);
  const Subset& covered = cache_->decomposable[slot].get([&] {
    const FiniteRing& R = ring_;
    if (is_central_kind(kind)) return sumset(R, center(), second_part(*this, kind));
    if (kind == DecompositionKind::Clean) return sumset(R, idempotents(), units());
    if (kind == DecompositionKind::StronglyClean) {
      Subset s = Subset::empty_of(R);
      for (Index a = 0; a < R.order(); ++a)
        if (decompose(a, kind).found) s.insert(a);
      return s;
    }
    // Feebly kinds: union over orthogonal idempotent pairs (e, f) of D_ef + e - f,
    // where D_ef is Delta (or, for the strong kind, the part of Delta commuting with e or f).
    const auto& pairs = cache_->orthogonal_pairs.get([&] {
      std::vector<std::pair<Index, Index>> out;
      const auto ids = idempotents().indices();
      for (Index e : ids)
        for (Index f : ids)
          if (R.mul(e, f) == R.zero() && R.mul(f, e) == R.zero()) out.emplace_back(e, f);
      return out;
    });
    const bool strong = kind == DecompositionKind::StronglyFeeblyDeltaClean;
    const auto ds = delta().indices();
    Subset s = Subset::empty_of(R);
    for (const auto& [e, f] : pairs) {
      const Index shift = R.sub(e, f);
      for (Index d : ds) {
        if (strong && R.mul(d, e) != R.mul(e, d) && R.mul(d, f) != R.mul(f, d)) continue;
        s.insert(R.add(d, shift));
      }
    }
    return s;
  });
  for (Index a = 0; a < ring_.order(); ++a)
    if (!covered.contains(a)) return a;
  return std::nullopt;
}

bool witness_holds(const RingAnalysis& an, const DecompositionWitness& w) {
  const FiniteRing& R = an.ring();
  if (!w.found) return false;
  const Index a = R.index_of(w.element);
  std::vector<Index> p;
  for (const auto& e : w.parts) p.push_back(R.index_of(e));
  switch (w.kind) {
    case DecompositionKind::CDelta:
    case DecompositionKind::CJ:
    case DecompositionKind::CN:
    case DecompositionKind::CU:
      return p.size() == 2 && R.add(p[0], p[1]) == a && an.center().contains(p[0]) &&
             second_part(an, w.kind).contains(p[1]);
    case DecompositionKind::Clean:
    case DecompositionKind::StronglyClean:
      return p.size() == 2 && R.add(p[0], p[1]) == a && R.mul(p[0], p[0]) == p[0] && an.units().contains(p[1]) &&
             (w.kind == DecompositionKind::Clean || R.mul(a, p[0]) == R.mul(p[0], a));
    case DecompositionKind::FeeblyDeltaClean:
    case DecompositionKind::StronglyFeeblyDeltaClean: {
      if (p.size() != 3) return false;
      const Index d = p[0], e = p[1], f = p[2];
      const bool base = R.sub(R.add(d, e), f) == a && an.delta().contains(d) && R.mul(e, e) == e &&
                        R.mul(f, f) == f && R.mul(e, f) == R.zero() && R.mul(f, e) == R.zero();
      if (w.kind == DecompositionKind::FeeblyDeltaClean) return base;
      return base && (R.mul(d, e) == R.mul(e, d) || R.mul(d, f) == R.mul(f, d));
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Ring classes

bool RingAnalysis::is_commutative() const {
  return cache_->commutative.get([&] { return ring_.is_commutative(); });
}

bool RingAnalysis::is_uniquely_cdelta() const {
  return cache_->uniquely.get([&] {
    bool unique = true;
    for (Index a = 0; a < ring_.order() && unique; ++a) unique = count_cdelta_decompositions(a) == 1;
    if (all_decompose(DecompositionKind::CDelta)) {
      const bool trivial_meet = (delta() & center()).count() == 1;
      if (trivial_meet != unique)
        throw Error(ErrorCode::InternalInconsistency,
                    "decomposition count disagrees with the Delta/center intersection on " + ring_.name());
    }
    return unique;
  });
}

bool RingAnalysis::is_abelian() const {
  return cache_->abelian.get([&] { return idempotents().is_subset_of(center()); });
}

bool RingAnalysis::is_reduced() const { return nilpotents().count() == 1; }

std::optional<std::pair<Index, Index>> RingAnalysis::dedekind_failure() const {
  return cache_->dedekind_failure.get([&]() -> std::optional<std::pair<Index, Index>> {
    for (Index a = 0; a < ring_.order(); ++a)
      for (Index b = 0; b < ring_.order(); ++b)
        if (ring_.mul(a, b) == ring_.one() && ring_.mul(b, a) != ring_.one()) return std::pair{a, b};
    return std::nullopt;
  });
}

bool RingAnalysis::is_dedekind_finite() const { return !dedekind_failure().has_value(); }

std::optional<Index> RingAnalysis::exchange_failure() const {
  return cache_->exchange_failure.get([&]() -> std::optional<Index> {
    // For each a: some idempotent e in aR with 1 - e in (1 - a)R.
    const Subset& Id = idempotents();
    for (Index a = 0; a < ring_.order(); ++a) {
      const Index b = ring_.sub(ring_.one(), a);
      Subset aR = Subset::empty_of(ring_), bR = Subset::empty_of(ring_);
      for (Index r = 0; r < ring_.order(); ++r) {
        aR.insert(ring_.mul(a, r));
        bR.insert(ring_.mul(b, r));
      }
      bool ok = false;
      (aR & Id).for_each([&](Index e) { ok = ok || bR.contains(ring_.sub(ring_.one(), e)); });
      if (!ok) return a;
    }
    return std::nullopt;
  });
}

bool RingAnalysis::is_exchange() const { return !exchange_failure().has_value(); }

std::optional<Index> RingAnalysis::semipotent_failure() const {
  return cache_->semipotent_failure.get([&]() -> std::optional<Index> {
    // Every left ideal L outside J contains some a outside J, and Ra is inside
    // L, so principal left ideals are enough.
    const Subset& J = jacobson();
    const Subset& Id = idempotents();
    for (Index a = 0; a < ring_.order(); ++a) {
      if (J.contains(a)) continue;
      bool ok = false;
      for (Index r = 0; r < ring_.order() && !ok; ++r) {
        const Index x = ring_.mul(r, a);
        ok = x != ring_.zero() && Id.contains(x);
      }
      if (!ok) return a;
    }
    return std::nullopt;
  });
}

bool RingAnalysis::is_semipotent() const { return !semipotent_failure().has_value(); }

bool RingAnalysis::is_local() const {
  return cache_->local.get([&] {
    // a + J is a unit of R/J iff a is a unit of R, so R/J is a division ring
    // iff every element outside J is a unit.
    if (ring_.order() == 1) return false;
    return (units() | jacobson()).count() == ring_.order();
  });
}

bool RingAnalysis::is_two_primal() const { return nil_star() == nilpotents(); }

const PropertyReport& RingAnalysis::report() const {
  return cache_->report.get([&] {
    PropertyReport r;
    r.commutative = is_commutative();
    r.cdelta = all_decompose(DecompositionKind::CDelta);
    r.cj = all_decompose(DecompositionKind::CJ);
    r.cn = all_decompose(DecompositionKind::CN);
    r.cu = all_decompose(DecompositionKind::CU);
    r.uniquely_cdelta = is_uniquely_cdelta();
    const Subset& U = units();
    r.uj = U == translate(ring_, jacobson(), ring_.one());
    r.uu = U == translate(ring_, nilpotents(), ring_.one());
    r.delta_u = U == translate(ring_, delta(), ring_.one());
    r.abelian = is_abelian();
    r.reduced = is_reduced();
    r.dedekind_finite = is_dedekind_finite();
    r.clean = all_decompose(DecompositionKind::Clean);
    r.strongly_clean = all_decompose(DecompositionKind::StronglyClean);
    r.exchange = is_exchange();
    r.semipotent = is_semipotent();
    r.local = is_local();
    r.two_primal = is_two_primal();
    r.feebly_delta_clean = all_decompose(DecompositionKind::FeeblyDeltaClean);
    r.strongly_feebly_delta_clean = all_decompose(DecompositionKind::StronglyFeeblyDeltaClean);
    r.order = ring_.order();
    r.units = U.count();
    r.jacobson = jacobson().count();
    r.delta = delta().count();
    r.center = center().count();
    r.nilpotents = nilpotents().count();
    r.nil_star = nil_star().count();
    r.idempotents = idempotents().count();
    return r;
  });
}

// ---------------------------------------------------------------------------
// PropertyReport field access

const std::vector<std::string>& PropertyReport::predicate_names() {
  static const std::vector<std::string> names{
      "commutative", "CDelta",    "CJ",        "CN",     "CU",        "uniquelyCDelta", "UJ",
      "UU",          "DeltaU",    "abelian",   "reduced", "dedekindFinite", "clean", "stronglyClean",
      "exchange",    "semipotent", "local",    "twoPrimal", "feeblyDeltaClean", "stronglyFeeblyDeltaClean"};
  return names;
}

const std::vector<std::string>& PropertyReport::cardinality_names() {
  static const std::vector<std::string> names{"order",      "units",   "jacobson",   "delta",
                                              "center",     "nilpotents", "nilStar", "idempotents"};
  return names;
}

std::optional<bool> PropertyReport::predicate(std::string_view name) const {
  const std::array<std::pair<std::string_view, bool>, 20> fields{{
      {"commutative", commutative},
      {"CDelta", cdelta},
      {"CJ", cj},
      {"CN", cn},
      {"CU", cu},
      {"uniquelyCDelta", uniquely_cdelta},
      {"UJ", uj},
      {"UU", uu},
      {"DeltaU", delta_u},
      {"abelian", abelian},
      {"reduced", reduced},
      {"dedekindFinite", dedekind_finite},
      {"clean", clean},
      {"stronglyClean", strongly_clean},
      {"exchange", exchange},
      {"semipotent", semipotent},
      {"local", local},
      {"twoPrimal", two_primal},
      {"feeblyDeltaClean", feebly_delta_clean},
      {"stronglyFeeblyDeltaClean", strongly_feebly_delta_clean},
  }};
  for (const auto& [n, v] : fields)
    if (n == name) return v;
  return std::nullopt;
}

std::optional<std::size_t> PropertyReport::cardinality(std::string_view name) const {
  const std::array<std::pair<std::string_view, std::size_t>, 8> fields{{
      {"order", order},
      {"units", units},
      {"jacobson", jacobson},
      {"delta", delta},
      {"center", center},
      {"nilpotents", nilpotents},
      {"nilStar", nil_star},
      {"idempotents", idempotents},
  }};
  for (const auto& [n, v] : fields)
    if (n == name) return v;
  return std::nullopt;
}

}  // namespace cdelta
