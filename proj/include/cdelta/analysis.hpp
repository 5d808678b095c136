#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdelta/ring.hpp"
#include "cdelta/subset.hpp"

namespace cdelta {

enum class DecompositionKind {
  CDelta,
  CJ,
  CN,
  CU,
  Clean,
  StronglyClean,
  FeeblyDeltaClean,
  StronglyFeeblyDeltaClean,
};

/// "cdelta", "cj", "cn", "cu", "clean", "strongly-clean",
/// "feebly-delta-clean", "strongly-feebly-delta-clean".
std::string_view to_string(DecompositionKind kind) noexcept;
/// Throws UnknownKind.
DecompositionKind parse_kind(std::string_view text);
std::vector<DecompositionKind> all_decomposition_kinds();

/// Parts are (c, r) for the central kinds, (e, u) for the clean kinds and
/// (d, e, f) with a = d + e - f for the feebly kinds.
struct DecompositionWitness {
  DecompositionKind kind = DecompositionKind::CDelta;
  ElementId element;
  std::vector<ElementId> parts;
  bool found = false;
};

/// Replays the defining equation and membership conditions of a witness.
bool witness_holds(const class RingAnalysis& analysis, const DecompositionWitness& w);

struct PropertyReport {
  bool commutative = false;
  bool cdelta = false;
  bool cj = false;
  bool cn = false;
  bool cu = false;
  bool uniquely_cdelta = false;
  bool uj = false;
  bool uu = false;
  bool delta_u = false;
  bool abelian = false;
  bool reduced = false;
  bool dedekind_finite = false;
  bool clean = false;
  bool strongly_clean = false;
  bool exchange = false;
  bool semipotent = false;
  bool local = false;
  bool two_primal = false;
  bool feebly_delta_clean = false;
  bool strongly_feebly_delta_clean = false;

  std::size_t order = 0;
  std::size_t units = 0;
  std::size_t jacobson = 0;
  std::size_t delta = 0;
  std::size_t center = 0;
  std::size_t nilpotents = 0;
  std::size_t nil_star = 0;
  std::size_t idempotents = 0;

  /// Predicate names in report order (commutative, CDelta, CJ, ...).
  static const std::vector<std::string>& predicate_names();
  /// Cardinality names in report order (order, units, jacobson, ...).
  static const std::vector<std::string>& cardinality_names();
  std::optional<bool> predicate(std::string_view name) const;
  std::optional<std::size_t> cardinality(std::string_view name) const;
};

/// Exhaustive analysis of one ring. Every subset and predicate is computed
/// on first use and cached; concurrent readers are safe.
class RingAnalysis {
 public:
  explicit RingAnalysis(FiniteRing ring);
  ~RingAnalysis();
  RingAnalysis(const RingAnalysis&) = delete;
  RingAnalysis& operator=(const RingAnalysis&) = delete;

  const FiniteRing& ring() const noexcept { return ring_; }

  const Subset& units() const;
  /// Two-sided inverse of a unit.
  Index inverse(Index u) const;
  /// Throws InternalInconsistency if the left and right quasi-regularity
  /// criteria disagree or the result is not a two-sided ideal.
  const Subset& jacobson() const;
  const Subset& delta() const;
  const Subset& center() const;
  const Subset& nilpotents() const;
  const Subset& idempotents() const;
  /// Strongly nilpotent elements: no infinite chain a -> a r a -> ... avoids 0.
  const Subset& nil_star() const;

  DecompositionWitness decompose(Index a, DecompositionKind kind) const;
  /// Number of pairs (c, r) with a = c + r, c central, r in Delta.
  std::size_t count_cdelta_decompositions(Index a) const;
  /// True iff every element has a decomposition of this kind.
  bool all_decompose(DecompositionKind kind) const;
  /// Smallest element without a decomposition of this kind.
  std::optional<Index> first_undecomposable(DecompositionKind kind) const;

  bool is_commutative() const;
  bool is_uniquely_cdelta() const;
  bool is_abelian() const;
  bool is_reduced() const;
  bool is_dedekind_finite() const;
  bool is_exchange() const;
  bool is_semipotent() const;
  bool is_local() const;
  bool is_two_primal() const;

  /// Witness for a failure of the exchange property, if any.
  std::optional<Index> exchange_failure() const;
  /// Witness for a failure of semipotency: some a outside J with Ra free of nonzero idempotents.
  std::optional<Index> semipotent_failure() const;
  /// A pair with ab = 1 and ba != 1, if any.
  std::optional<std::pair<Index, Index>> dedekind_failure() const;

  const PropertyReport& report() const;

 private:
  struct Cache;
  FiniteRing ring_;
  std::unique_ptr<Cache> cache_;
};

/// Sum set {x + y : x in a, y in b}.
Subset sumset(const FiniteRing& ring, const Subset& a, const Subset& b);

/// Division ring test: every nonzero element is a unit and the ring is nonzero.
bool is_division_ring(const FiniteRing& ring);

}  // namespace cdelta
