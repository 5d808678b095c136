#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdelta/analysis.hpp"

namespace cdelta {

enum class Verdict { Pass, Fail, NotApplicable };

/// "pass", "fail", "not-applicable".
std::string_view to_string(Verdict v) noexcept;

/// One labelled element of a witness. `ring` names the ring the index refers
/// to, which may be a ring derived from the checked one.
struct WitnessEntry {
  std::string role;
  std::string ring;
  Index index = 0;
  std::string label;
};

struct CheckResult {
  std::string check_id;
  std::string ring_name;
  Verdict verdict = Verdict::Pass;
  /// The unmet hypothesis when not applicable.
  std::string hypothesis;
  /// Deterministic free-form note (derived rings used, skipped parameters).
  std::string detail;
  std::vector<WitnessEntry> witness;
  double elapsed_ms = 0;
  /// For failures: re-evaluates the violated condition on the witness from
  /// the raw tables and returns true iff the violation is reproduced.
  std::function<bool()> replay;
};

struct CheckInfo {
  std::string id;
  /// What the check asserts, in one sentence.
  std::string summary;
};

/// Every catalog entry, in run order.
const std::vector<CheckInfo>& check_catalog();

/// Coverage of every catalogued statement id: each one is
/// either realized by a catalog check or declared out of scope with a reason.
struct ManifestEntry {
  std::string statement;
  std::string check_id;  // empty when out of scope
  std::string note;
};
const std::vector<ManifestEntry>& statement_manifest();

struct CheckOptions {
  /// Largest ring a check may construct from the checked one. Checks whose
  /// derived rings all exceed it are not applicable.
  std::size_t derived_order_cap = 4096;
};

struct DerivedRing {
  explicit DerivedRing(FiniteRing r) : ring(std::move(r)), analysis(ring) {}
  FiniteRing ring;
  RingAnalysis analysis;
};

/// Per-ring state shared by all checks: the analysis of the ring, memoized
/// derived rings and the family of ideals inside J(R). Thread-safe.
class CheckContext {
 public:
  explicit CheckContext(FiniteRing ring, CheckOptions options = {});
  ~CheckContext();
  CheckContext(const CheckContext&) = delete;
  CheckContext& operator=(const CheckContext&) = delete;

  const FiniteRing& ring() const noexcept;
  const RingAnalysis& analysis() const noexcept;
  const CheckOptions& options() const noexcept;

  /// Builds (once) the ring produced by `build` under the derived cap.
  /// Returns nullptr when the ring would exceed the cap or when `build`
  /// rejects its inputs (e.g. a non-commutative base for a polynomial ring).
  std::shared_ptr<const DerivedRing> derived(const std::string& key,
                                             const std::function<FiniteRing(const BuildOptions&)>& build);

  /// Ideals of R contained in J(R), sorted by size then by least element.
  /// The full lattice when it has at most 64 members; otherwise 0, J(R) and
  /// the principal ideals of the first nonzero elements of J(R).
  const std::vector<Subset>& ideals_in_jacobson();
  bool ideal_family_complete();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Throws UnknownCheck.
CheckResult run_check(std::string_view id, CheckContext& context);
CheckResult run_check(std::string_view id, const FiniteRing& ring, const CheckOptions& options = {});

struct CorpusEntry {
  std::string name;
  std::function<FiniteRing()> build;
};

struct CheckTally {
  std::string check_id;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t not_applicable = 0;
  std::size_t error = 0;
};

/// A corpus entry that could not be built, or a check that threw.
struct SuiteError {
  std::string ring_name;
  std::string check_id;  // empty for construction errors
  std::string code;
  std::string message;
};

struct SuiteReport {
  std::vector<std::string> checks;
  std::vector<std::string> rings;
  /// Ordered by corpus position, then by catalog position.
  std::vector<CheckResult> results;
  std::vector<CheckTally> tallies;
  std::vector<SuiteError> errors;

  std::size_t count(Verdict v) const;
};

/// Runs the selected checks (all when `selection` is empty) on every corpus
/// ring. Construction and check errors are recorded without aborting.
/// Throws UnknownCheck for an unknown id in `selection`.
SuiteReport run_suite(const std::vector<CorpusEntry>& corpus, const std::vector<std::string>& selection = {},
                      const CheckOptions& options = {}, std::size_t threads = 0);

/// Definition-level predicates read straight from the tables, without the
/// analysis cache. Witness replays are built on these.
namespace replay {
bool is_unit(const FiniteRing& r, Index a);
bool is_central(const FiniteRing& r, Index a);
bool in_delta(const FiniteRing& r, Index a);
bool in_jacobson(const FiniteRing& r, Index a);
bool is_nilpotent(const FiniteRing& r, Index a);
bool has_decomposition(const FiniteRing& r, Index a, DecompositionKind kind);
bool all_decompose(const FiniteRing& r, DecompositionKind kind);
}  // namespace replay

}  // namespace cdelta
