// Ring-law verification.
//
// Small rings (order <= kExhaustiveAxiomOrder) are scanned over every triple.
// Larger rings use a reduction that is still a complete proof of every law:
//   * the additive generators G reach every element as ((g1 + g2) + ...) + gk;
//   * additive associativity follows from Light's test (x + g) + y = x + (g + y)
//     for g in G, since the elements satisfying it are closed under +;
//   * a(b + g) = ab + ag for all a, b and g in G gives left distributivity by
//     induction on the generator chain of the second summand (right likewise);
//   * once both distributive laws hold, (xy)z - x(yz) is additive in each
//     argument, so associativity on G x G x G gives it everywhere.
// Every failure reports a concrete violating triple from the full table.

#include <algorithm>
#include <string>

#include "ring_data.hpp"

namespace cdelta::detail {
namespace {

[[noreturn]] void violation(const std::string& law, std::vector<Index> witness) {
  std::string msg = "ring axiom violated: " + law + " at (";
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i != 0) msg += ", ";
    msg += std::to_string(witness[i]);
  }
  msg += ")";
  throw Error(ErrorCode::AxiomViolation, msg, std::move(witness), law);
}

void check_shape(const RingTables& t) {
  const std::size_t n = t.order;
  if (n == 0) throw Error(ErrorCode::MalformedTable, "ring order must be at least 1");
  if (t.add.size() != n * n || t.mul.size() != n * n)
    throw Error(ErrorCode::MalformedTable, "tables must have order*order entries");
  if (t.zero >= n || t.one >= n)
    throw Error(ErrorCode::MalformedTable, "zero/one index out of range");
  for (std::size_t i = 0; i < n * n; ++i) {
    if (t.add[i] >= n || t.mul[i] >= n)
      throw Error(ErrorCode::MalformedTable,
                  "table entry out of range at (" + std::to_string(i / n) + ", " +
                      std::to_string(i % n) + ")");
  }
}

}  // namespace

std::vector<Index> additive_generators(std::size_t n, const std::vector<Index>& add) {
  std::vector<Index> gens;
  std::vector<char> seen(n, 0);
  std::vector<Index> reached;
  reached.reserve(n);
  for (Index a = 0; a < n; ++a) {
    if (seen[a]) continue;
    gens.push_back(a);
    seen[a] = 1;
    reached.push_back(a);
    // Re-expand everything with the enlarged generator list.
    for (std::size_t i = 0; i < reached.size(); ++i) {
      const Index x = reached[i];
      for (const Index g : gens) {
        const Index y = add[std::size_t{x} * n + g];
        if (!seen[y]) {
          seen[y] = 1;
          reached.push_back(y);
        }
      }
    }
  }
  return gens;
}

AxiomReport verify_ring_axioms(const RingTables& t) {
  check_shape(t);
  const std::size_t n = t.order;
  auto A = [&](Index a, Index b) { return t.add[std::size_t{a} * n + b]; };
  auto M = [&](Index a, Index b) { return t.mul[std::size_t{a} * n + b]; };
  const auto N = static_cast<Index>(n);

  for (Index a = 0; a < N; ++a) {
    if (A(t.zero, a) != a || A(a, t.zero) != a) violation("additive identity", {a});
  }
  for (Index a = 0; a < N; ++a)
    for (Index b = a + 1; b < N; ++b)
      if (A(a, b) != A(b, a)) violation("additive commutativity", {a, b});

  AxiomReport report;
  report.neg.assign(n, 0);
  for (Index a = 0; a < N; ++a) {
    Index b = 0;
    while (b < N && A(a, b) != t.zero) ++b;
    if (b == N) violation("additive inverse", {a});
    report.neg[a] = b;
  }

  for (Index a = 0; a < N; ++a) {
    if (M(t.one, a) != a || M(a, t.one) != a) violation("multiplicative identity", {a});
  }

  report.generators = additive_generators(n, t.add);
  const bool exhaustive = n <= kExhaustiveAxiomOrder;
  std::vector<Index> all(n);
  for (Index a = 0; a < N; ++a) all[a] = a;
  const std::vector<Index>& probe = exhaustive ? all : report.generators;

  // Additive associativity (Light's test over the probe set).
  for (Index x = 0; x < N; ++x)
    for (const Index g : probe)
      for (Index y = 0; y < N; ++y)
        if (A(A(x, g), y) != A(x, A(g, y))) violation("additive associativity", {x, g, y});

  // Distributivity: a(b + g) = ab + ag and (b + g)a = ba + ga. Addition is
  // already known to be commutative, so both sides are read along rows: the
  // left law compares row a of M at (g + b) with row ag of A at ab, and the
  // right law does the same on the transposed product table.
  std::vector<Index> mt(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mt[b * n + a] = t.mul[a * n + b];
  for (Index a = 0; a < N; ++a) {
    const Index* ma = t.mul.data() + std::size_t{a} * n;
    const Index* ta = mt.data() + std::size_t{a} * n;
    for (const Index g : probe) {
      const Index* ag = t.add.data() + std::size_t{g} * n;
      const Index* al = t.add.data() + std::size_t{ma[g]} * n;
      const Index* ar = t.add.data() + std::size_t{ta[g]} * n;
      for (Index b = 0; b < N; ++b) {
        if (ma[ag[b]] != al[ma[b]]) violation("left distributivity", {a, b, g});
        if (ta[ag[b]] != ar[ta[b]]) violation("right distributivity", {b, g, a});
      }
    }
  }

  for (const Index x : probe)
    for (const Index y : probe) {
      const Index xy = M(x, y);
      for (const Index z : probe)
        if (M(xy, z) != M(x, M(y, z))) violation("multiplicative associativity", {x, y, z});
    }

  return report;
}

}  // namespace cdelta::detail
