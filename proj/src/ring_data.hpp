#pragma once

#include <functional>
#include <map>
#include <mutex>

#include "cdelta/ring.hpp"

namespace cdelta::detail {

struct RingData {
  RingTables tables;
  std::vector<Index> neg;
  std::vector<Index> generators;
  std::uint64_t tag = 0;
  Provenance provenance;
  Layout layout;

  mutable std::once_flag lookup_once;
  mutable std::map<std::vector<Index>, Index> lookup;
};

struct AxiomReport {
  std::vector<Index> neg;
  std::vector<Index> generators;
};

/// Full verification of the ring laws; throws MalformedTable / AxiomViolation.
AxiomReport verify_ring_axioms(const RingTables& tables);

/// Computes a set of additive generators such that every element is a
/// left-bracketed sum of generators, by BFS over x -> x + g.
std::vector<Index> additive_generators(std::size_t n, const std::vector<Index>& add);

/// Multiplication rule of a ring whose elements are coordinate tuples and
/// whose addition is componentwise.
using TupleProduct =
    std::function<void(std::span<const Index> a, std::span<const Index> b, std::span<Index> out)>;

struct TupleRingSpec {
  std::vector<FiniteRing> slots;
  std::vector<Index> one;
  TupleProduct product;
  Provenance provenance;
  /// When set, the coordinates are presented as a rows x cols matrix over slots[0].
  std::size_t matrix_rows = 0;
  std::size_t matrix_cols = 0;
};

/// Materializes a ring on the full mixed-radix tuple set (slot 0 most significant).
FiniteRing build_tuple_ring(TupleRingSpec spec, const BuildOptions& options);

/// Decodes mixed-radix indices for the given radices.
std::vector<Index> decode_all(std::span<const std::size_t> radices, std::size_t count);

}  // namespace cdelta::detail
