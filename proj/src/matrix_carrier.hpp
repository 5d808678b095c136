#pragma once

#include <vector>

#include "cdelta/ring.hpp"

namespace cdelta::detail {

/// One summand multiplier * param of a matrix entry.
struct Term {
  std::size_t param;
  Index multiplier;
};

/// A set of size x size matrices over `base`, each entry a sum of terms in the
/// free parameters. The carrier is every matrix obtained as the parameters
/// range over the base ring.
struct CarrierSpec {
  FiniteRing base;
  std::size_t size = 0;
  std::size_t params = 0;
  std::vector<std::vector<Term>> entries;  // size * size, row-major
  Provenance provenance;

  void set(std::size_t i, std::size_t j, std::size_t param) { entries[i * size + j].push_back({param, base.one()}); }
  void set(std::size_t i, std::size_t j, std::size_t param, Index multiplier) {
    entries[i * size + j].push_back({param, multiplier});
  }
};

CarrierSpec carrier(const FiniteRing& base, std::size_t size);

/// Materializes the carrier as a subring of M_size(base) under the usual
/// matrix operations. Throws NotASubring / OrderCapExceeded.
FiniteRing build_matrix_carrier(CarrierSpec spec, const BuildOptions& options);

/// Product of two row-major n x n matrices over `r`.
void matrix_product(const FiniteRing& r, std::size_t n, const Index* a, const Index* b, Index* out);

}  // namespace cdelta::detail
