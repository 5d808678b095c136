#pragma once

#include <string>
#include <vector>

#include "cdelta/ring.hpp"

namespace cdelta {

/// A finite group given by its Cayley table (row-major, order * order).
struct FiniteGroup {
  std::string name;
  std::size_t order = 0;
  std::vector<Index> table;
  Index identity = 0;

  Index op(Index g, Index h) const { return table[std::size_t{g} * order + h]; }
};

/// Verifies closure, associativity, identity and inverses. Throws NotAGroup
/// with a witness (a pair or triple of elements) on failure.
FiniteGroup make_group(std::string name, std::size_t order, std::vector<Index> table);

/// Built-in groups: C1, C2, C3, C4, C2xC2, S3, Q8. Throws UnknownName.
FiniteGroup builtin_group(const std::string& name);

std::vector<std::string> builtin_group_names();

}  // namespace cdelta
