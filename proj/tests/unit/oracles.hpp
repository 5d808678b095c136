// Brute-force reference computations used to freeze expected values.
//
// These deliberately avoid the library's analysis code: they read only the
// raw tables (or plain integer arithmetic) and follow the textbook
// definitions with the most naive loops possible.

#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "cdelta/ring.hpp"

namespace oracle {

using cdelta::FiniteRing;
using cdelta::Index;
using Table = std::vector<std::vector<Index>>;

inline std::pair<Table, Table> residue_tables(std::size_t n) {
  Table add(n, std::vector<Index>(n)), mul(n, std::vector<Index>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      add[a][b] = static_cast<Index>((a + b) % n);
      mul[a][b] = static_cast<Index>((a * b) % n);
    }
  return {add, mul};
}

/// Does `witness` exhibit a failure of `law` on the raw tables?
inline bool violates(const Table& add, const Table& mul, const std::string& law,
                     const std::vector<std::uint32_t>& w) {
  auto A = [&](Index a, Index b) { return add[a][b]; };
  auto M = [&](Index a, Index b) { return mul[a][b]; };
  if (law == "additive associativity") return A(A(w[0], w[1]), w[2]) != A(w[0], A(w[1], w[2]));
  if (law == "multiplicative associativity") return M(M(w[0], w[1]), w[2]) != M(w[0], M(w[1], w[2]));
  if (law == "left distributivity") return M(w[0], A(w[1], w[2])) != A(M(w[0], w[1]), M(w[0], w[2]));
  if (law == "right distributivity") return M(A(w[0], w[1]), w[2]) != A(M(w[0], w[2]), M(w[1], w[2]));
  if (law == "additive commutativity") return A(w[0], w[1]) != A(w[1], w[0]);
  return false;
}

inline bool is_unit(const FiniteRing& r, Index a) {
  for (Index b = 0; b < r.order(); ++b)
    if (r.mul(a, b) == r.one() && r.mul(b, a) == r.one()) return true;
  return false;
}

inline std::vector<Index> unit_indices(const FiniteRing& r) {
  std::vector<Index> out;
  for (Index a = 0; a < r.order(); ++a)
    if (is_unit(r, a)) out.push_back(a);
  return out;
}

inline std::size_t count_units(const FiniteRing& r) { return unit_indices(r).size(); }

inline std::vector<Index> idempotent_indices(const FiniteRing& r) {
  std::vector<Index> out;
  for (Index a = 0; a < r.order(); ++a)
    if (r.mul(a, a) == a) out.push_back(a);
  return out;
}

inline std::size_t count_idempotents(const FiniteRing& r) { return idempotent_indices(r).size(); }

inline std::vector<Index> nilpotent_indices(const FiniteRing& r) {
  std::vector<Index> out;
  for (Index a = 0; a < r.order(); ++a) {
    Index p = a;
    for (std::size_t k = 0; k <= r.order() && p != r.zero(); ++k) p = r.mul(p, a);
    if (p == r.zero()) out.push_back(a);
  }
  return out;
}

inline std::vector<Index> center_indices(const FiniteRing& r) {
  std::vector<Index> out;
  for (Index a = 0; a < r.order(); ++a) {
    bool ok = true;
    for (Index b = 0; b < r.order() && ok; ++b) ok = r.mul(a, b) == r.mul(b, a);
    if (ok) out.push_back(a);
  }
  return out;
}

/// {a : 1 - u a is a unit for every unit u}.
inline std::vector<Index> delta_indices(const FiniteRing& r) {
  auto units = unit_indices(r);
  auto unit = [&](Index x) { return std::binary_search(units.begin(), units.end(), x); };
  std::vector<Index> out;
  for (Index a = 0; a < r.order(); ++a) {
    bool ok = true;
    for (Index u : units)
      if (!unit(r.sub(r.one(), r.mul(u, a)))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(a);
  }
  return out;
}

/// {a : 1 - r a and 1 - a r are units for every r}.
inline std::vector<Index> jacobson_indices(const FiniteRing& r) {
  auto units = unit_indices(r);
  auto unit = [&](Index x) { return std::binary_search(units.begin(), units.end(), x); };
  std::vector<Index> out;
  for (Index a = 0; a < r.order(); ++a) {
    bool ok = true;
    for (Index x = 0; x < r.order() && ok; ++x)
      ok = unit(r.sub(r.one(), r.mul(x, a))) && unit(r.sub(r.one(), r.mul(a, x)));
    if (ok) out.push_back(a);
  }
  return out;
}

/// Can a be written c + d with c central and d in Delta?
inline bool has_cdelta(const FiniteRing& r, Index a) {
  auto c = center_indices(r);
  auto d = delta_indices(r);
  for (Index x : c)
    if (std::binary_search(d.begin(), d.end(), r.sub(a, x))) return true;
  return false;
}

inline bool is_cdelta(const FiniteRing& r) {
  auto c = center_indices(r);
  auto d = delta_indices(r);
  for (Index a = 0; a < r.order(); ++a) {
    bool found = false;
    for (Index x : c)
      if (std::binary_search(d.begin(), d.end(), r.sub(a, x))) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

/// Strongly nilpotent elements by graph reachability: a is excluded iff a
/// walk along x -> x r x through nonzero elements reaches a nonzero cycle.
inline std::vector<Index> nil_star_indices(const FiniteRing& r) {
  const std::size_t n = r.order();
  // reach[x][y]: y reachable from x in one or more steps, staying nonzero.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (Index x = 0; x < n; ++x) {
    if (x == r.zero()) continue;
    std::vector<Index> stack;
    for (Index s = 0; s < n; ++s) {
      Index y = r.mul(r.mul(x, s), x);
      if (y != r.zero() && !reach[x][y]) {
        reach[x][y] = true;
        stack.push_back(y);
      }
    }
    while (!stack.empty()) {
      Index y = stack.back();
      stack.pop_back();
      for (Index s = 0; s < n; ++s) {
        Index z = r.mul(r.mul(y, s), y);
        if (z != r.zero() && !reach[x][z]) {
          reach[x][z] = true;
          stack.push_back(z);
        }
      }
    }
  }
  std::vector<Index> out;
  for (Index a = 0; a < n; ++a) {
    bool bad = false;
    if (a != r.zero())
      for (Index b = 0; b < n && !bad; ++b) bad = (a == b || reach[a][b]) && reach[b][b];
    if (!bad) out.push_back(a);
  }
  return out;
}

/// Is a = d + e - f with d in Delta, e and f orthogonal idempotents?
inline bool has_feebly(const FiniteRing& r, Index a, bool strong) {
  auto d = delta_indices(r);
  auto id = idempotent_indices(r);
  for (Index x : d)
    for (Index e : id)
      for (Index f : id) {
        if (r.sub(r.add(x, e), f) != a) continue;
        if (r.mul(e, f) != r.zero() || r.mul(f, e) != r.zero()) continue;
        if (strong && r.mul(x, e) != r.mul(e, x) && r.mul(x, f) != r.mul(f, x)) continue;
        return true;
      }
  return false;
}

/// Plain matrix product over Z m, row-major n x n.
inline std::vector<long> matmul_mod(const std::vector<long>& a, const std::vector<long>& b, std::size_t n, long m) {
  std::vector<long> c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long s = 0;
      for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
      c[i * n + j] = ((s % m) + m) % m;
    }
  return c;
}

}  // namespace oracle
