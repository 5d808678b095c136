#include "cdelta/groups.hpp"

#include <array>
#include <numeric>

namespace cdelta {
namespace {

[[noreturn]] void not_a_group(const std::string& name, const std::string& why, std::vector<Index> w) {
  throw Error(ErrorCode::NotAGroup, name + " is not a group: " + why, std::move(w));
}

std::vector<Index> cyclic_table(std::size_t n) {
  std::vector<Index> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Index>((a + b) % n);
  return t;
}

// Permutations of {0,1,2} in lexicographic order; composition (p*q)(x) = p(q(x)).
std::vector<Index> s3_table() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<Index> t(36);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      for (std::size_t k = 0; k < 6; ++k)
        if (perms[k] == c) t[a * 6 + b] = static_cast<Index>(k);
    }
  return t;
}

// Quaternion units ordered 1, -1, i, -i, j, -j, k, -k; products from
// i^2 = j^2 = k^2 = ijk = -1.
std::vector<Index> q8_table() {
  // Basis index 0..3 = 1,i,j,k; product of basis units as (sign, basis).
  const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  const int basis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<Index> t(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ba = a / 2, bb = b / 2;
      const int s = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * sign[ba][bb];
      t[a * 8 + b] = static_cast<Index>(2 * basis[ba][bb] + (s < 0 ? 1 : 0));
    }
  return t;
}

}  // namespace

FiniteGroup make_group(std::string name, std::size_t order, std::vector<Index> table) {
  if (order == 0 || table.size() != order * order) not_a_group(name, "table has the wrong size", {});
  for (Index x : table)
    if (x >= order) not_a_group(name, "table entry out of range", {x});
  auto op = [&](Index a, Index b) { return table[std::size_t{a} * order + b]; };
  const auto n = static_cast<Index>(order);

  Index e = n;
  for (Index c = 0; c < n && e == n; ++c) {
    bool ok = true;
    for (Index a = 0; a < n && ok; ++a) ok = op(c, a) == a && op(a, c) == a;
    if (ok) e = c;
  }
  if (e == n) not_a_group(name, "no identity element", {});

  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        if (op(op(a, b), c) != op(a, op(b, c))) not_a_group(name, "operation is not associative", {a, b, c});

  for (Index a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (Index b = 0; b < n && !has_inverse; ++b) has_inverse = op(a, b) == e && op(b, a) == e;
    if (!has_inverse) not_a_group(name, "element has no inverse", {a});
  }
  return FiniteGroup{std::move(name), order, std::move(table), e};
}

FiniteGroup builtin_group(const std::string& name) {
  if (name == "C1") return make_group(name, 1, {0});
  if (name == "C2") return make_group(name, 2, cyclic_table(2));
  if (name == "C3") return make_group(name, 3, cyclic_table(3));
  if (name == "C4") return make_group(name, 4, cyclic_table(4));
  if (name == "C2xC2") return make_group(name, 4, {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0});
  if (name == "S3") return make_group(name, 6, s3_table());
  if (name == "Q8") return make_group(name, 8, q8_table());
  throw Error(ErrorCode::UnknownName, "unknown group '" + name + "'");
}

std::vector<std::string> builtin_group_names() { return {"C1", "C2", "C3", "C4", "C2xC2", "S3", "Q8"}; }

}  // namespace cdelta
