#include <doctest.h>

#include <numeric>

#include "cdelta/ring.hpp"
#include "cdelta/subset.hpp"
#include "oracles.hpp"

using namespace cdelta;

TEST_CASE("zn arithmetic") {
  auto z6 = zn(6);
  CHECK(z6.order() == 6);
  CHECK(z6.mul(3, 4) == 0);
  CHECK(z6.add(3, 4) == 1);
  CHECK(z6.neg(2) == 4);

  auto z1 = zn(1);
  CHECK(z1.order() == 1);
  CHECK(z1.zero() == z1.one());

  CHECK_THROWS_AS(zn(0), Error);
}

TEST_CASE("order cap is enforced") {
  BuildOptions opts;
  opts.order_cap = 10;
  try {
    zn(11, opts);
    FAIL("expected OrderCapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderCapExceeded);
  }
}

TEST_CASE("table_ring accepts valid tables and rejects broken ones") {
  const auto [add, mul] = oracle::residue_tables(4);
  auto z4 = table_ring(add, mul, 0, 1);
  CHECK(z4.order() == 4);

  auto bad = mul;
  bad[2][2] = 1;
  try {
    table_ring(add, bad, 0, 1);
    FAIL("expected AxiomViolation");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::AxiomViolation);
    // The reported triple must actually violate the named law on the raw tables.
    CHECK(oracle::violates(add, bad, e.law(), e.witness()));
  }

  auto ragged = add;
  ragged[1].pop_back();
  try {
    table_ring(ragged, mul, 0, 1);
    FAIL("expected MalformedTable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedTable);
  }

  auto out_of_range = add;
  out_of_range[0][0] = 9;
  CHECK_THROWS_AS(table_ring(out_of_range, mul, 0, 1), Error);

  auto zero_ring = table_ring({{0}}, {{0}}, 0, 0);
  CHECK(zero_ring.order() == 1);
}

TEST_CASE("large rings are verified through the generator reduction") {
  // Z 2^7 exceeds the exhaustive threshold; a single corrupted product must still be caught.
  const std::size_t n = 128;
  auto [add, mul] = oracle::residue_tables(n);
  CHECK(table_ring(add, mul, 0, 1).order() == n);
  mul[37][91] = (mul[37][91] + 1) % n;
  try {
    table_ring(add, mul, 0, 1);
    FAIL("expected AxiomViolation");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::AxiomViolation);
    CHECK(oracle::violates(add, mul, e.law(), e.witness()));
  }
}

TEST_CASE("direct products") {
  std::vector<FiniteRing> f{zn(2), zn(2)};
  auto r = direct_product(f);
  CHECK(r.order() == 4);
  CHECK(oracle::count_idempotents(r) == 4);

  std::vector<FiniteRing> g{zn(2), zn(3)};
  auto s = direct_product(g);
  CHECK(oracle::count_units(s) == 2);
  // First factor most significant: index 5 = (1, 2).
  CHECK(s.coords(5)[0] == 1);
  CHECK(s.coords(5)[1] == 2);
  CHECK(s.find(std::vector<Index>{1, 2}) == Index{5});

  std::vector<FiniteRing> single{zn(3)};
  auto t = direct_product(single);
  std::vector<Index> id(3);
  std::iota(id.begin(), id.end(), 0);
  CHECK(check_isomorphism(RingMap{t, zn(3), id}));

  CHECK_THROWS_AS(direct_product(std::span<const FiniteRing>{}), Error);
}

TEST_CASE("mixed-radix encodings round trip") {
  std::vector<FiniteRing> f{zn(3), zn(2), zn(5)};
  auto r = direct_product(f);
  for (Index a = 0; a < r.order(); ++a) CHECK(r.find(r.coords(a)) == a);
}

TEST_CASE("polynomial quotients") {
  auto z2 = zn(2);
  std::vector<Index> f{1, 1, 1};
  auto gf4 = poly_quotient(z2, f);
  CHECK(gf4.order() == 4);
  CHECK(oracle::count_units(gf4) == 3);

  std::vector<Index> x2{0, 0, 1};
  auto dual = poly_quotient(z2, x2);
  CHECK(oracle::nilpotent_indices(dual) == std::vector<Index>{0, 1});  // 0 and x = (0,1)

  std::vector<Index> x1{0, 1};
  auto z3x = poly_quotient(zn(3), x1);
  std::vector<Index> id{0, 1, 2};
  CHECK(check_isomorphism(RingMap{z3x, zn(3), id}));

  std::vector<Index> nonmonic{1, 0};
  try {
    poly_quotient(z2, nonmonic);
    FAIL("expected NonMonicModulus");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonMonicModulus);
  }
}

TEST_CASE("endomorphisms") {
  auto z6 = zn(6);
  std::vector<Index> id{0, 1, 2, 3, 4, 5};
  CHECK_NOTHROW(endomorphism_of(z6, id));

  auto z2 = zn(2);
  std::vector<Index> f{1, 1, 1};
  auto gf4 = poly_quotient(z2, f);
  std::vector<Index> frob(4);
  for (Index a = 0; a < 4; ++a) frob[a] = gf4.mul(a, a);
  auto map = endomorphism_of(gf4, frob);
  CHECK(map.image != std::vector<Index>{0, 1, 2, 3});

  auto z4 = zn(4);
  std::vector<Index> sq{0, 1, 0, 1};
  try {
    endomorphism_of(z4, sq);
    FAIL("expected NotAHomomorphism");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAHomomorphism);
    CHECK(e.witness() == std::vector<std::uint32_t>{1, 1});
  }

  std::vector<Index> zero_map(6, 0);
  try {
    endomorphism_of(z6, zero_map);
    FAIL("expected NotUnital");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnital);
  }
}

TEST_CASE("no bijection Z2 x Z2 -> Z4 is an isomorphism") {
  std::vector<FiniteRing> f{zn(2), zn(2)};
  auto v = direct_product(f);
  auto z4 = zn(4);
  std::vector<Index> perm{0, 1, 2, 3};
  int accepted = 0;
  do {
    if (check_isomorphism(RingMap{v, z4, perm})) ++accepted;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(accepted == 0);
}

TEST_CASE("element ids are bound to their ring") {
  auto a = zn(4);
  auto b = zn(4);
  auto x = a.element(3);
  CHECK(a.index_of(a.add(x, x)) == 2);
  CHECK_THROWS_AS(b.index_of(x), Error);
  CHECK_THROWS_AS(a.element(4), Error);

  auto s = Subset::from_indices(a, {0, 2});
  auto t = Subset::from_indices(b, {0, 2});
  CHECK_THROWS_AS((void)(s == t), Error);
  CHECK(translate(a, s, 1).indices() == std::vector<Index>{1, 3});
}
