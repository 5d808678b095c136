#include <doctest.h>

#include <numeric>

#include "../../src/matrix_carrier.hpp"
#include "cdelta/constructors.hpp"
#include "oracles.hpp"

using namespace cdelta;

namespace {

Index mat(const FiniteRing& r, std::vector<Index> entries) {
  auto idx = r.find(entries);
  REQUIRE(idx.has_value());
  return *idx;
}

std::vector<Index> identity_map(std::size_t n) {
  std::vector<Index> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<Index> all_but(const FiniteRing& r, const std::vector<Index>& excluded) {
  std::vector<Index> out;
  for (Index a = 0; a < r.order(); ++a)
    if (std::find(excluded.begin(), excluded.end(), a) == excluded.end()) out.push_back(a);
  return out;
}

void check_round_trip(const FiniteRing& r) {
  for (Index a = 0; a < r.order(); ++a) REQUIRE(r.find(r.coords(a)) == a);
}

}  // namespace

TEST_CASE("full and triangular matrix rings") {
  auto z2 = zn(2);
  auto m2 = matrix_ring(2, z2);
  CHECK(m2.order() == 16);
  CHECK(oracle::count_units(m2) == 6);
  CHECK(oracle::delta_indices(m2) == std::vector<Index>{m2.zero()});
  CHECK(oracle::jacobson_indices(m2) == std::vector<Index>{m2.zero()});
  check_round_trip(m2);

  // Matrix products agree with plain integer matrix multiplication mod 2.
  for (Index a = 0; a < m2.order(); ++a)
    for (Index b = 0; b < m2.order(); ++b) {
      auto ca = m2.coords(a), cb = m2.coords(b);
      std::vector<long> la(ca.begin(), ca.end()), lb(cb.begin(), cb.end());
      auto lc = oracle::matmul_mod(la, lb, 2, 2);
      auto cc = m2.coords(m2.mul(a, b));
      REQUIRE(std::vector<long>(cc.begin(), cc.end()) == lc);
    }

  auto m1 = matrix_ring(1, zn(5));
  CHECK(check_isomorphism(RingMap{m1, zn(5), identity_map(5)}));

  auto t2 = triangular_ring(2, z2);
  CHECK(t2.order() == 8);
  const Index e12 = mat(t2, {0, 1, 0, 0});
  const std::vector<Index> j{t2.zero(), e12};
  CHECK(oracle::jacobson_indices(t2) == j);
  CHECK(oracle::delta_indices(t2) == j);
  // U = 1 + J
  const Index one = t2.one();
  std::vector<Index> one_plus_j{one, t2.add(one, e12)};
  std::sort(one_plus_j.begin(), one_plus_j.end());
  CHECK(oracle::unit_indices(t2) == one_plus_j);
  check_round_trip(t2);

  auto t2z5 = triangular_ring(2, zn(5));
  CHECK_FALSE(oracle::has_cdelta(t2z5, mat(t2z5, {4, 0, 0, 0})));

  BuildOptions small;
  small.order_cap = 100;
  CHECK_THROWS_AS(matrix_ring(2, zn(4), small), Error);
}

TEST_CASE("special matrix families") {
  auto z2 = zn(2);
  auto d2 = special_matrix_family({FamilyKind::Dn, 2}, z2);
  CHECK(d2.order() == 4);
  CHECK(oracle::is_cdelta(d2));

  auto z4 = zn(4);
  auto v2 = special_matrix_family({FamilyKind::Vn, 2}, z4);
  std::vector<Index> x2{0, 0, 1};
  auto dual = poly_quotient(z4, x2);
  CHECK(check_isomorphism(RingMap{v2, dual, identity_map(16)}));

  auto d3 = special_matrix_family({FamilyKind::Dn, 3}, z2);
  CHECK(d3.order() == 16);
  auto v3 = special_matrix_family({FamilyKind::Vn, 3}, z2);
  CHECK(v3.order() == 8);
  auto vk = special_matrix_family({FamilyKind::VnK, 4, 0, 2}, z2);
  CHECK(vk.order() == 32);  // x1, x2 plus entries (0,2), (0,3), (1,3)
  auto dk = special_matrix_family({FamilyKind::DnK, 4}, z2);
  CHECK(dk.order() == 64);  // c, four a_ij, one b
  auto dk3 = special_matrix_family({FamilyKind::DnK, 3}, z2);
  CHECK(dk3.order() == 16);  // c, a_12, a_13, b_23
  auto snm = special_matrix_family({FamilyKind::Snm, 2, 3}, z2);
  CHECK(snm.order() == 64);  // a, b1, d1, d2, c_13, c_14
  auto tnm = special_matrix_family({FamilyKind::Tnm, 2, 3}, z2);
  CHECK(tnm.order() == 16);
  auto u4 = special_matrix_family({FamilyKind::Un, 4}, z2);
  CHECK(u4.order() == 64);  // a, b1..b3, c1..c2
  for (const auto& r : {d2, v2, d3, v3, vk, dk, dk3, snm, tnm, u4}) {
    check_round_trip(r);
    CHECK(oracle::is_cdelta(r));  // Z 2 is commutative, so every family over it should be
  }

  CHECK_THROWS_AS(special_matrix_family({FamilyKind::VnK, 3, 0, 0}, z2), Error);
}

TEST_CASE("carrier closure failures are surfaced") {
  // Equal diagonal entries without triangularity: e12 e21 = e11 escapes.
  auto z2 = zn(2);
  auto c = detail::carrier(z2, 2);
  c.params = 3;
  c.set(0, 0, 0);
  c.set(1, 1, 0);
  c.set(0, 1, 1);
  c.set(1, 0, 2);
  c.provenance.expr = "literal D2";
  try {
    detail::build_matrix_carrier(c, {});
    FAIL("expected NotASubring");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotASubring);
    CHECK(e.witness().size() == 2);
  }
}

TEST_CASE("skew triangular rings") {
  auto gf4 = galois_field(2, 2);
  CHECK(gf4.order() == 4);
  auto frob = frobenius(gf4);
  CHECK(frob.image != identity_map(4));
  auto t = skew_triangular(2, gf4, frob, "frob");
  CHECK(t.order() == 16);
  auto delta = oracle::delta_indices(t);
  CHECK(delta.size() == 4);
  for (Index d : delta) CHECK(t.coords(d)[0] == gf4.zero());

  // Independent rewriting construction of GF(4)[x; frob]/<x^2>.
  auto sp = skew_poly_quotient(2, gf4, frob, "frob");
  CHECK(check_isomorphism(RingMap{sp, t, identity_map(16)}));
  CHECK_FALSE(t.is_commutative());

  auto z3 = zn(3);
  auto id3 = endomorphism_of(z3, identity_map(3));
  auto t2id = skew_triangular(2, z3, id3, "id");
  auto d2 = special_matrix_family({FamilyKind::Dn, 2}, z3);
  CHECK(check_isomorphism(RingMap{t2id, d2, identity_map(9)}));

  auto z2 = zn(2);
  auto t3 = skew_triangular(3, z2, endomorphism_of(z2, identity_map(2)), "id");
  CHECK(oracle::is_cdelta(t3));

  // A hand-assembled map that is not a homomorphism is refused.
  RingMap bogus{gf4, gf4, {0, 1, 1, 0}};
  CHECK_THROWS_AS(skew_triangular(2, gf4, bogus, "bogus"), Error);
}

TEST_CASE("generalized matrix rings") {
  auto z2 = zn(2);
  auto k1 = generalized_matrix(1, z2);
  CHECK(check_isomorphism(RingMap{k1, matrix_ring(2, z2), identity_map(16)}));

  auto k0 = generalized_matrix(0, z2);
  auto units = oracle::unit_indices(k0);
  CHECK(units.size() == 4);
  for (Index u : units) {
    CHECK(k0.coords(u)[0] == 1);
    CHECK(k0.coords(u)[3] == 1);
  }
  auto delta = oracle::delta_indices(k0);
  CHECK(delta.size() == 4);
  for (Index d : delta) {
    CHECK(k0.coords(d)[0] == 0);
    CHECK(k0.coords(d)[3] == 0);
  }

  auto k0z3 = generalized_matrix(0, zn(3));
  CHECK_FALSE(oracle::has_cdelta(k0z3, mat(k0z3, {1, 0, 0, 0})));
  CHECK_FALSE(oracle::is_cdelta(k0z3));

  auto m2 = matrix_ring(2, z2);
  try {
    generalized_matrix(mat(m2, {1, 0, 0, 0}), m2);
    FAIL("expected NonCentralParameter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonCentralParameter);
  }
}

TEST_CASE("trivial extensions and DT") {
  auto z2 = zn(2);
  auto t = trivial_extension(z2);
  CHECK(t.order() == 4);
  CHECK(oracle::unit_indices(t) == std::vector<Index>{2, 3});  // (1,0), (1,1)
  CHECK(oracle::is_cdelta(t));

  auto t4 = trivial_extension(zn(4));
  auto delta = oracle::delta_indices(t4);
  CHECK(delta.size() == 8);
  for (Index d : delta) CHECK(t4.coords(d)[0] % 2 == 0);

  auto dt = dt_ring(z2);
  CHECK(dt.order() == 16);
  // Local: the non-units are closed under addition.
  auto non_units = all_but(dt, oracle::unit_indices(dt));
  for (Index a : non_units)
    for (Index b : non_units) REQUIRE(std::find(non_units.begin(), non_units.end(), dt.add(a, b)) != non_units.end());
  CHECK(check_isomorphism(RingMap{dt, trivial_extension(t), identity_map(16)}));
  std::vector<Index> x2{0, 0, 1};
  auto rx = poly_quotient(z2, x2);
  auto rxy = poly_quotient(rx, std::vector<Index>{rx.zero(), rx.zero(), rx.one()});
  CHECK(check_isomorphism(RingMap{rxy, dt, identity_map(16)}));

  CHECK(oracle::is_cdelta(dt_ring(zn(3))));
}

TEST_CASE("L and H rings") {
  auto z2 = zn(2);
  auto l00 = lst_ring({0, 0}, z2);
  CHECK(l00.order() == 8);
  std::vector<FiniteRing> f{z2, z2, z2};
  auto cube = direct_product(f);
  // Elements are enumerated by (a, d, f), matching the product's mixed radix.
  std::vector<Index> image(8);
  for (Index x = 0; x < 8; ++x) {
    auto c = l00.coords(x);
    image[x] = *cube.find(std::vector<Index>{c[0], c[4], c[8]});
  }
  CHECK(check_isomorphism(RingMap{l00, cube, image}));

  auto l11 = lst_ring({1, 1}, z2);
  CHECK(l11.order() == 32);
  auto delta = oracle::delta_indices(l11);
  CHECK(delta.size() == 4);
  for (Index d : delta) {
    auto c = l11.coords(d);
    CHECK(c[0] == 0);
    CHECK(c[4] == 0);
    CHECK(c[8] == 0);
  }

  auto h = hst_ring({1, 1}, zn(4));
  CHECK(h.order() == 64);
  CHECK(oracle::is_cdelta(h));
  for (Index a = 0; a < h.order(); ++a) {
    auto c = h.coords(a);  // a - d = s c and d - f = t e with s = t = 1
    CHECK(c[0] == (c[4] + c[3]) % 4);
    CHECK(c[4] == (c[8] + c[5]) % 4);
  }
}

TEST_CASE("corners, generated subrings, ideals and quotients") {
  auto z2 = zn(2);
  auto m2 = matrix_ring(2, z2);
  const Index e11 = mat(m2, {1, 0, 0, 0});
  auto corner = corner_ring(m2, e11);
  CHECK(corner.order() == 2);
  CHECK(check_isomorphism(RingMap{corner, z2, identity_map(2)}));
  CHECK(corner_ring(m2, m2.one()).order() == 16);
  CHECK(corner_ring(m2, m2.zero()).order() == 1);
  CHECK_THROWS_AS(corner_ring(m2, mat(m2, {0, 1, 0, 0})), Error);

  auto cd = Subset::from_indices(m2, oracle::center_indices(m2));
  for (Index d : oracle::delta_indices(m2)) cd.insert(d);
  auto sub = subring_generated(m2, cd);
  CHECK(sub.order() == 2);
  CHECK(sub.layout().embed == std::vector<Index>{m2.zero(), m2.one()});
  CHECK(oracle::is_cdelta(sub));

  auto z6 = zn(6);
  CHECK(subring_generated(z6, Subset::empty_of(z6)).order() == 6);
  CHECK(subring_generated(z6, Subset::from_indices(z6, {2})).order() == 6);
  auto t2 = triangular_ring(2, z2);
  CHECK(subring_generated(t2, Subset::empty_of(t2)).order() == 2);

  const Index e12 = mat(t2, {0, 1, 0, 0});
  auto ideal = ideal_generated(t2, Subset::from_indices(t2, {e12}));
  std::vector<Index> expected{t2.zero(), e12};
  std::sort(expected.begin(), expected.end());
  CHECK(ideal.indices() == expected);

  auto z8 = zn(8);
  auto q = quotient_ring(z8, Subset::from_indices(z8, {0, 4}));
  CHECK(q.order() == 4);
  CHECK(check_isomorphism(RingMap{q, zn(4), identity_map(4)}));
  CHECK(q.layout().projection[5] == 1);
  auto same = quotient_ring(z8, Subset::from_indices(z8, {0}));
  CHECK(check_isomorphism(RingMap{same, z8, identity_map(8)}));

  try {
    quotient_ring(z8, Subset::from_indices(z8, {0, 3}));
    FAIL("expected NotAnIdeal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAnIdeal);
  }
  // A left ideal that is not two-sided.
  auto left = Subset::from_indices(m2, {m2.zero(), e11, mat(m2, {0, 0, 1, 0}), mat(m2, {1, 0, 1, 0})});
  CHECK_THROWS_AS(quotient_ring(m2, left), Error);
}

TEST_CASE("group rings") {
  auto z2 = zn(2);
  auto rc2 = group_ring(z2, builtin_group("C2"));
  CHECK(rc2.order() == 4);
  CHECK(oracle::is_cdelta(rc2));
  auto non_units = all_but(rc2, oracle::unit_indices(rc2));
  for (Index a : non_units)
    for (Index b : non_units) CHECK(std::find(non_units.begin(), non_units.end(), rc2.add(a, b)) != non_units.end());

  auto r3 = group_ring(zn(3), builtin_group("C2"));
  CHECK(r3.order() == 9);
  CHECK(r3.is_commutative());
  CHECK(oracle::is_cdelta(r3));

  CHECK(check_isomorphism(RingMap{group_ring(z2, builtin_group("C1")), z2, identity_map(2)}));

  auto s3 = group_ring(z2, builtin_group("S3"));
  CHECK(s3.order() == 64);
  CHECK_FALSE(s3.is_commutative());
  CHECK(group_ring(z2, builtin_group("Q8")).order() == 256);

  for (const auto& name : builtin_group_names()) CHECK_NOTHROW(builtin_group(name));
  CHECK_THROWS_AS(builtin_group("C5"), Error);
  try {
    make_group("bad", 2, {0, 0, 0, 0});
    FAIL("expected NotAGroup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAGroup);
  }
}

TEST_CASE("finite fields") {
  auto gf9 = galois_field(3, 2);
  CHECK(gf9.order() == 9);
  CHECK(oracle::count_units(gf9) == 8);
  auto gf8 = galois_field(2, 3);
  CHECK(oracle::count_units(gf8) == 7);
  CHECK(galois_field(5, 1).order() == 5);
  CHECK_THROWS_AS(galois_field(4, 1), Error);
}
