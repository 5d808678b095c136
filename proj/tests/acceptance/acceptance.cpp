// Acceptance run: one PASS/FAIL line per criterion. Every comparison is exact
// set or boolean equality against the brute-force oracles in tests/unit.
// The process exits nonzero when any criterion fails.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "../unit/oracles.hpp"
#include "cdelta/analysis.hpp"
#include "cdelta/cache.hpp"
#include "cdelta/cli.hpp"
#include "cdelta/constructors.hpp"
#include "cdelta/expression.hpp"
#include "cdelta/report.hpp"
#include "cdelta/theorems.hpp"

using namespace cdelta;
namespace fs = std::filesystem;

namespace {

struct CorpusRing {
  std::string name;
  RingExpression expr;
  FiniteRing ring;
  std::vector<Index> delta;  // oracle
  std::vector<Index> center;
  bool commutative = false;
  bool cdelta = false;
};

struct Criterion {
  int number;
  std::string title;
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 6) notes.push_back(why);
  }
};

using Ids = std::vector<Index>;

Ids indices(const Subset& s) { return s.indices(); }

bool contains(const Ids& sorted, Index a) { return std::binary_search(sorted.begin(), sorted.end(), a); }

Ids filter(const FiniteRing& r, const std::function<bool(Index)>& keep) {
  Ids out;
  for (Index a = 0; a < r.order(); ++a)
    if (keep(a)) out.push_back(a);
  return out;
}

/// Exhaustive bijection + unital homomorphism test, independent of the library.
bool is_isomorphism(const FiniteRing& a, const FiniteRing& b, const std::vector<Index>& f) {
  if (a.order() != b.order() || f.size() != a.order()) return false;
  std::vector<char> hit(b.order(), 0);
  for (Index x : f) {
    if (x >= b.order() || hit[x]) return false;
    hit[x] = 1;
  }
  if (f[a.one()] != b.one()) return false;
  for (Index x = 0; x < a.order(); ++x)
    for (Index y = 0; y < a.order(); ++y)
      if (f[a.add(x, y)] != b.add(f[x], f[y]) || f[a.mul(x, y)] != b.mul(f[x], f[y])) return false;
  return true;
}

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = execute_command(args, o, e);
  if (out) *out = o.str();
  return code;
}

// Criterion 1: Delta formulas of the structured constructions.
Ids diagonal_formula(const FiniteRing& ring, const Ids& base_delta, std::size_t n) {
  return filter(ring, [&](Index x) {
    const auto c = ring.coords(x);
    for (std::size_t i = 0; i < n; ++i)
      if (!contains(base_delta, c[i * (n + 1)])) return false;
    return true;
  });
}

std::optional<Ids> structural_formula(const RingExpression& e, const FiniteRing& ring) {
  using K = RingExpression::Kind;
  if (e.children.empty()) return std::nullopt;
  const FiniteRing base = build_expression(e.children[0]);
  const Ids base_delta = oracle::delta_indices(base);
  switch (e.kind) {
    case K::M: {
      if (e.ints[0] != 2) return std::nullopt;
      const Ids j = oracle::jacobson_indices(base);  // Delta(M2(R)) = M2(J(R))
      return filter(ring, [&](Index x) {
        const auto c = ring.coords(x);
        return std::all_of(c.begin(), c.end(), [&](Index v) { return contains(j, v); });
      });
    }
    case K::L:
    case K::H: return diagonal_formula(ring, base_delta, 3);
    case K::K:
      if (!base.is_commutative() || ring.coords(ring.one()).size() != 4) return std::nullopt;
      if (resolve_element(base, e.elements[0]) != base.zero()) return std::nullopt;
      return diagonal_formula(ring, base_delta, 2);
    case K::Triv:
    case K::TSkew: return filter(ring, [&](Index x) { return contains(base_delta, ring.coords(x)[0]); });
    default: return std::nullopt;
  }
}

void criterion_1(Criterion& c, const std::vector<CorpusRing>& corpus) {
  std::vector<std::pair<std::string, FiniteRing>> targets;
  std::vector<RingExpression> exprs;
  for (const auto& r : corpus) {
    targets.push_back({r.name, r.ring});
    exprs.push_back(r.expr);
  }
  // The same constructions over further small bases.
  for (const char* base : {"Z 2", "Z 3", "Z 4", "GF(2,2)", "Z 2 * Z 2"}) {
    const std::string b = base;
    std::vector<std::string> extra{"M(2, " + b + ")", "K(0, " + b + ")", "Triv(" + b + ")",
                                   "TSkew(2, " + b + ", id)", "TSkew(3, " + b + ", id)"};
    for (const char* st : {"0, 0", "0, 1", "1, 0", "1, 1"}) {
      extra.push_back("L(" + std::string(st) + ", " + b + ")");
      extra.push_back("H(" + std::string(st) + ", " + b + ")");
    }
    if (b == "GF(2,2)") extra.push_back("TSkew(3, GF(2,2), frob)");
    for (const auto& x : extra) {
      const auto e = parse_expression(x);
      try {
        targets.push_back({x, build_expression(e)});
        exprs.push_back(e);
      } catch (const Error&) {
        // Parameters that are not central in this base are outside the family.
      }
    }
  }
  std::size_t compared = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& [name, ring] = targets[i];
    const auto formula = structural_formula(exprs[i], ring);
    if (!formula) continue;
    ++compared;
    const Ids brute = oracle::delta_indices(ring);
    const Ids lib = indices(RingAnalysis(ring).delta());
    if (*formula != brute) c.fail(name + ": formula differs from brute-force Delta");
    if (lib != brute) c.fail(name + ": library Delta differs from brute force");
  }
  c.notes.insert(c.notes.begin(), std::to_string(compared) + " constructions compared");
}

void criterion_2_10(Criterion& c2, Criterion& c10, const fs::path& dir) {
  const fs::path first = dir / "verify_1.json", second = dir / "verify_2.json";
  const int code = cli({"verify", "--json", first.string()});
  const Json doc = Json::parse(std::ifstream(first));
  const std::size_t rings = doc["rings"].size(), checks = doc["checks"].size();
  c2.notes.push_back(std::to_string(rings) + " rings x " + std::to_string(checks) + " checks, exit " +
                     std::to_string(code));
  if (rings < 28) c2.fail("corpus has fewer than 28 rings");
  if (checks < 35) c2.fail("catalog has fewer than 35 checks");
  if (!doc["errors"].empty()) c2.fail(std::to_string(doc["errors"].size()) + " suite errors");
  std::size_t fails = 0, replayed = 0;
  for (const auto& r : doc["results"]) {
    if (r["verdict"] != "fail") continue;
    ++fails;
    if (r["replayed"] == true && !r["witness"].empty()) ++replayed;
    c2.fail("fail: " + r["check"].get<std::string>() + " on " + r["ring"].get<std::string>());
  }
  if (fails != 0) c2.notes.push_back(std::to_string(replayed) + "/" + std::to_string(fails) + " failures replay");
  if (code != 0) c2.pass = false;

  cli({"verify", "--json", second.string(), "--threads", "1"});
  const Json again = Json::parse(std::ifstream(second));
  if (canonical_body(doc) != canonical_body(again)) c10.fail("canonical report bodies differ");
  c10.notes.push_back(std::to_string(canonical_body(doc).size()) + " canonical bytes compared");
}

void criterion_3(Criterion& c, const std::vector<CorpusRing>& corpus, const fs::path& corpus_file) {
  for (const auto& r : corpus) {
    const auto& rep = RingAnalysis(r.ring).report();
    if (rep.cn != rep.cj || rep.cj != rep.cdelta) c.fail(r.name + ": CN, CJ and CDelta disagree");
    if (rep.cdelta != r.cdelta) c.fail(r.name + ": CDelta differs from the oracle");
  }
  std::string out;
  if (cli({"search", "--corpus", corpus_file.string(), "--where", "CDelta & !CJ", "--json", "-"}, &out) != 0)
    c.fail("search failed");
  else if (!Json::parse(out)["matches"].empty())
    c.fail("\"CDelta & !CJ\" matched corpus rings");
}

void criterion_4(Criterion& c, const std::vector<CorpusRing>& corpus) {
  std::map<std::string, bool> expected{
      {"M(2, Z 2)", false}, {"T(2, Z 2)", false}, {"T(2, Z 5)", false}, {"K(0, Z 2)", false},
      {"K(0, Z 3)", false}, {"Sn(3, T(2, Z 2))", false}, {"Triv(Z 2)", true}, {"Triv(Z 4)", true},
      {"DT(Z 2)", true},    {"H(1, 1, Z 4)", true},     {"TSkew(2, GF(2,2), frob)", true},
  };
  for (const auto& r : corpus)
    if (r.commutative) expected.emplace(r.name, true);
  std::size_t seen = 0;
  for (const auto& r : corpus) {
    auto it = expected.find(r.name);
    if (it == expected.end()) continue;
    ++seen;
    const bool lib = RingAnalysis(r.ring).report().cdelta;
    if (lib != r.cdelta) c.fail(r.name + ": library and oracle disagree");
    if (r.cdelta != it->second)
      c.fail(r.name + ": expected " + (it->second ? "CDelta" : "not CDelta") + ", oracle says otherwise");
  }
  if (seen != expected.size()) c.fail("some expected rings are missing from the corpus");
  c.notes.insert(c.notes.begin(), std::to_string(seen) + " verdicts compared");
}

void criterion_5(Criterion& c, const std::vector<CorpusRing>& corpus) {
  std::size_t rings = 0;
  for (const auto& r : corpus) {
    if (!r.cdelta) continue;
    ++rings;
    const FiniteRing& R = r.ring;
    const Ids units = oracle::unit_indices(R), jac = oracle::jacobson_indices(R);
    const Ids nil = oracle::nilpotent_indices(R);
    auto bad = [&](const std::string& what) { c.fail(r.name + ": " + what); };
    for (Index a = 0; a < R.order(); ++a) {
      const Index sq = R.mul(a, a);
      for (Index b = 0; b < R.order(); ++b) {
        if (!contains(r.delta, R.sub(R.mul(a, b), R.mul(b, a)))) return bad("commutator outside Delta");
        if (R.mul(a, b) == R.one() && R.mul(b, a) != R.one()) return bad("not Dedekind-finite");
      }
      if (contains(r.delta, sq) && !contains(r.delta, a)) return bad("a^2 in Delta but a not");
      if (contains(jac, sq) && !contains(jac, a)) return bad("a^2 in J but a not");
      if (std::none_of(r.center.begin(), r.center.end(), [&](Index z) { return contains(units, R.sub(a, z)); }))
        return bad("not CU");
    }
    for (Index n : nil)
      if (!contains(jac, n) || !contains(r.delta, n)) return bad("nilpotent outside J or Delta");
    for (Index e : oracle::idempotent_indices(R))
      if (!oracle::is_cdelta(corner_ring(R, e))) return bad("corner ring is not CDelta");
    for (const char* id : {"prop_4_3_i", "prop_4_3_ii", "prop_4_3_iii", "prop_4_3_iv", "prop_4_3_v", "prop_4_3_vi",
                           "prop_4_3_vii", "prop_4_3_viii"})
      if (run_check(id, R).verdict == Verdict::Fail) bad(std::string(id) + " failed in the catalog");
  }
  c.notes.push_back(std::to_string(rings) + " CDelta rings checked");
}

void criterion_6(Criterion& c, const std::vector<CorpusRing>& corpus) {
  for (const auto& r : corpus) {
    if (!r.cdelta) continue;
    const FiniteRing& R = r.ring;
    bool unique = true;
    for (Index a = 0; a < R.order() && unique; ++a) {
      std::size_t n = 0;
      for (Index z : r.center) n += contains(r.delta, R.sub(a, z));
      unique = n == 1;
    }
    const bool meet_zero = std::count_if(r.center.begin(), r.center.end(), [&](Index z) {
                             return contains(r.delta, z);
                           }) == 1;
    if (unique != meet_zero) c.fail(r.name + ": uniqueness and Delta meet C = {0} disagree");
    if (RingAnalysis(R).report().uniquely_cdelta != unique) c.fail(r.name + ": library uniqueness differs");
  }
  const auto z4 = zn(4);
  const Ids d = oracle::delta_indices(z4);
  if (!(contains(d, 0) && contains(d, 2) && z4.is_central(2) && z4.is_central(0) && z4.add(2, 0) == 2 &&
        z4.add(0, 2) == 2))
    c.fail("Z 4: 2 = 2 + 0 = 0 + 2 not witnessed");
  if (RingAnalysis(z4).count_cdelta_decompositions(2) != 2) c.fail("Z 4: element 2 should have two decompositions");
}

void criterion_7(Criterion& c) {
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) c.fail(what);
  };
  const auto z2 = zn(2);
  const auto k1 = generalized_matrix(1, z2);
  const auto m2 = matrix_ring(2, z2);
  std::vector<Index> f(k1.order());
  for (Index x = 0; x < k1.order(); ++x) f[x] = *m2.find(k1.coords(x));
  expect(is_isomorphism(k1, m2, f) && check_isomorphism({k1, m2, f}), "K(1, Z 2) vs M(2, Z 2)");

  const auto l = lst_ring({0, 0}, z2);
  const std::vector<FiniteRing> three{z2, z2, z2};
  const auto cube = direct_product(three);
  std::vector<Index> p(l.order());
  for (Index x = 0; x < l.order(); ++x) {
    const auto cc = l.coords(x);
    p[x] = *cube.find(std::vector<Index>{cc[0], cc[4], cc[8]});
  }
  expect(is_isomorphism(l, cube, p) && check_isomorphism({l, cube, p}), "L(0, 0, Z 2) vs Z 2^3");

  const auto gf = galois_field(2, 2);
  const auto alpha = frobenius(gf);
  const auto t = skew_triangular(2, gf, alpha, "frob");
  const auto q = skew_poly_quotient(2, gf, alpha, "frob");
  std::vector<Index> phi(t.order());
  for (Index x = 0; x < t.order(); ++x) phi[x] = *q.find(t.coords(x));
  expect(is_isomorphism(t, q, phi) && check_isomorphism({t, q, phi}), "T(2, GF(4), frob) vs GF(4)[x;frob]/(x^2)");

  const auto z8 = zn(8);
  Subset ideal = Subset::empty_of(z8);
  ideal.insert(0);
  ideal.insert(4);
  const auto quot = quotient_ring(z8, ideal);
  const auto z4 = zn(4);
  std::vector<Index> g(quot.order());
  for (Index x = 0; x < quot.order(); ++x) g[x] = quot.layout().embed.at(x) % 4;
  expect(is_isomorphism(quot, z4, g) && check_isomorphism({quot, z4, g}), "Z 8 / {0, 4} vs Z 4");
}

void criterion_8(Criterion& c, const std::vector<CorpusRing>& corpus) {
  const auto m2 = matrix_ring(2, zn(2));
  RingAnalysis am(m2);
  if (oracle::nil_star_indices(m2) != Ids{m2.zero()} || indices(am.nil_star()) != Ids{m2.zero()})
    c.fail("nil_star(M(2, Z 2)) is not {0}");
  if (oracle::nilpotent_indices(m2).size() <= 1) c.fail("M(2, Z 2) should have nonzero nilpotents");
  for (const auto& r : corpus) {
    const FiniteRing& R = r.ring;
    RingAnalysis an(R);
    const Ids ns = indices(an.nil_star());
    if (ns != oracle::nil_star_indices(R)) c.fail(r.name + ": nil_star differs from the oracle");
    if (r.commutative && ns != oracle::nilpotent_indices(R)) c.fail(r.name + ": nil_star != nilpotents");
    for (Index a : ns) {
      for (Index b : ns)
        if (!contains(ns, R.sub(a, b))) return c.fail(r.name + ": nil_star not closed under subtraction");
      for (Index x = 0; x < R.order(); ++x)
        if (!contains(ns, R.mul(x, a)) || !contains(ns, R.mul(a, x)))
          return c.fail(r.name + ": nil_star not a two-sided ideal");
    }
  }
}

void criterion_9(Criterion& c, const std::vector<CorpusRing>& corpus, const fs::path& dir) {
  auto rejects = [](const std::vector<std::uint8_t>& bytes, std::initializer_list<ErrorCode> codes) {
    try {
      decode_cache(bytes, "corrupt");
    } catch (const Error& e) {
      return std::find(codes.begin(), codes.end(), e.code()) != codes.end();
    }
    return false;
  };
  for (const auto& r : corpus) {
    const fs::path p = dir / "ring.cdrl";
    write_cache(r.ring, p);
    const auto back = read_cache(p);
    const auto a1 = r.ring.add_table(), m1 = r.ring.mul_table(), a2 = back.add_table(), m2 = back.mul_table();
    if (!std::equal(a1.begin(), a1.end(), a2.begin(), a2.end()) || !std::equal(m1.begin(), m1.end(), m2.begin(), m2.end()) ||
        back.zero() != r.ring.zero() || back.one() != r.ring.one())
      c.fail(r.name + ": round trip changed the tables");
    const auto bytes = encode_cache(r.ring);
    if (encode_cache(back) != bytes) c.fail(r.name + ": re-encoding differs");
    auto truncated = bytes;
    truncated.resize(bytes.size() / 2);
    auto flipped = bytes;
    flipped[bytes.size() / 2] ^= 0x5a;
    auto magic = bytes;
    magic[1] = 'X';
    auto version = bytes;
    version[4] = 7;
    const std::vector<std::uint8_t> tiny(bytes.begin(), bytes.begin() + 3);
    if (!rejects(truncated, {ErrorCode::ChecksumMismatch, ErrorCode::BadMagic}) ||
        !rejects(flipped, {ErrorCode::ChecksumMismatch}) || !rejects(magic, {ErrorCode::BadMagic}) ||
        !rejects(version, {ErrorCode::VersionUnsupported}) || !rejects(tiny, {ErrorCode::BadMagic, ErrorCode::ChecksumMismatch}))
      c.fail(r.name + ": a corrupted cache was not rejected with the specified error");
  }
}

}  // namespace

int main() {
  const fs::path corpus_file = CDELTA_DEFAULT_CORPUS;
  const fs::path dir = fs::temp_directory_path() / "cdelta_acceptance";
  fs::create_directories(dir);

  std::vector<CorpusRing> corpus;
  for (const auto& e : load_corpus(corpus_file.string())) {
    CorpusRing r{e.name, parse_expression(e.expression), build_expression(e.expression), {}, {}, false, false};
    r.delta = oracle::delta_indices(r.ring);
    r.center = oracle::center_indices(r.ring);
    r.commutative = r.center.size() == r.ring.order();
    r.cdelta = oracle::is_cdelta(r.ring);
    corpus.push_back(std::move(r));
  }

  std::vector<Criterion> cs{{1, "structural Delta formulas match brute force"},
                            {2, "verify on the standard corpus exits 0"},
                            {3, "CN = CJ = CDelta on the corpus; CDelta & !CJ is empty"},
                            {4, "known CDelta verdicts reproduced"},
                            {5, "consequences of CDelta hold on every CDelta corpus ring"},
                            {6, "unique decompositions iff Delta meets the center in 0"},
                            {7, "isomorphism verifications"},
                            {8, "nil_star oracle"},
                            {9, "cache round trip and corruption rejection"},
                            {10, "verify --json is deterministic"}};
  auto guarded = [&](Criterion& c, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
  };
  guarded(cs[0], [&] { criterion_1(cs[0], corpus); });
  guarded(cs[1], [&] { criterion_2_10(cs[1], cs[9], dir); });
  guarded(cs[2], [&] { criterion_3(cs[2], corpus, corpus_file); });
  guarded(cs[3], [&] { criterion_4(cs[3], corpus); });
  guarded(cs[4], [&] { criterion_5(cs[4], corpus); });
  guarded(cs[5], [&] { criterion_6(cs[5], corpus); });
  guarded(cs[6], [&] { criterion_7(cs[6]); });
  guarded(cs[7], [&] { criterion_8(cs[7], corpus); });
  guarded(cs[8], [&] { criterion_9(cs[8], corpus, dir); });

  int failed = 0;
  for (const auto& c : cs) {
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title;
    for (std::size_t i = 0; i < c.notes.size(); ++i) std::cout << (i ? "; " : " (") << c.notes[i];
    std::cout << (c.notes.empty() ? "" : ")") << "\n";
    failed += !c.pass;
  }
  std::cout << (10 - failed) << "/10 criteria pass\n";
  return failed == 0 ? 0 : 1;
}
