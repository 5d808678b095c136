#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cdelta/cache.hpp"
#include "cdelta/cli.hpp"
#include "cdelta/constructors.hpp"
#include "cdelta/expression.hpp"
#include "cdelta/report.hpp"
#include "oracles.hpp"

using namespace cdelta;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = execute_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cdelta_unit";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

std::vector<std::uint8_t> read_bytes(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

void write_bytes(const fs::path& p, const std::vector<std::uint8_t>& b) {
  std::ofstream f(p, std::ios::binary);
  f.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

ErrorCode decode_error(const std::vector<std::uint8_t>& bytes) {
  try {
    decode_cache(bytes, "x");
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("decode succeeded");
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_CASE("expression round trip") {
  for (const char* text :
       {"Z 2", "GF(2,2)", "T(2, Z 2)", "K(0, Z 3)", "TSkew(2, GF(2,2), frob)", "Z 2 * Z 2", "M(2, Z 2)",
        "Dn(2, Z 2)", "Vn(2, Z 4)", "VnK(3, 1, Z 2)", "Sn(3, T(2, Z 2))", "Snm(2, 2, Z 2)", "L(1, 1, Z 2)",
        "H(1, 1, Z 4)", "Quot(Z 8, {4})", "Corner(M(2, Z 2), e11)", "GroupRing(Z 3, C2)", "Triv(Z 4)", "DT(Z 2)",
        "PolyQuot(Z 2, [0,0,1])", "SubringGen(M(2, Z 2), {e12})", "(Z 2 * Z 3) * Z 5", "K([1,0], Z 2 * Z 2)"}) {
    CAPTURE(text);
    const RingExpression e = parse_expression(text);
    const std::string printed = print_expression(e);
    CHECK(parse_expression(printed) == e);
    CHECK(print_expression(parse_expression(printed)) == printed);
  }
  CHECK(print_expression(parse_expression("Z2*Z2")) == "Z 2 * Z 2");
  CHECK(print_expression(parse_expression("T( 2 ,Z 2 )")) == "T(2, Z 2)");
}

TEST_CASE("expressions build the named rings") {
  CHECK(build_expression("T(2, Z 2)").name() == "T(2, Z 2)");
  CHECK(build_expression("K(0, Z 3)").order() == 81);
  const auto t = build_expression("TSkew(2, GF(2,2), frob)");
  CHECK(t.name() == "TSkew(2, GF(2,2), frob)");
  CHECK(t.order() == 16);
  CHECK(build_expression("Quot(Z 8, {4})").order() == 4);
  CHECK(build_expression("Corner(M(2, Z 2), e11)").order() == 2);
  CHECK(build_expression("GroupRing(Z 3, C2)").order() == 9);
  CHECK(build_expression("(Z 2 * Z 3) * Z 5").order() == 30);
}

TEST_CASE("syntax errors carry positions") {
  auto where = [](const char* text) {
    try {
      parse_expression(text);
    } catch (const SyntaxError& e) {
      return std::pair{e.line(), e.column()};
    }
    return std::pair<std::size_t, std::size_t>{0, 0};
  };
  CHECK(where("T(2, Z") == std::pair<std::size_t, std::size_t>{1, 7});
  CHECK(where("Q(2)") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(where("M(2,\n  Z 2") == std::pair<std::size_t, std::size_t>{2, 6});
  CHECK(where("Z 2 Z 3").first == 1);
  CHECK_THROWS_AS(build_expression("GroupRing(Z 2, C7)"), Error);
  CHECK_THROWS_AS(build_expression("TSkew(2, Z 2, bogus)"), Error);
}

TEST_CASE("element literals") {
  const auto t = build_expression("T(2, Z 5)");
  const Index a = resolve_element(t, parse_element("[[4,0],[0,0]]"));
  CHECK(t.label(a) == "[[4,0],[0,0]]");
  CHECK_THROWS_AS(resolve_element(t, parse_element("[[0,0],[1,0]]")), Error);
  const auto m = build_expression("M(2, Z 2)");
  CHECK(m.label(resolve_element(m, parse_element("e12"))) == "[[0,1],[0,0]]");
  const auto q = build_expression("Quot(Z 8, {4})");
  CHECK(resolve_element(q, parse_element("5")) == resolve_element(q, parse_element("1")));
  CHECK(print_element(parse_element("[[1, 0], [0, 1]]")) == "[[1,0],[0,1]]");
}

TEST_CASE("binary cache format") {
  const auto z6 = zn(6);
  const auto bytes = encode_cache(z6);
  CHECK(bytes.size() == 313);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "CDRL");
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 6);

  const auto m2 = matrix_ring(2, zn(2));
  const fs::path p = scratch("m2.cdrl");
  write_cache(m2, p);
  const auto back = read_cache(p);
  CHECK(back.order() == 16);
  CHECK(std::equal(back.add_table().begin(), back.add_table().end(), m2.add_table().begin()));
  CHECK(std::equal(back.mul_table().begin(), back.mul_table().end(), m2.mul_table().begin()));
  CHECK(encode_cache(back) == read_bytes(p));

  auto truncated = bytes;
  truncated.resize(100);
  CHECK(decode_error(truncated) == ErrorCode::ChecksumMismatch);
  CHECK(decode_error({'C', 'D'}) == ErrorCode::BadMagic);
  auto magic = bytes;
  magic[0] = 'X';
  CHECK(decode_error(magic) == ErrorCode::BadMagic);
  auto version = bytes;
  version[4] = 2;
  CHECK(decode_error(version) == ErrorCode::VersionUnsupported);
  auto flipped = bytes;
  flipped[40] ^= 1;
  CHECK(decode_error(flipped) == ErrorCode::ChecksumMismatch);
  auto extended = bytes;
  extended.push_back(0);
  CHECK(decode_error(extended) == ErrorCode::ChecksumMismatch);

  // A well-formed file holding non-ring tables is rejected by verification.
  auto t = oracle::residue_tables(4);
  t.second[2][2] = 1;
  std::vector<std::uint8_t> forged(bytes.begin(), bytes.begin() + 5);
  auto u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) forged.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  u32(4);
  u32(0);
  u32(1);
  for (const auto* table : {&t.first, &t.second})
    for (const auto& row : *table)
      for (auto v : row) u32(static_cast<std::uint32_t>(v));
  const auto sum = cache_checksum(forged);
  forged.insert(forged.end(), sum.begin(), sum.end());
  CHECK(decode_error(forged) == ErrorCode::AxiomViolation);
  BuildOptions small;
  small.order_cap = 3;
  CHECK_THROWS_AS(decode_cache(encode_cache(zn(4)), "x", small), Error);
}

TEST_CASE("cli analyze and decompose") {
  const auto a = cli({"analyze", "M(2, Z 2)", "--json", "-"});
  REQUIRE(a.code == 0);
  const auto j = Json::parse(a.out);
  CHECK(j["properties"]["CDelta"] == false);
  CHECK(j["cardinalities"]["units"] == 6);
  CHECK(j["order"] == 16);
  CHECK(j.contains("timing"));
  CHECK_FALSE(Json::parse(canonical_body(j)).contains("timing"));

  const auto full = Json::parse(cli({"analyze", "Z 4", "--full-sets", "--json", "-"}).out);
  CHECK(full["sets"]["delta"] == Json::array({0, 2}));
  CHECK(full["elements"].size() == 4);

  const auto d = cli({"decompose", "T(2, Z 5)", "--element", "[[4,0],[0,0]]", "--kind", "cdelta", "--json", "-"});
  REQUIRE(d.code == 0);
  CHECK(Json::parse(d.out)["found"] == false);
  const auto z4 = Json::parse(cli({"decompose", "Z 4", "--element", "3", "--kind", "cdelta", "--json", "-"}).out);
  CHECK(z4["found"] == true);
  CHECK(z4["verified"] == true);
  CHECK(cli({"decompose", "Z 4", "--element", "3", "--kind", "bogus"}).code == kExitInput);
}

TEST_CASE("cli exit codes") {
  CHECK(cli({"analyze", "T(2, Z"}).code == kExitInput);
  CHECK(cli({"analyze", "GroupRing(Z 2, C9)"}).code == kExitInput);
  CHECK(cli({"analyze", "M(2, Z 4)", "--order-cap", "100"}).code == kExitCap);
  CHECK(cli({"--order-cap", "100", "analyze", "M(2, Z 4)"}).code == kExitCap);
  CHECK(cli({"frobnicate"}).code == kExitInput);
  CHECK(cli({}).code == kExitInput);
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({"cache", "--from-cache", scratch("missing.cdrl").string()}).code == kExitInput);
  CHECK(exit_code_for(ErrorCode::InternalInconsistency) == kExitInternal);
  CHECK(exit_code_for(ErrorCode::ChecksumMismatch) == kExitInput);
}

TEST_CASE("cli verify, search and cache") {
  const fs::path corpus = scratch("corpus.json");
  write_text(corpus, R"j({"name": "tiny", "rings": [{"name": "z4", "expression": "Z 4"}, "M(2, Z 2)"]})j");
  const auto v = cli({"verify", "--corpus", corpus.string(), "--checks", "lemma_2_2,remark_mn", "--json", "-"});
  REQUIRE(v.code == 0);
  const auto j = Json::parse(v.out);
  CHECK(j["rings"] == Json::array({"z4", "M(2, Z 2)"}));
  CHECK(j["results"].size() == 4);
  CHECK(j["summary"]["fail"] == 0);
  const auto again = cli({"verify", "--corpus", corpus.string(), "--checks", "lemma_2_2,remark_mn", "--json", "-",
                          "--threads", "1"});
  CHECK(canonical_body(Json::parse(again.out)) == canonical_body(j));

  const fs::path failing = scratch("failing.json");
  write_text(failing, R"j({"rings": ["GF(2,2)"]})j");
  const auto f = cli({"verify", "--corpus", failing.string(), "--checks", "prop_3_17"});
  CHECK(f.code == kExitCheckFail);
  CHECK(f.out.find("FAIL prop_3_17") != std::string::npos);

  const fs::path broken = scratch("broken.json");
  write_text(broken, R"j({"rings": ["Z 3", "T(2, Z"]})j");
  CHECK(cli({"verify", "--corpus", broken.string(), "--checks", "lemma_2_2"}).code == kExitInput);
  write_text(broken, "{not json");
  CHECK(cli({"verify", "--corpus", broken.string()}).code == kExitInput);
  CHECK(cli({"verify", "--corpus", corpus.string(), "--checks", "nope"}).code == kExitInput);

  const auto s = cli({"search", "--corpus", corpus.string(), "--where", "!CDelta", "--json", "-"});
  REQUIRE(s.code == 0);
  const auto sj = Json::parse(s.out);
  REQUIRE(sj["matches"].size() == 1);
  CHECK(sj["matches"][0]["name"] == "M(2, Z 2)");
  CHECK(cli({"search", "--corpus", corpus.string(), "--where", "CDelta &"}).code == kExitInput);

  const fs::path bin = scratch("z6.cdrl");
  fs::remove(bin);
  CHECK(cli({"cache", "Z 6", "--out", bin.string()}).code == 0);
  CHECK(fs::file_size(bin) == 313);
  CHECK(cli({"cache", "--from-cache", bin.string()}).code == 0);
  auto bytes = read_bytes(bin);
  bytes[20] ^= 0xff;
  write_bytes(bin, bytes);
  const auto bad = cli({"cache", "--from-cache", bin.string()});
  CHECK(bad.code == kExitInput);
  CHECK(bad.err.find("ChecksumMismatch") != std::string::npos);
  CHECK(cli({"cache", "--out", bin.string()}).code == kExitInput);
}
