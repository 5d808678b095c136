#include "cdelta/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>

#include "cdelta/cache.hpp"
#include "cdelta/expression.hpp"
#include "cdelta/report.hpp"

#ifndef CDELTA_DEFAULT_CORPUS
#define CDELTA_DEFAULT_CORPUS "data/standard_corpus.json"
#endif

namespace cdelta {

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OrderCapExceeded:
      return kExitCap;
    case ErrorCode::InternalInconsistency:
    case ErrorCode::NotASubring:
    case ErrorCode::RingMismatch:
      return kExitInternal;
    default:
      return kExitInput;
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int exit_code_for_name(const std::string& name) {
  for (int c = 0; c <= static_cast<int>(ErrorCode::IoError); ++c) {
    const auto code = static_cast<ErrorCode>(c);
    if (to_string(code) == name) return exit_code_for(code);
  }
  return kExitInternal;
}

struct GlobalFlags {
  std::size_t order_cap = kDefaultOrderCap;
  std::size_t threads = 0;
  long seed = 0;
  BuildOptions build() const { return BuildOptions{order_cap}; }
};

/// Writes `document` to `path` ("-" is `out`). Returns true when it went to `out`.
bool emit_json(const Json& document, const std::string& path, std::ostream& out) {
  const std::string text = serialize(document);
  if (path == "-") {
    out << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  f << text;
  if (!f) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
  return false;
}

std::string default_corpus() {
  if (const char* env = std::getenv("CDELTA_CORPUS"); env != nullptr && *env != '\0') return env;
  return CDELTA_DEFAULT_CORPUS;
}

int run_analyze(const GlobalFlags& g, const std::string& expr, bool full_sets, const std::string& json,
                std::ostream& out) {
  const auto start = Clock::now();
  RingAnalysis an(build_expression(expr, g.build()));
  const PropertyReport& rep = an.report();
  const Json doc = analysis_report(an, expr, full_sets, ms_since(start));
  if (!json.empty() && emit_json(doc, json, out)) return kExitOk;
  out << "ring: " << an.ring().name() << "\n";
  for (const auto& n : PropertyReport::cardinality_names()) out << n << ": " << *rep.cardinality(n) << "\n";
  for (const auto& n : PropertyReport::predicate_names())
    out << n << ": " << (*rep.predicate(n) ? "true" : "false") << "\n";
  if (auto a = an.first_undecomposable(DecompositionKind::CDelta))
    out << "first element without a CDelta decomposition: " << an.ring().label(*a) << " (index " << *a << ")\n";
  if (full_sets) {
    out << "elements:\n";
    for (Index a = 0; a < an.ring().order(); ++a) out << "  " << a << " = " << an.ring().label(a) << "\n";
  }
  return kExitOk;
}

int run_decompose(const GlobalFlags& g, const std::string& expr, const std::string& element,
                  const std::string& kind_text, const std::string& json, std::ostream& out) {
  const DecompositionKind kind = parse_kind(kind_text);
  const FiniteRing ring = build_expression(expr, g.build());
  const Index a = resolve_element(ring, parse_element(element));
  RingAnalysis an(ring);
  const DecompositionWitness w = an.decompose(a, kind);
  const Json doc = decomposition_report(an, expr, w);
  if (!json.empty() && emit_json(doc, json, out)) return kExitOk;
  out << "ring: " << ring.name() << "\n";
  out << "element: " << ring.label(a) << " (index " << a << ")\n";
  out << "kind: " << to_string(kind) << "\n";
  out << "found: " << (w.found ? "true" : "false") << "\n";
  for (const auto& p : w.parts) out << "  part: " << ring.label(ring.index_of(p)) << "\n";
  return kExitOk;
}

int run_verify(const GlobalFlags& g, const std::string& corpus_path, const std::vector<std::string>& checks,
               const std::string& json, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  std::string corpus_name;
  const auto entries = load_corpus(corpus_path, &corpus_name);
  std::vector<CorpusEntry> corpus;
  const BuildOptions opts = g.build();
  for (const auto& e : entries) corpus.push_back({e.name, [expr = e.expression, opts] { return build_expression(expr, opts); }});
  const SuiteReport report = run_suite(corpus, checks, {}, g.threads);
  const Json doc = suite_report(report, corpus_name, ms_since(start));

  const bool json_on_stdout = !json.empty() && emit_json(doc, json, out);
  if (!json_on_stdout) {
    for (const auto& r : report.results)
      if (r.verdict == Verdict::Fail) {
        out << "FAIL " << r.check_id << " on " << r.ring_name << ": " << r.detail << "\n";
        for (const auto& w : r.witness) out << "  " << w.role << " = " << w.label << " in " << w.ring << "\n";
      }
    out << report.rings.size() << " rings x " << report.checks.size() << " checks: " << report.count(Verdict::Pass)
        << " pass, " << report.count(Verdict::Fail) << " fail, " << report.count(Verdict::NotApplicable)
        << " not applicable, " << report.errors.size() << " errors\n";
  }
  for (const auto& e : report.errors)
    err << "error: " << e.ring_name << (e.check_id.empty() ? "" : " / " + e.check_id) << ": " << e.code << ": "
        << e.message << "\n";
  if (!report.errors.empty()) return exit_code_for_name(report.errors.front().code);
  return report.count(Verdict::Fail) == 0 ? kExitOk : kExitCheckFail;
}

int run_search(const GlobalFlags& g, const std::string& corpus_path, const std::string& where, const std::string& json,
               std::ostream& out) {
  const Predicate predicate = Predicate::parse(where);
  const auto entries = load_corpus(corpus_path);
  std::vector<FiniteRing> rings;
  std::vector<std::string> names;
  for (const auto& e : entries) {
    rings.push_back(build_expression(e.expression, g.build()));
    names.push_back(e.name);
  }
  const auto matches = search(rings, predicate, g.threads);
  const Json doc = search_report(matches, names, where);
  if (!json.empty() && emit_json(doc, json, out)) return kExitOk;
  for (const auto& m : matches) out << names[m.position] << "\n";
  out << matches.size() << " of " << rings.size() << " rings match\n";
  return kExitOk;
}

int run_cache(const GlobalFlags& g, const std::string& expr, const std::string& out_path, const std::string& from,
              std::ostream& out) {
  if (expr.empty() == from.empty())
    throw Error(ErrorCode::InvalidParameter, "cache needs exactly one of <expr> and --from-cache");
  if (!from.empty()) {
    const FiniteRing ring = read_cache(from, g.build());
    if (!out_path.empty()) write_cache(ring, out_path);
    out << "loaded " << ring.name() << ": order " << ring.order() << ", ring axioms verified\n";
    return kExitOk;
  }
  if (out_path.empty()) throw Error(ErrorCode::InvalidParameter, "cache <expr> needs --out");
  const FiniteRing ring = build_expression(expr, g.build());
  write_cache(ring, out_path);
  out << "wrote " << ring.name() << " (order " << ring.order() << ") to " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int execute_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite ring workbench: central Delta decompositions and related properties", "cdelta"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags g;
  app.add_option("--order-cap", g.order_cap, "Largest ring order that may be built")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();
  app.add_option("--seed", g.seed, "Reserved; every computation is deterministic");

  std::string expr, element, kind = "cdelta", json, corpus, where, out_path, from;
  std::vector<std::string> checks;
  bool full_sets = false;

  auto* analyze = app.add_subcommand("analyze", "Classify a ring and report its properties");
  analyze->add_option("expr", expr, "Ring expression")->required();
  analyze->add_flag("--full-sets", full_sets, "Include element labels and every subset");
  analyze->add_option("--json", json, "Write the JSON report to this path ('-' for stdout)");

  auto* decompose = app.add_subcommand("decompose", "Search for a decomposition of one element");
  decompose->add_option("expr", expr, "Ring expression")->required();
  decompose->add_option("--element", element, "Element literal")->required();
  decompose->add_option("--kind", kind, "Decomposition kind")->capture_default_str();
  decompose->add_option("--json", json, "Write the JSON witness to this path ('-' for stdout)");

  auto* verify = app.add_subcommand("verify", "Run the theorem suite over a corpus");
  verify->add_option("--corpus", corpus, "Corpus JSON file (default: the standard corpus)");
  verify->add_option("--checks", checks, "Comma-separated check ids (default: all)")->delimiter(',');
  verify->add_option("--json", json, "Write the JSON suite report to this path ('-' for stdout)");

  auto* search_cmd = app.add_subcommand("search", "List corpus rings satisfying a predicate");
  search_cmd->add_option("--corpus", corpus, "Corpus JSON file")->required();
  search_cmd->add_option("--where", where, "Predicate over report fields")->required();
  search_cmd->add_option("--json", json, "Write the JSON matches to this path ('-' for stdout)");

  auto* cache = app.add_subcommand("cache", "Write or load a binary table cache");
  cache->add_option("expr", expr, "Ring expression to materialize");
  cache->add_option("--out", out_path, "Cache file to write");
  cache->add_option("--from-cache", from, "Cache file to load and verify");

  for (auto* sub : {analyze, decompose, verify, search_cmd, cache}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) return run_analyze(g, expr, full_sets, json, out);
    if (*decompose) return run_decompose(g, expr, element, kind, json, out);
    if (*verify) return run_verify(g, corpus.empty() ? default_corpus() : corpus, checks, json, out, err);
    if (*search_cmd) return run_search(g, corpus, where, json, out);
    return run_cache(g, expr, out_path, from, out);
  } catch (const SyntaxError& e) {
    err << "error: SyntaxError: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace cdelta
