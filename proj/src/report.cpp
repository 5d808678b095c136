#include "cdelta/report.hpp"

#include <fstream>
#include <sstream>

namespace cdelta {
namespace {

Json element_json(const FiniteRing& r, Index a) { return Json{{"index", a}, {"label", r.label(a)}}; }

Json optional_element(const FiniteRing& r, const std::optional<Index>& a) {
  return a ? element_json(r, *a) : Json(nullptr);
}

Json header(const char* schema) {
  Json j;
  j["schema"] = schema;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  return j;
}

}  // namespace

Json analysis_report(const RingAnalysis& an, const std::string& expression, bool full_sets, double elapsed_ms) {
  const FiniteRing& r = an.ring();
  const PropertyReport& rep = an.report();
  Json j = header("cdelta/analysis-report");
  j["expression"] = expression;
  j["name"] = r.name();
  j["order"] = r.order();
  Json props = Json::object();
  for (const auto& n : PropertyReport::predicate_names()) props[n] = *rep.predicate(n);
  j["properties"] = std::move(props);
  Json card = Json::object();
  for (const auto& n : PropertyReport::cardinality_names()) card[n] = *rep.cardinality(n);
  j["cardinalities"] = std::move(card);

  Json w = Json::object();
  Json undecomposable = Json::object();
  for (DecompositionKind k : all_decomposition_kinds())
    undecomposable[std::string(to_string(k))] = optional_element(r, an.first_undecomposable(k));
  w["first_undecomposable"] = std::move(undecomposable);
  if (auto d = an.dedekind_failure())
    w["dedekind_finite"] = Json{{"a", element_json(r, d->first)}, {"b", element_json(r, d->second)}};
  else
    w["dedekind_finite"] = nullptr;
  w["exchange"] = optional_element(r, an.exchange_failure());
  w["semipotent"] = optional_element(r, an.semipotent_failure());
  j["witnesses"] = std::move(w);

  if (full_sets) {
    Json labels = Json::array();
    for (Index a = 0; a < r.order(); ++a) labels.push_back(r.label(a));
    j["elements"] = std::move(labels);
    Json sets = Json::object();
    sets["units"] = an.units().indices();
    sets["jacobson"] = an.jacobson().indices();
    sets["delta"] = an.delta().indices();
    sets["center"] = an.center().indices();
    sets["nilpotents"] = an.nilpotents().indices();
    sets["nilStar"] = an.nil_star().indices();
    sets["idempotents"] = an.idempotents().indices();
    j["sets"] = std::move(sets);
  }
  j["timing"] = Json{{"elapsed_ms", elapsed_ms}};
  return j;
}

Json decomposition_report(const RingAnalysis& an, const std::string& expression, const DecompositionWitness& w) {
  const FiniteRing& r = an.ring();
  Json j = header("cdelta/decomposition");
  j["expression"] = expression;
  j["name"] = r.name();
  j["kind"] = std::string(to_string(w.kind));
  j["element"] = element_json(r, r.index_of(w.element));
  j["found"] = w.found;
  Json parts = Json::array();
  for (const auto& p : w.parts) parts.push_back(element_json(r, r.index_of(p)));
  j["parts"] = std::move(parts);
  j["verified"] = w.found ? witness_holds(an, w) : false;
  return j;
}

Json suite_report(const SuiteReport& report, const std::string& corpus_name, double elapsed_ms) {
  Json j = header("cdelta/suite-report");
  j["corpus"] = corpus_name;
  j["rings"] = report.rings;
  j["checks"] = report.checks;
  Json results = Json::array();
  Json per_result = Json::array();
  for (const auto& r : report.results) {
    Json e;
    e["check"] = r.check_id;
    e["ring"] = r.ring_name;
    e["verdict"] = std::string(to_string(r.verdict));
    e["hypothesis"] = r.hypothesis;
    e["detail"] = r.detail;
    Json wit = Json::array();
    for (const auto& w : r.witness)
      wit.push_back(Json{{"role", w.role}, {"ring", w.ring}, {"index", w.index}, {"label", w.label}});
    e["witness"] = std::move(wit);
    if (r.verdict == Verdict::Fail) e["replayed"] = r.replay ? r.replay() : false;
    results.push_back(std::move(e));
    per_result.push_back(Json{{"check", r.check_id}, {"ring", r.ring_name}, {"elapsed_ms", r.elapsed_ms}});
  }
  j["results"] = std::move(results);
  Json tallies = Json::array();
  for (const auto& t : report.tallies)
    tallies.push_back(Json{{"check", t.check_id},
                           {"pass", t.pass},
                           {"fail", t.fail},
                           {"not_applicable", t.not_applicable},
                           {"error", t.error}});
  j["tallies"] = std::move(tallies);
  Json errors = Json::array();
  for (const auto& e : report.errors)
    errors.push_back(Json{{"ring", e.ring_name}, {"check", e.check_id}, {"code", e.code}, {"message", e.message}});
  j["errors"] = std::move(errors);
  j["summary"] = Json{{"pass", report.count(Verdict::Pass)},
                      {"fail", report.count(Verdict::Fail)},
                      {"not_applicable", report.count(Verdict::NotApplicable)},
                      {"error", report.errors.size()}};
  j["timing"] = Json{{"elapsed_ms", elapsed_ms}, {"results", std::move(per_result)}};
  return j;
}

Json search_report(const std::vector<SearchMatch>& matches, const std::vector<std::string>& corpus,
                   const std::string& predicate) {
  Json j = header("cdelta/search");
  j["predicate"] = predicate;
  j["corpus"] = corpus;
  Json m = Json::array();
  for (const auto& s : matches) {
    Json e;
    e["position"] = s.position;
    e["name"] = corpus.at(s.position);
    e["ring"] = s.name;
    Json props = Json::object();
    for (const auto& n : PropertyReport::predicate_names()) props[n] = *s.report.predicate(n);
    e["properties"] = std::move(props);
    Json card = Json::object();
    for (const auto& n : PropertyReport::cardinality_names()) card[n] = *s.report.cardinality(n);
    e["cardinalities"] = std::move(card);
    m.push_back(std::move(e));
  }
  j["matches"] = std::move(m);
  return j;
}

std::string canonical_body(const Json& document) {
  Json copy = document;
  copy.erase("timing");
  return copy.dump(2) + "\n";
}

std::string serialize(const Json& document) { return document.dump(2) + "\n"; }

std::vector<NamedExpression> parse_corpus(const std::string& text, std::string* corpus_name) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SyntaxError(std::string("corpus file is not valid JSON: ") + e.what(), 1, e.byte);
  }
  if (!j.is_object() || !j.contains("rings") || !j["rings"].is_array())
    throw SyntaxError("corpus file must be an object with a \"rings\" array", 1, 1);
  if (corpus_name) *corpus_name = j.value("name", std::string("corpus"));
  std::vector<NamedExpression> out;
  for (const auto& e : j["rings"]) {
    if (e.is_string()) {
      out.push_back({e.get<std::string>(), e.get<std::string>()});
    } else if (e.is_object() && e.contains("expression") && e["expression"].is_string()) {
      const std::string expr = e["expression"].get<std::string>();
      out.push_back({e.value("name", expr), expr});
    } else {
      throw SyntaxError("corpus entries must be strings or objects with an \"expression\"", 1, 1);
    }
  }
  return out;
}

std::vector<NamedExpression> load_corpus(const std::string& path, std::string* corpus_name) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read corpus file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str(), corpus_name);
}

}  // namespace cdelta
