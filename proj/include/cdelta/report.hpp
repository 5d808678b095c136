#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "cdelta/analysis.hpp"
#include "cdelta/predicate.hpp"
#include "cdelta/theorems.hpp"

namespace cdelta {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// AnalysisReport document. `elapsed_ms` goes into the "timing" member,
/// which canonical_body() drops.
Json analysis_report(const RingAnalysis& analysis, const std::string& expression, bool full_sets,
                     double elapsed_ms);

Json decomposition_report(const RingAnalysis& analysis, const std::string& expression,
                          const DecompositionWitness& witness);

Json suite_report(const SuiteReport& report, const std::string& corpus_name, double elapsed_ms);

Json search_report(const std::vector<SearchMatch>& matches, const std::vector<std::string>& corpus,
                   const std::string& predicate);

/// The document without its "timing" member, serialized with two-space
/// indentation and a trailing newline.
std::string canonical_body(const Json& document);
/// Full serialization (including timing) with a trailing newline.
std::string serialize(const Json& document);

struct NamedExpression {
  std::string name;
  std::string expression;
};

/// Corpus file: {"name": ..., "rings": [{"name": ..., "expression": ...}]}.
/// Throws SyntaxError for malformed JSON and IoError for unreadable files.
std::vector<NamedExpression> parse_corpus(const std::string& text, std::string* corpus_name = nullptr);
std::vector<NamedExpression> load_corpus(const std::string& path, std::string* corpus_name = nullptr);

}  // namespace cdelta
