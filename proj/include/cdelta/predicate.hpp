#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdelta/analysis.hpp"

namespace cdelta {

/// Boolean expression over PropertyReport fields.
///
///   expr    := and (('|' | '||') and)*
///   and     := unary (('&' | '&&') unary)*
///   unary   := '!' unary | primary
///   primary := '(' expr ')' | 'true' | 'false' | predicate | cardinality cmp integer
///   cmp     := '==' | '!=' | '<' | '<=' | '>' | '>='
///
/// Names are those of PropertyReport::predicate_names() and cardinality_names().
class Predicate {
 public:
  /// Throws PredicateParseError naming the offending 0-based column.
  static Predicate parse(std::string_view text);

  bool evaluate(const PropertyReport& report) const;
  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

struct SearchMatch {
  std::size_t position = 0;  // index into the corpus
  std::string name;
  PropertyReport report;
};

/// Classifies every corpus ring (in parallel over `threads` workers; 0 means
/// hardware concurrency) and returns the matches in corpus order.
std::vector<SearchMatch> search(std::span<const FiniteRing> corpus, const Predicate& predicate,
                                std::size_t threads = 0);

}  // namespace cdelta
