#include "cdelta/predicate.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <exception>
#include <optional>
#include <thread>

namespace cdelta {

struct Predicate::Node {
  enum class Op { Const, Field, Compare, Not, And, Or } op = Op::Const;
  bool value = false;
  std::string name;
  std::string cmp;
  std::size_t number = 0;
  std::shared_ptr<const Node> lhs, rhs;

  bool eval(const PropertyReport& r) const {
    switch (op) {
      case Op::Const: return value;
      case Op::Field: return *r.predicate(name);
      case Op::Compare: {
        const std::size_t v = *r.cardinality(name);
        if (cmp == "==") return v == number;
        if (cmp == "!=") return v != number;
        if (cmp == "<") return v < number;
        if (cmp == "<=") return v <= number;
        if (cmp == ">") return v > number;
        return v >= number;
      }
      case Op::Not: return !lhs->eval(r);
      case Op::And: return lhs->eval(r) && rhs->eval(r);
      case Op::Or: return lhs->eval(r) || rhs->eval(r);
    }
    return false;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Predicate::Node>;
using Node = Predicate::Node;

bool contains(const std::vector<std::string>& names, std::string_view n) {
  return std::find(names.begin(), names.end(), n) != names.end();
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  NodePtr parse() {
    auto root = parse_or();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::PredicateParseError, "predicate error at column " + std::to_string(pos_) + ": " + msg,
                {static_cast<std::uint32_t>(pos_)});
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  // Accepts `single` or its doubled form.
  bool eat_op(char single) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != single) return false;
    ++pos_;
    if (pos_ < s_.size() && s_[pos_] == single) ++pos_;
    return true;
  }

  static NodePtr binary(Node::Op op, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  NodePtr parse_or() {
    auto lhs = parse_and();
    while (eat_op('|')) lhs = binary(Node::Op::Or, lhs, parse_and());
    return lhs;
  }

  NodePtr parse_and() {
    auto lhs = parse_unary();
    while (eat_op('&')) lhs = binary(Node::Op::And, lhs, parse_unary());
    return lhs;
  }

  NodePtr parse_unary() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '!' && !(pos_ + 1 < s_.size() && s_[pos_ + 1] == '=')) {
      ++pos_;
      auto n = std::make_shared<Node>();
      n->op = Node::Op::Not;
      n->lhs = parse_unary();
      return n;
    }
    return parse_primary();
  }

  NodePtr parse_primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of predicate");
    if (s_[pos_] == '(') {
      ++pos_;
      auto inner = parse_or();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a name");
    const std::string name(s_.substr(start, pos_ - start));
    auto n = std::make_shared<Node>();
    if (name == "true" || name == "false") {
      n->op = Node::Op::Const;
      n->value = name == "true";
      return n;
    }
    if (contains(PropertyReport::predicate_names(), name)) {
      n->op = Node::Op::Field;
      n->name = name;
      return n;
    }
    if (!contains(PropertyReport::cardinality_names(), name)) {
      pos_ = start;
      fail("unknown field '" + name + "'");
    }
    n->op = Node::Op::Compare;
    n->name = name;
    n->cmp = parse_cmp();
    n->number = parse_number();
    return n;
  }

  std::string parse_cmp() {
    skip();
    for (std::string_view op : {"==", "!=", "<=", ">=", "<", ">"})
      if (s_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        return std::string(op);
      }
    fail("expected a comparison after a cardinality");
  }

  std::size_t parse_number() {
    skip();
    std::size_t value = 0;
    const char* first = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), value);
    if (ec != std::errc() || ptr == first) fail("expected a non-negative integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Predicate Predicate::parse(std::string_view text) {
  Predicate p;
  p.text_ = std::string(text);
  p.root_ = Parser(p.text_).parse();
  return p;
}

bool Predicate::evaluate(const PropertyReport& report) const { return root_->eval(report); }

std::vector<SearchMatch> search(std::span<const FiniteRing> corpus, const Predicate& predicate,
                                std::size_t threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(corpus.size(), 1));

  std::vector<std::optional<PropertyReport>> reports(corpus.size());
  std::vector<std::exception_ptr> errors(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < corpus.size();) {
      try {
        reports[i] = RingAnalysis(corpus[i]).report();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::vector<SearchMatch> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    if (predicate.evaluate(*reports[i])) out.push_back({i, corpus[i].name(), *reports[i]});
  }
  return out;
}

}  // namespace cdelta
