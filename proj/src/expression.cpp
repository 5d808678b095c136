#include "cdelta/expression.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <json.hpp>

#include "cdelta/groups.hpp"

namespace cdelta {
namespace {

using Kind = RingExpression::Kind;

struct Token {
  enum class Type { Ident, Number, String, Punct, End } type = Type::End;
  std::string text;
  long number = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = s_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.type = Token::Type::Ident;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
          t.text += next();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        t.type = Token::Type::Number;
        t.text += next();
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) t.text += next();
        if (t.text == "-") throw SyntaxError("expected digits after '-'", t.line, t.column);
        try {
          t.number = std::stol(t.text);
        } catch (const std::exception&) {
          throw SyntaxError("integer out of range", t.line, t.column);
        }
      } else if (c == '"') {
        t.type = Token::Type::String;
        next();
        while (pos_ < s_.size() && s_[pos_] != '"') t.text += next();
        if (pos_ >= s_.size()) throw SyntaxError("unterminated string", t.line, t.column);
        next();
      } else if (std::string_view("()[]{},*").find(c) != std::string_view::npos) {
        t.type = Token::Type::Punct;
        t.text = next();
      } else {
        throw SyntaxError(std::string("unexpected character '") + c + "'", t.line, t.column);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char next() {
    const char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) next();
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct FamilyName {
  const char* name;
  FamilyKind kind;
  std::size_t ints;  // integer parameters before the ring
};

const FamilyName kFamilies[] = {
    {"Dn", FamilyKind::Dn, 1},   {"Vn", FamilyKind::Vn, 1},   {"Sn", FamilyKind::Sn, 1},
    {"DnK", FamilyKind::DnK, 1}, {"Un", FamilyKind::Un, 1},   {"VnK", FamilyKind::VnK, 2},
    {"Snm", FamilyKind::Snm, 2}, {"Tnm", FamilyKind::Tnm, 2},
};

const FamilyName* find_family(std::string_view name) {
  for (const auto& f : kFamilies)
    if (name == f.name) return &f;
  return nullptr;
}

const FamilyName& family_of(FamilyKind k) {
  for (const auto& f : kFamilies)
    if (f.kind == k) return f;
  throw Error(ErrorCode::InternalInconsistency, "unknown family");
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  RingExpression expression_only() {
    auto e = expr();
    expect_end();
    return e;
  }

  ElementLiteral element_only() {
    auto e = element();
    expect_end();
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw SyntaxError(msg, t.line, t.column); }

  std::string describe(const Token& t) const {
    switch (t.type) {
      case Token::Type::End: return "end of input";
      case Token::Type::String: return "string \"" + t.text + "\"";
      default: return "'" + t.text + "'";
    }
  }

  bool is_punct(char c) const { return peek().type == Token::Type::Punct && peek().text[0] == c; }

  void punct(char c) {
    if (!is_punct(c)) fail(std::string("expected '") + c + "' but found " + describe(peek()), peek());
    take();
  }

  void expect_end() {
    if (peek().type != Token::Type::End) fail("unexpected " + describe(peek()), peek());
  }

  long number(long min) {
    const Token& t = peek();
    if (t.type != Token::Type::Number) fail("expected an integer but found " + describe(t), t);
    if (t.number < min) fail("integer must be at least " + std::to_string(min), t);
    return take().number;
  }

  std::string ident() {
    const Token& t = peek();
    if (t.type != Token::Type::Ident) fail("expected a name but found " + describe(t), t);
    return take().text;
  }

  RingExpression expr() {
    auto first = factor();
    if (!is_punct('*')) return first;
    RingExpression p;
    p.kind = Kind::Prod;
    p.children.push_back(std::move(first));
    while (is_punct('*')) {
      take();
      p.children.push_back(factor());
    }
    return p;
  }

  RingExpression factor() {
    if (is_punct('(')) {
      take();
      auto inner = expr();
      punct(')');
      return inner;
    }
    const Token start = peek();
    const std::string name = ident();
    RingExpression e;
    // "Z 2" and "Z2".
    if (name == "Z" || (name.size() > 1 && name[0] == 'Z' &&
                        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(c); }))) {
      e.kind = Kind::Z;
      if (name == "Z") {
        e.ints.push_back(number(1));
      } else {
        try {
          e.ints.push_back(std::stol(name.substr(1)));
        } catch (const std::exception&) {
          fail("integer out of range", start);
        }
        if (e.ints[0] < 1) fail("integer must be at least 1", start);
      }
      return e;
    }
    if (name == "GF") {
      e.kind = Kind::GF;
      punct('(');
      e.ints.push_back(number(2));
      punct(',');
      e.ints.push_back(number(1));
      punct(')');
      return e;
    }
    if (name == "M" || name == "T") {
      e.kind = name == "M" ? Kind::M : Kind::T;
      punct('(');
      e.ints.push_back(number(1));
      punct(',');
      e.children.push_back(expr());
      punct(')');
      return e;
    }
    if (const FamilyName* f = find_family(name)) {
      e.kind = Kind::Family;
      e.family = f->kind;
      punct('(');
      for (std::size_t i = 0; i < f->ints; ++i) {
        e.ints.push_back(number(1));
        punct(',');
      }
      e.children.push_back(expr());
      punct(')');
      return e;
    }
    if (name == "TSkew" || name == "SkewPolyQuot") {
      e.kind = name == "TSkew" ? Kind::TSkew : Kind::SkewPolyQuot;
      punct('(');
      e.ints.push_back(number(1));
      punct(',');
      e.children.push_back(expr());
      punct(',');
      if (peek().type == Token::Type::String) {
        e.name = "\"" + take().text + "\"";
      } else {
        e.name = ident();
      }
      punct(')');
      return e;
    }
    if (name == "K") {
      e.kind = Kind::K;
      punct('(');
      e.elements.push_back(element());
      punct(',');
      e.children.push_back(expr());
      punct(')');
      return e;
    }
    if (name == "L" || name == "H") {
      e.kind = name == "L" ? Kind::L : Kind::H;
      punct('(');
      e.elements.push_back(element());
      punct(',');
      e.elements.push_back(element());
      punct(',');
      e.children.push_back(expr());
      punct(')');
      return e;
    }
    if (name == "Triv" || name == "DT") {
      e.kind = name == "Triv" ? Kind::Triv : Kind::DT;
      punct('(');
      e.children.push_back(expr());
      punct(')');
      return e;
    }
    if (name == "Corner") {
      e.kind = Kind::Corner;
      punct('(');
      e.children.push_back(expr());
      punct(',');
      e.elements.push_back(element());
      punct(')');
      return e;
    }
    if (name == "Quot" || name == "SubringGen" || name == "PolyQuot") {
      e.kind = name == "Quot" ? Kind::Quot : name == "SubringGen" ? Kind::SubringGen : Kind::PolyQuot;
      const char open = e.kind == Kind::PolyQuot ? '[' : '{';
      const char close = e.kind == Kind::PolyQuot ? ']' : '}';
      punct('(');
      e.children.push_back(expr());
      punct(',');
      punct(open);
      e.elements.push_back(element());
      while (is_punct(',')) {
        take();
        e.elements.push_back(element());
      }
      punct(close);
      punct(')');
      return e;
    }
    if (name == "GroupRing") {
      e.kind = Kind::GroupRing;
      punct('(');
      e.children.push_back(expr());
      punct(',');
      e.name = ident();
      punct(')');
      return e;
    }
    fail("unknown constructor '" + name + "'", start);
  }

  ElementLiteral element() {
    ElementLiteral lit;
    const Token& t = peek();
    if (t.type == Token::Type::Number) {
      lit.value = take().number;
      return lit;
    }
    if (t.type == Token::Type::Ident) {
      const Token tok = take();
      const std::string& s = tok.text;
      if (s.size() == 3 && s[0] == 'e' && std::isdigit(static_cast<unsigned char>(s[1])) &&
          std::isdigit(static_cast<unsigned char>(s[2])) && s[1] != '0' && s[2] != '0') {
        lit.kind = ElementLiteral::Kind::MatrixUnit;
        lit.row = static_cast<std::size_t>(s[1] - '0');
        lit.col = static_cast<std::size_t>(s[2] - '0');
        return lit;
      }
      fail("unknown element name '" + s + "'", tok);
    }
    if (is_punct('[')) {
      take();
      lit.kind = ElementLiteral::Kind::Tuple;
      lit.items.push_back(element());
      while (is_punct(',')) {
        take();
        lit.items.push_back(element());
      }
      punct(']');
      return lit;
    }
    fail("expected an element but found " + describe(t), t);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string join_elements(const std::vector<ElementLiteral>& items, std::string_view sep) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) s += sep;
    s += print_element(items[i]);
  }
  return s;
}

std::string child(const RingExpression& e) {
  const std::string s = print_expression(e);
  return e.kind == Kind::Prod ? "(" + s + ")" : s;
}

RingMap endomorphism(const FiniteRing& base, const std::string& name) {
  if (name == "id") {
    std::vector<Index> image(base.order());
    for (Index a = 0; a < base.order(); ++a) image[a] = a;
    return endomorphism_of(base, std::move(image));
  }
  if (name == "frob") return frobenius(base);
  if (name.size() >= 2 && name.front() == '"') {
    const std::string path = name.substr(1, name.size() - 2);
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read endomorphism file '" + path + "'");
    nlohmann::json j;
    try {
      in >> j;
      return endomorphism_of(base, j.get<std::vector<Index>>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidParameter,
                  "endomorphism file '" + path + "' must hold a JSON array of element indices: " + e.what());
    }
  }
  throw Error(ErrorCode::UnknownName, "unknown endomorphism '" + name + "' (expected id, frob or a quoted file)");
}

Subset element_set(const FiniteRing& ring, const std::vector<ElementLiteral>& items) {
  Subset s = Subset::empty_of(ring);
  for (const auto& it : items) s.insert(resolve_element(ring, it));
  return s;
}

}  // namespace

RingExpression parse_expression(std::string_view text) { return Parser(text).expression_only(); }

ElementLiteral parse_element(std::string_view text) { return Parser(text).element_only(); }

std::string print_element(const ElementLiteral& l) {
  switch (l.kind) {
    case ElementLiteral::Kind::Integer: return std::to_string(l.value);
    case ElementLiteral::Kind::MatrixUnit: return "e" + std::to_string(l.row) + std::to_string(l.col);
    case ElementLiteral::Kind::Tuple: return "[" + join_elements(l.items, ",") + "]";
  }
  return {};
}

std::string print_expression(const RingExpression& e) {
  auto n = [&](std::size_t i) { return std::to_string(e.ints.at(i)); };
  switch (e.kind) {
    case Kind::Z: return "Z " + n(0);
    case Kind::GF: return "GF(" + n(0) + "," + n(1) + ")";
    case Kind::Prod: {
      std::string s;
      for (std::size_t i = 0; i < e.children.size(); ++i) s += (i ? " * " : "") + child(e.children[i]);
      return s;
    }
    case Kind::M: return "M(" + n(0) + ", " + child(e.children[0]) + ")";
    case Kind::T: return "T(" + n(0) + ", " + child(e.children[0]) + ")";
    case Kind::Family: {
      std::string s = std::string(family_of(e.family).name) + "(";
      for (long v : e.ints) s += std::to_string(v) + ", ";
      return s + child(e.children[0]) + ")";
    }
    case Kind::TSkew:
    case Kind::SkewPolyQuot:
      return std::string(e.kind == Kind::TSkew ? "TSkew(" : "SkewPolyQuot(") + n(0) + ", " + child(e.children[0]) +
             ", " + e.name + ")";
    case Kind::K: return "K(" + print_element(e.elements[0]) + ", " + child(e.children[0]) + ")";
    case Kind::L:
    case Kind::H:
      return std::string(e.kind == Kind::L ? "L(" : "H(") + print_element(e.elements[0]) + ", " +
             print_element(e.elements[1]) + ", " + child(e.children[0]) + ")";
    case Kind::Triv: return "Triv(" + child(e.children[0]) + ")";
    case Kind::DT: return "DT(" + child(e.children[0]) + ")";
    case Kind::Corner: return "Corner(" + child(e.children[0]) + ", " + print_element(e.elements[0]) + ")";
    case Kind::Quot: return "Quot(" + child(e.children[0]) + ", {" + join_elements(e.elements, ", ") + "})";
    case Kind::SubringGen:
      return "SubringGen(" + child(e.children[0]) + ", {" + join_elements(e.elements, ", ") + "})";
    case Kind::PolyQuot: return "PolyQuot(" + child(e.children[0]) + ", [" + join_elements(e.elements, ",") + "])";
    case Kind::GroupRing: return "GroupRing(" + child(e.children[0]) + ", " + e.name + ")";
  }
  return {};
}

Index resolve_element(const FiniteRing& ring, const ElementLiteral& lit) {
  const Layout& l = ring.layout();
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::InvalidParameter, print_element(lit) + " is not an element of " + ring.name() + ": " + why);
  };
  if (l.kind == LayoutKind::Sub || l.kind == LayoutKind::Quotient) {
    const Index p = resolve_element(*l.parent, lit);
    if (l.kind == LayoutKind::Quotient) return l.projection.at(p);
    const auto it = std::find(l.embed.begin(), l.embed.end(), p);
    if (it == l.embed.end()) throw bad("outside the subring");
    return static_cast<Index>(it - l.embed.begin());
  }
  switch (lit.kind) {
    case ElementLiteral::Kind::Integer:
      if (lit.value < 0 || static_cast<std::size_t>(lit.value) >= ring.order()) throw bad("index out of range");
      return static_cast<Index>(lit.value);
    case ElementLiteral::Kind::MatrixUnit: {
      if (l.kind != LayoutKind::Matrix) throw bad("matrix units need a matrix ring");
      if (lit.row > l.rows || lit.col > l.cols) throw bad("matrix unit out of range");
      const FiniteRing& base = l.slot(0);
      std::vector<Index> c(l.rows * l.cols, base.zero());
      c[(lit.row - 1) * l.cols + (lit.col - 1)] = base.one();
      if (auto idx = ring.find(c)) return *idx;
      throw bad("the matrix unit is not in this ring");
    }
    case ElementLiteral::Kind::Tuple: {
      std::vector<Index> c;
      if (l.kind == LayoutKind::Matrix) {
        if (lit.items.size() != l.rows) throw bad("expected " + std::to_string(l.rows) + " rows");
        for (const auto& row : lit.items) {
          if (row.kind != ElementLiteral::Kind::Tuple || row.items.size() != l.cols)
            throw bad("expected rows of " + std::to_string(l.cols) + " entries");
          for (const auto& x : row.items) c.push_back(resolve_element(l.slot(0), x));
        }
      } else if (l.kind == LayoutKind::Tuple) {
        if (lit.items.size() != l.slots.size()) throw bad("expected " + std::to_string(l.slots.size()) + " coordinates");
        for (std::size_t i = 0; i < lit.items.size(); ++i) c.push_back(resolve_element(l.slots[i], lit.items[i]));
      } else {
        throw bad("this ring has no coordinates");
      }
      if (auto idx = ring.find(c)) return *idx;
      throw bad("no element has these coordinates");
    }
  }
  throw bad("unsupported literal");
}

FiniteRing build_expression(const RingExpression& e, const BuildOptions& o) {
  auto base = [&] { return build_expression(e.children.at(0), o); };
  auto size = [&](std::size_t i) { return static_cast<std::size_t>(e.ints.at(i)); };
  switch (e.kind) {
    case Kind::Z: return zn(size(0), o);
    case Kind::GF: return galois_field(size(0), size(1), o);
    case Kind::Prod: {
      std::vector<FiniteRing> f;
      for (const auto& c : e.children) f.push_back(build_expression(c, o));
      return direct_product(f, o);
    }
    case Kind::M: return matrix_ring(size(0), base(), o);
    case Kind::T: return triangular_ring(size(0), base(), o);
    case Kind::Family: {
      FamilySpec spec{e.family, size(0), 0, 0};
      if (e.family == FamilyKind::VnK) spec.k = size(1);
      if (e.family == FamilyKind::Snm || e.family == FamilyKind::Tnm) spec.m = size(1);
      return special_matrix_family(spec, base(), o);
    }
    case Kind::TSkew:
    case Kind::SkewPolyQuot: {
      const FiniteRing r = base();
      const RingMap alpha = endomorphism(r, e.name);
      return e.kind == Kind::TSkew ? skew_triangular(size(0), r, alpha, e.name, o)
                                   : skew_poly_quotient(size(0), r, alpha, e.name, o);
    }
    case Kind::K: {
      const FiniteRing r = base();
      return generalized_matrix(resolve_element(r, e.elements[0]), r, o);
    }
    case Kind::L:
    case Kind::H: {
      const FiniteRing r = base();
      const CentralParams p{resolve_element(r, e.elements[0]), resolve_element(r, e.elements[1])};
      return e.kind == Kind::L ? lst_ring(p, r, o) : hst_ring(p, r, o);
    }
    case Kind::Triv: return trivial_extension(base(), o);
    case Kind::DT: return dt_ring(base(), o);
    case Kind::Corner: {
      const FiniteRing r = base();
      return corner_ring(r, resolve_element(r, e.elements[0]), o);
    }
    case Kind::Quot: {
      const FiniteRing r = base();
      return quotient_ring(r, ideal_generated(r, element_set(r, e.elements)), o);
    }
    case Kind::SubringGen: {
      const FiniteRing r = base();
      return subring_generated(r, element_set(r, e.elements), o);
    }
    case Kind::PolyQuot: {
      const FiniteRing r = base();
      std::vector<Index> m;
      for (const auto& c : e.elements) m.push_back(resolve_element(r, c));
      return poly_quotient(r, m, o);
    }
    case Kind::GroupRing: return group_ring(base(), builtin_group(e.name), o);
  }
  throw Error(ErrorCode::InternalInconsistency, "unhandled expression kind");
}

FiniteRing build_expression(std::string_view text, const BuildOptions& options) {
  return build_expression(parse_expression(text), options);
}

}  // namespace cdelta
