#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cdelta/constructors.hpp"

namespace cdelta {

/// Element literal: an integer (the canonical element index of the ring it
/// is resolved in), a bracketed tuple of literals (coordinates, nested for
/// matrices) or a matrix unit e<i><j> (1-based).
struct ElementLiteral {
  enum class Kind { Integer, Tuple, MatrixUnit };
  Kind kind = Kind::Integer;
  long value = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  std::vector<ElementLiteral> items;

  friend bool operator==(const ElementLiteral&, const ElementLiteral&) = default;
};

/// Ring expression syntax tree.
///
///   expr    := factor ('*' factor)*
///   factor  := 'Z' n | 'GF' '(' p ',' k ')' | '(' expr ')'
///            | 'M' | 'T' | 'Dn' | 'Vn' | 'Sn' | 'DnK' | 'Un' '(' n ',' expr ')'
///            | 'VnK' '(' n ',' k ',' expr ')' | 'Snm' | 'Tnm' '(' n ',' m ',' expr ')'
///            | 'TSkew' | 'SkewPolyQuot' '(' n ',' expr ',' endo ')'
///            | 'K' '(' elem ',' expr ')' | 'L' | 'H' '(' elem ',' elem ',' expr ')'
///            | 'Triv' | 'DT' '(' expr ')' | 'Corner' '(' expr ',' elem ')'
///            | 'Quot' | 'SubringGen' '(' expr ',' '{' elem (',' elem)* '}' ')'
///            | 'PolyQuot' '(' expr ',' '[' elem (',' elem)* ']' ')'
///            | 'GroupRing' '(' expr ',' group ')'
///   endo    := 'id' | 'frob' | '"' path '"'   (JSON array of image indices)
///
/// Elements of K, L and H are resolved in the base ring; those of Corner,
/// Quot and SubringGen in the ring itself; PolyQuot coefficients in the base
/// ring, in ascending degree.
struct RingExpression {
  enum class Kind {
    Z, GF, PolyQuot, Prod, M, T, Family, TSkew, SkewPolyQuot, K, Triv, DT, L, H, Corner, SubringGen, Quot, GroupRing
  };
  Kind kind = Kind::Z;
  FamilyKind family = FamilyKind::Dn;
  std::vector<long> ints;
  std::vector<ElementLiteral> elements;
  /// Endomorphism or group name.
  std::string name;
  std::vector<RingExpression> children;

  friend bool operator==(const RingExpression&, const RingExpression&) = default;
};

/// Throws SyntaxError with a 1-based line and column.
RingExpression parse_expression(std::string_view text);
ElementLiteral parse_element(std::string_view text);

/// Canonical text; parse_expression(print_expression(e)) == e.
std::string print_expression(const RingExpression& expr);
std::string print_element(const ElementLiteral& literal);

/// Builds the ring. Throws UnknownName for unknown groups or endomorphisms
/// and the constructor errors for invalid parameters.
FiniteRing build_expression(const RingExpression& expr, const BuildOptions& options = {});
FiniteRing build_expression(std::string_view text, const BuildOptions& options = {});

/// Maps a literal to the canonical index of an element of `ring`. Throws
/// InvalidParameter when the literal does not denote an element.
Index resolve_element(const FiniteRing& ring, const ElementLiteral& literal);

}  // namespace cdelta
