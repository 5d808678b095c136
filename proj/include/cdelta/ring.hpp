#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdelta/errors.hpp"

namespace cdelta {

/// Canonical position of an element inside one ring's tables.
using Index = std::uint32_t;

inline constexpr std::size_t kDefaultOrderCap = 65536;

/// Rings of at most this order get a literal scan of every triple during
/// axiom verification; larger rings use the generator reduction (see axioms.cpp).
inline constexpr std::size_t kExhaustiveAxiomOrder = 64;

struct BuildOptions {
  std::size_t order_cap = kDefaultOrderCap;
};

/// An element tagged with the identity of the ring it belongs to.
struct ElementId {
  std::uint64_t ring = 0;
  Index index = 0;

  friend bool operator==(const ElementId&, const ElementId&) = default;
};

/// Raw Cayley tables, row-major, `order * order` entries each.
struct RingTables {
  std::size_t order = 0;
  std::vector<Index> add;
  std::vector<Index> mul;
  Index zero = 0;
  Index one = 0;
};

struct Layout;
struct Provenance;

namespace detail {
struct RingData;
}

/// An immutable finite unital ring. Copies are cheap and share the tables;
/// every copy carries the same identity tag.
class FiniteRing {
 public:
  FiniteRing() = default;

  /// Verifies every ring axiom and takes ownership of the tables.
  /// Throws MalformedTable, AxiomViolation or OrderCapExceeded.
  static FiniteRing create(RingTables tables, Provenance provenance, Layout layout,
                           const BuildOptions& options = {});

  bool valid() const noexcept { return static_cast<bool>(data_); }
  std::size_t order() const noexcept { return n_; }
  Index zero() const noexcept { return zero_; }
  Index one() const noexcept { return one_; }

  Index add(Index a, Index b) const noexcept { return add_[std::size_t{a} * n_ + b]; }
  Index mul(Index a, Index b) const noexcept { return mul_[std::size_t{a} * n_ + b]; }
  Index neg(Index a) const noexcept { return neg_[a]; }
  Index sub(Index a, Index b) const noexcept { return add(a, neg_[b]); }

  std::span<const Index> add_table() const noexcept;
  std::span<const Index> mul_table() const noexcept;

  std::uint64_t tag() const noexcept;
  const Provenance& provenance() const noexcept;
  /// The construction expression, e.g. "T(2, Z 2)".
  const std::string& name() const noexcept;
  const Layout& layout() const noexcept;

  /// Additive generators found during axiom verification: every element is a
  /// left-bracketed sum of them.
  std::span<const Index> additive_generators() const noexcept;

  /// Human-readable rendering of an element; never affects semantics.
  std::string label(Index a) const;

  ElementId element(Index a) const;
  Index index_of(ElementId e) const;
  ElementId add(ElementId a, ElementId b) const;
  ElementId mul(ElementId a, ElementId b) const;
  ElementId neg(ElementId a) const;

  /// Exhaustive check that multiplication is symmetric.
  bool is_commutative() const noexcept;
  bool is_central(Index a) const noexcept;

  /// Coordinates of an element under the layout (Tuple/Matrix layouts).
  std::span<const Index> coords(Index a) const;
  /// Inverse of `coords`; nullopt when no element has these coordinates.
  std::optional<Index> find(std::span<const Index> coords) const;

  friend bool operator==(const FiniteRing& a, const FiniteRing& b) noexcept {
    return a.data_ == b.data_;
  }

 private:
  std::shared_ptr<const detail::RingData> data_;
  const Index* add_ = nullptr;
  const Index* mul_ = nullptr;
  const Index* neg_ = nullptr;
  std::size_t n_ = 0;
  Index zero_ = 0;
  Index one_ = 0;
};

enum class LayoutKind { Scalar, Tuple, Matrix, Sub, Quotient };

/// How elements are rendered and how literals are resolved. Tuple and Matrix
/// layouts store per-element coordinates over component rings; Sub and
/// Quotient layouts refer back to a parent ring.
struct Layout {
  LayoutKind kind = LayoutKind::Scalar;
  /// Tuple: one ring per slot. Matrix: the single entry ring.
  std::vector<FiniteRing> slots;
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// order * width() entries.
  std::vector<Index> coords;
  std::optional<FiniteRing> parent;
  /// Sub: parent index of each element. Quotient: coset representative.
  std::vector<Index> embed;
  /// Quotient: parent index -> quotient element.
  std::vector<Index> projection;

  std::size_t width() const noexcept {
    switch (kind) {
      case LayoutKind::Tuple: return slots.size();
      case LayoutKind::Matrix: return rows * cols;
      default: return 0;
    }
  }
  const FiniteRing& slot(std::size_t i) const { return kind == LayoutKind::Matrix ? slots.at(0) : slots.at(i); }

  static Layout scalar() { return {}; }
  static Layout tuple(std::vector<FiniteRing> slots, std::vector<Index> coords);
  static Layout matrix(FiniteRing base, std::size_t rows, std::size_t cols, std::vector<Index> coords);
  static Layout sub(FiniteRing parent, std::vector<Index> embed);
  static Layout quotient(FiniteRing parent, std::vector<Index> representatives,
                         std::vector<Index> projection);
};

/// Which constructor produced a ring and from what. `kind` is a stable tag
/// ("Z", "M", "T", "L", ...); `operands` are the input rings, `params` the
/// integer parameters and `elements` any element parameters (indices into
/// the first operand).
struct Provenance {
  std::string expr;
  std::string kind;
  std::vector<FiniteRing> operands;
  std::vector<long> params;
  std::vector<Index> elements;
};

enum class MapKind { Endomorphism, IsomorphismCandidate };

/// A function between the element sets of two rings.
struct RingMap {
  FiniteRing source;
  FiniteRing target;
  std::vector<Index> image;
  MapKind kind = MapKind::IsomorphismCandidate;
};

// ---------------------------------------------------------------------------
// Foundational constructions

/// The residue ring Z/nZ; index i is the residue i.
FiniteRing zn(std::size_t n, const BuildOptions& options = {});

/// A ring given by explicit tables. Throws MalformedTable or AxiomViolation.
FiniteRing table_ring(const std::vector<std::vector<Index>>& add_table,
                      const std::vector<std::vector<Index>>& mul_table, Index zero, Index one,
                      const BuildOptions& options = {});

/// Componentwise product. Tuples are encoded mixed-radix with the first
/// factor as the most significant digit.
FiniteRing direct_product(std::span<const FiniteRing> factors, const BuildOptions& options = {});

/// R[x]/<f> for commutative R and monic f. `modulus` lists coefficients in
/// ascending degree, the last one being the leading coefficient (= one).
/// Elements are coefficient tuples (c0, ..., c_{d-1}), c0 most significant.
FiniteRing poly_quotient(const FiniteRing& base, std::span<const Index> modulus,
                         const BuildOptions& options = {});

/// Verified unital endomorphism. Throws NotUnital or NotAHomomorphism.
RingMap endomorphism_of(const FiniteRing& ring, std::vector<Index> image);

/// True iff the map is a bijective unital ring homomorphism (checked on all pairs).
bool check_isomorphism(const RingMap& map);

/// Exhaustive homomorphism test; returns the first failing pair (a, b), or
/// nullopt when `image` preserves one, addition and multiplication.
std::optional<std::pair<Index, Index>> find_homomorphism_violation(const FiniteRing& source,
                                                                   const FiniteRing& target,
                                                                   std::span<const Index> image);

/// Mixed-radix helpers shared by the tuple-shaped constructors.
std::size_t checked_power(std::size_t base, std::size_t exponent, std::size_t cap);
void require_order_within(std::size_t order, std::size_t cap, const std::string& what);

}  // namespace cdelta
