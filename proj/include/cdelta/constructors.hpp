#pragma once

#include <string>
#include <vector>

#include "cdelta/groups.hpp"
#include "cdelta/ring.hpp"
#include "cdelta/subset.hpp"

namespace cdelta {

// Matrix-shaped rings are enumerated from their free parameters in
// mixed-radix order (first parameter most significant); an element's index
// is the position of its first occurrence. Parameter lists per family:
//
//   M(n)       all entries, row-major
//   T(n)       upper-triangular entries, row-major
//   Dn, Sn     a (the common diagonal), then strictly upper entries row-major
//   Vn         a_1..a_n, a_k on the (k-1)-th superdiagonal
//   VnK        x_1..x_k on superdiagonals 0..k-1, then entries (i,j) with j-i >= k row-major
//   DnK        c, then a_ij (i <= k < j) row-major, then b_(k+1)j (j >= k+2); k = n/2
//   Snm        a, b_1..b_{n-1}, d_1..d_{m-1}, then c_ij (i < n, j > n) row-major
//   Tnm        a, b_1..b_{n-1}, c_1..c_{m-1}
//   Un         a, b_1..b_{n-1} (odd rows), c_1..c_{n-2} (even rows)
//   L(s,t)     a, c, d, e, f
//   H(s,t)     c, e, f
//
// Every carrier is checked for closure; failures raise NotASubring with the
// offending pair of element indices.

FiniteRing matrix_ring(std::size_t n, const FiniteRing& base, const BuildOptions& options = {});
FiniteRing triangular_ring(std::size_t n, const FiniteRing& base, const BuildOptions& options = {});

enum class FamilyKind { Dn, Vn, VnK, DnK, Sn, Snm, Tnm, Un };

struct FamilySpec {
  FamilyKind kind = FamilyKind::Dn;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
};

std::string_view to_string(FamilyKind kind) noexcept;

FiniteRing special_matrix_family(const FamilySpec& spec, const FiniteRing& base,
                                 const BuildOptions& options = {});

/// T_n(R, alpha) on tuples (a_0, ..., a_{n-1}) with
/// c_i = sum_j a_j alpha^j(b_{i-j}). `endo_label` is used in the ring name.
FiniteRing skew_triangular(std::size_t n, const FiniteRing& base, const RingMap& alpha,
                           const std::string& endo_label, const BuildOptions& options = {});

/// R[x; alpha]/<x^n> built by rewriting x b = alpha(b) x one step at a time;
/// elements are coefficient tuples (a_0, ..., a_{n-1}).
FiniteRing skew_poly_quotient(std::size_t n, const FiniteRing& base, const RingMap& alpha,
                              const std::string& endo_label, const BuildOptions& options = {});

/// K_s(R) on quadruples (a, x, y, b) shown as [[a, x], [y, b]].
FiniteRing generalized_matrix(Index s, const FiniteRing& base, const BuildOptions& options = {});

/// T(R, R) on pairs (r, m).
FiniteRing trivial_extension(const FiniteRing& base, const BuildOptions& options = {});

/// DT(R, R) on quadruples (a, m, b, n).
FiniteRing dt_ring(const FiniteRing& base, const BuildOptions& options = {});

struct CentralParams {
  Index s = 0;
  Index t = 0;
};

FiniteRing lst_ring(const CentralParams& params, const FiniteRing& base, const BuildOptions& options = {});
/// H_(s,t)(R): matrices [[sc+te+f, 0, 0], [c, te+f, e], [0, 0, f]].
FiniteRing hst_ring(const CentralParams& params, const FiniteRing& base, const BuildOptions& options = {});
/// The subring V_2(L_(s,t)(R)) = {[[a,0,0],[0,a,te],[0,0,a]]}, parameters (a, e).
FiniteRing lst_v2_ring(const CentralParams& params, const FiniteRing& base, const BuildOptions& options = {});

/// eRe with identity e; the zero ring when e = 0. Elements are sorted by
/// their index in R. Throws NotIdempotent.
FiniteRing corner_ring(const FiniteRing& ring, Index e, const BuildOptions& options = {});

/// Smallest subring containing S (and 0, 1); elements sorted by index in R,
/// with the embedding available through layout().embed.
FiniteRing subring_generated(const FiniteRing& ring, const Subset& generators,
                             const BuildOptions& options = {});

/// Two-sided ideal generated by S.
Subset ideal_generated(const FiniteRing& ring, const Subset& generators);

/// Throws NotAnIdeal (with a witness) unless I is a two-sided ideal.
void require_ideal(const FiniteRing& ring, const Subset& ideal);

/// R/I with coset representatives = least index per coset, ordered by
/// representative. layout().projection maps R -> R/I.
FiniteRing quotient_ring(const FiniteRing& ring, const Subset& ideal, const BuildOptions& options = {});

/// RG on coefficient tuples indexed by group elements.
FiniteRing group_ring(const FiniteRing& base, const FiniteGroup& group, const BuildOptions& options = {});

/// GF(p^k) as Z_p[x]/<f> for the first monic irreducible f of degree k
/// (coefficients c_0..c_{k-1} enumerated with c_0 most significant).
FiniteRing galois_field(std::size_t p, std::size_t k, const BuildOptions& options = {});

/// The Frobenius map a -> a^p of a ring of characteristic p (verified).
RingMap frobenius(const FiniteRing& ring);

}  // namespace cdelta
