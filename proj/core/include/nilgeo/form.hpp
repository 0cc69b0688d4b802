#pragma once

#include <cstddef>

#include "nilgeo/matrix.hpp"

namespace nilgeo {

/// Sylvester triple: p positive, q negative, r null directions.
struct Signature {
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t r = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Exact symmetric bilinear form on Q^dim, given by its Gram matrix.
/// Construction throws InvalidForm unless the Gram matrix is square and
/// symmetric. Degenerate forms are allowed; callers that need a metric check
/// is_nondegenerate().
class SymmetricForm {
 public:
  SymmetricForm() = default;
  explicit SymmetricForm(RatMatrix gram);

  static SymmetricForm diagonal(const RatVector& d) { return SymmetricForm(RatMatrix::diagonal(d)); }

  std::size_t dim() const noexcept { return gram_.rows(); }
  const RatMatrix& gram() const noexcept { return gram_; }

  Rat pair(const RatVector& x, const RatVector& y) const;
  /// Gram matrix of the restriction to span(basis): basisᵀ G basis.
  RatMatrix restricted_gram(const RatMatrix& basis) const;
  SymmetricForm restrict_to(const RatMatrix& basis) const { return SymmetricForm(restricted_gram(basis)); }
  bool is_nondegenerate() const;

  friend bool operator==(const SymmetricForm& a, const SymmetricForm& b) { return a.gram_ == b.gram_; }

 private:
  RatMatrix gram_;
};

/// C invertible with Cᵀ G C = diag(d).
struct CongruenceDiagonalization {
  RatMatrix transform;
  RatVector diagonal;
};

/// Symmetric Gaussian elimination with an e_i + e_j pivot fix when the
/// remaining diagonal vanishes. Exact; no eigenvalues involved.
CongruenceDiagonalization congruence_diagonalize(const SymmetricForm& form);
Signature signature(const SymmetricForm& form);

/// {x : ⟨x, s⟩ = 0 for all s in span(subspace)}. Throws InvalidBasis when the
/// columns of `subspace` are dependent.
RatMatrix orthogonal_complement(const SymmetricForm& form, const RatMatrix& subspace);

/// n = (u ⊕ v) ⊥ (z_tilde ⊕ v_tilde) for a (possibly degenerate) center.
/// u is the radical of the form on the center; v is an isotropic partner of u
/// with ⟨u_i, v_j⟩ = δ_ij; z_tilde is the part of the center orthogonal to
/// u ⊕ v and v_tilde its orthogonal complement inside (u ⊕ v)^⊥.
struct WittParts {
  RatMatrix u;
  RatMatrix v;
  RatMatrix z_tilde;
  RatMatrix v_tilde;
};

/// v is picked deterministically: for u_i in order, the solution with free
/// variables set to zero of ⟨u_j, w⟩ = δ_ij, ⟨v_j, w⟩ = 0 (j < i) inside
/// z0^⊥, made isotropic as w - ½⟨w,w⟩ u_i. z0 is the greedy complement of u
/// in the center, taken in center-basis order.
WittParts witt_decompose(const SymmetricForm& form, const RatMatrix& center);

/// Isotropic partners {v_i} of the isotropic, independent family {u_i} inside
/// span(ambient), with ⟨u_i, v_j⟩ = δ_ij and ⟨v_i, v_j⟩ = 0. The form must be
/// nondegenerate on span(ambient) and u must lie in it.
RatMatrix isotropic_partners(const SymmetricForm& form, const RatMatrix& u, const RatMatrix& ambient);

}  // namespace nilgeo
