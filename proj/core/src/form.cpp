#include "nilgeo/form.hpp"

#include "nilgeo/error.hpp"

namespace nilgeo {

SymmetricForm::SymmetricForm(RatMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_square()) throw Error(ErrorCode::InvalidForm, "Gram matrix is not square");
  if (!gram_.is_symmetric()) throw Error(ErrorCode::InvalidForm, "Gram matrix is not symmetric");
}

Rat SymmetricForm::pair(const RatVector& x, const RatVector& y) const { return dot(x, gram_ * y); }

RatMatrix SymmetricForm::restricted_gram(const RatMatrix& basis) const {
  return basis.transpose() * gram_ * basis;
}

bool SymmetricForm::is_nondegenerate() const { return rank(gram_) == dim(); }

CongruenceDiagonalization congruence_diagonalize(const SymmetricForm& form) {
  const std::size_t n = form.dim();
  RatMatrix a = form.gram();
  RatMatrix c = RatMatrix::identity(n);

  auto swap_index = [&](std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t t = 0; t < n; ++t) std::swap(a(i, t), a(k, t));
    for (std::size_t t = 0; t < n; ++t) std::swap(a(t, i), a(t, k));
    for (std::size_t t = 0; t < n; ++t) std::swap(c(t, i), c(t, k));
  };
  // Basis change e_i <- e_i + s e_j applied as a congruence.
  auto add_index = [&](std::size_t i, std::size_t j, const Rat& s) {
    for (std::size_t t = 0; t < n; ++t) a(i, t) += s * a(j, t);
    for (std::size_t t = 0; t < n; ++t) a(t, i) += s * a(t, j);
    for (std::size_t t = 0; t < n; ++t) c(t, i) += s * c(t, j);
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n && piv == n; ++i)
      if (sgn(a(i, i)) != 0) piv = i;
    if (piv == n) {
      for (std::size_t i = k; i < n && piv == n; ++i)
        for (std::size_t j = i + 1; j < n && piv == n; ++j)
          if (sgn(a(i, j)) != 0) {
            add_index(i, j, Rat(1));
            piv = i;
          }
    }
    if (piv == n) break;
    swap_index(piv, k);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (sgn(a(k, j)) == 0) continue;
      const Rat f = -a(k, j) / a(k, k);
      add_index(j, k, f);
    }
  }
  RatVector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
  return {std::move(c), std::move(d)};
}

Signature signature(const SymmetricForm& form) {
  Signature s;
  for (const auto& x : congruence_diagonalize(form).diagonal) {
    const int sg = sgn(x);
    if (sg > 0) ++s.p;
    else if (sg < 0) ++s.q;
    else ++s.r;
  }
  return s;
}

RatMatrix orthogonal_complement(const SymmetricForm& form, const RatMatrix& subspace) {
  if (subspace.rows() != form.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "subspace ambient dimension differs from the form");
  }
  if (!has_independent_columns(subspace)) {
    throw Error(ErrorCode::InvalidBasis, "subspace columns are linearly dependent");
  }
  return nullspace(subspace.transpose() * form.gram());
}

RatMatrix isotropic_partners(const SymmetricForm& form, const RatMatrix& u, const RatMatrix& ambient) {
  const std::size_t n = form.dim();
  std::vector<RatVector> partners;
  const RatMatrix g_amb = form.gram() * ambient;
  for (std::size_t i = 0; i < u.cols(); ++i) {
    const std::size_t eqs = u.cols() + partners.size();
    RatMatrix a(eqs, ambient.cols());
    RatVector b(eqs, Rat(0));
    for (std::size_t j = 0; j < u.cols(); ++j) {
      const RatVector row = g_amb.transpose() * u.column(j);
      for (std::size_t k = 0; k < ambient.cols(); ++k) a(j, k) = row[k];
      b[j] = (i == j) ? 1 : 0;
    }
    for (std::size_t j = 0; j < partners.size(); ++j) {
      const RatVector row = g_amb.transpose() * partners[j];
      for (std::size_t k = 0; k < ambient.cols(); ++k) a(u.cols() + j, k) = row[k];
    }
    const auto c = solve(a, b);
    if (!c) {
      throw Error(ErrorCode::InternalInconsistency,
                  "no isotropic partner for null vector " + std::to_string(i) +
                      "; form degenerate on the ambient subspace?");
    }
    const RatVector w = ambient * *c;
    const Rat half_norm = form.pair(w, w) / 2;
    partners.push_back(w - half_norm * u.column(i));
  }
  return RatMatrix::from_columns(n, partners);
}

WittParts witt_decompose(const SymmetricForm& form, const RatMatrix& center) {
  if (center.rows() != form.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "center ambient dimension differs from the form");
  }
  if (!has_independent_columns(center)) {
    throw Error(ErrorCode::InvalidBasis, "center basis columns are linearly dependent");
  }
  WittParts parts;
  parts.u = center * nullspace(form.restricted_gram(center));
  const RatMatrix z0 = greedy_complement(parts.u, center);
  const RatMatrix room = orthogonal_complement(form, z0);
  parts.v = isotropic_partners(form, parts.u, room);

  const RatMatrix uv = hstack(parts.u, parts.v);
  const RatMatrix outside = orthogonal_complement(form, uv);
  if (!same_span(intersect(outside, center), z0)) {
    throw Error(ErrorCode::InternalInconsistency, "center part of (u ⊕ v)^⊥ differs from the chosen complement");
  }
  parts.z_tilde = z0;
  parts.v_tilde = orthogonal_complement(form, hstack(uv, z0));
  return parts;
}

}  // namespace nilgeo
