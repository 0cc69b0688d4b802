#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "nilgeo/form.hpp"
#include "nilgeo/lie_algebra.hpp"

namespace nilgeo {

/// Nilpotent Lie algebra with a nondegenerate left-invariant metric.
/// Throws DimensionMismatch when sizes differ and InvalidForm when the
/// metric is degenerate.
class MetricNilLieAlgebra {
 public:
  MetricNilLieAlgebra(NilLieAlgebra alg, SymmetricForm metric);

  const NilLieAlgebra& algebra() const noexcept { return alg_; }
  const SymmetricForm& metric() const noexcept { return metric_; }
  const RatMatrix& metric_inverse() const noexcept { return metric_inv_; }
  std::size_t dim() const noexcept { return alg_.dim(); }
  bool is_two_step() const noexcept { return alg_.is_at_most_two_step(); }

  /// Metric adjoint of ad(x): G⁻¹ ad(x)ᵀ G.
  RatMatrix ad_star(const RatVector& x) const;

 private:
  NilLieAlgebra alg_;
  SymmetricForm metric_;
  RatMatrix metric_inv_;
};

/// n = z ⊕ v with v = z^⊥ and the j-maps written in v-coordinates.
struct CenterSplitting {
  RatMatrix z_basis;  ///< columns, ambient coordinates
  RatMatrix v_basis;
  RatMatrix gram_z;
  RatMatrix gram_v;
  std::vector<RatMatrix> j_ops;  ///< j(z_basis column a), acting on v-coordinates
  bool j_injective = false;

  std::size_t dim_z() const noexcept { return z_basis.cols(); }
  std::size_t dim_v() const noexcept { return v_basis.cols(); }

  /// j of Σ_a zc[a] z_a.
  RatMatrix j(const RatVector& zc) const;
  /// j of an ambient vector lying in z.
  RatMatrix j_ambient(const RatVector& x) const;

  /// Coordinates of the z- and v-components of an ambient vector.
  RatVector z_coords(const RatVector& x) const;
  RatVector v_coords(const RatVector& x) const;
  RatVector z_part(const RatVector& x) const { return z_basis * z_coords(x); }
  RatVector v_part(const RatVector& x) const { return v_basis * v_coords(x); }

  RatMatrix split_inverse;  ///< inverse of [z_basis | v_basis]
};

/// Throws NotTwoStep, or DegenerateCenter when the metric is degenerate on
/// the center (witt_decompose handles that case).
CenterSplitting center_splitting(const MetricNilLieAlgebra& m);

/// J_i with ⟨J_i u, w⟩ = ω_i(u, w), where [u, w] = Σ_i ω_i(u, w) c_i for the
/// chosen basis c_i (columns) of a subspace holding the commutator. Throws
/// InvalidBasis otherwise.
std::vector<RatMatrix> structure_endomorphisms(const MetricNilLieAlgebra& m, const RatMatrix& center_basis_choice);

/// Levi-Civita connection table. N_i is the matrix of y ↦ ∇_{e_i} y.
class LeviCivita {
 public:
  explicit LeviCivita(const MetricNilLieAlgebra& m);

  RatVector nabla(const RatVector& x, const RatVector& y) const;
  /// Matrix of y ↦ ∇_x y.
  RatMatrix nabla_operator(const RatVector& x) const;
  /// R(x, y) = [∇_x, ∇_y] − ∇_[x,y].
  RatMatrix curvature_operator(const RatVector& x, const RatVector& y) const;
  RatVector curvature(const RatVector& x, const RatVector& y, const RatVector& z) const;

  const MetricNilLieAlgebra& metric_algebra() const noexcept { return m_; }

 private:
  MetricNilLieAlgebra m_;
  std::vector<RatMatrix> table_;
};

/// ∇_x y = ½([x,y] − ad(x)*y − ad(y)*x).
RatVector covariant_derivative(const MetricNilLieAlgebra& m, const RatVector& x, const RatVector& y);
RatVector curvature(const MetricNilLieAlgebra& m, const RatVector& x, const RatVector& y, const RatVector& z);

/// Closed forms in terms of j, evaluated by splitting each argument into its
/// z- and v-parts and summing the pure cases.
RatVector covariant_derivative_by_cases(const MetricNilLieAlgebra& m, const CenterSplitting& s, const RatVector& x,
                                        const RatVector& y);
RatVector curvature_by_cases(const MetricNilLieAlgebra& m, const CenterSplitting& s, const RatVector& x,
                             const RatVector& y, const RatVector& z);

/// K = ⟨R(x,y)y, x⟩ / (⟨x,x⟩⟨y,y⟩ − ⟨x,y⟩²). Throws DegeneratePlane.
Rat sectional_curvature(const MetricNilLieAlgebra& m, const RatVector& x, const RatVector& y);

/// Columns e_i spanning span(basis) with ⟨e_i, e_j⟩ = ±δ_ij, found by exact
/// Gram-Schmidt over pivots with rational-square norms. nullopt when the
/// greedy search finds none.
std::optional<RatMatrix> rational_orthonormal_basis(const SymmetricForm& form, const RatMatrix& basis);

struct RicciReport {
  RatMatrix ric;             ///< Ric(e_i, e_j)
  RatMatrix transformation;  ///< T with ⟨T x, y⟩ = Ric(x, y)
  /// True when the z/v block formulas were evaluated and matched.
  bool block_formulas_checked = false;
};

/// Ric(x, y) = trace(w ↦ R(w, x) y). When a center splitting and rational
/// orthonormal bases of z and v exist, the j-formulas for the blocks are
/// compared as well (mismatch throws InternalInconsistency).
RicciReport ricci(const MetricNilLieAlgebra& m);

struct FlatnessResult {
  bool flat = true;
  std::optional<std::array<std::size_t, 3>> witness;  ///< first (i, j, k) with R(e_i, e_j)e_k ≠ 0
};

FlatnessResult flatness_check(const MetricNilLieAlgebra& m);

enum class NonsingularityVerdict { Nonsingular, SingularWitness, ProbablyNonsingular };

struct NonsingularityResult {
  NonsingularityVerdict verdict = NonsingularityVerdict::Nonsingular;
  RatVector witness;  ///< z-coordinates of a singular direction
};

/// Exact for dim z = 1. Otherwise the kernel of j, then the z-basis, then 64
/// pseudo-random integer directions (mt19937_64, seed 0x5EED) are tested.
NonsingularityResult is_nonsingular(const MetricNilLieAlgebra& m, const CenterSplitting& s);

struct GeodesicOptions {
  double quadrature_tolerance = 1e-10;
  double residual_step = 1e-3;
};

struct GeodesicSample {
  double t = 0.0;
  std::vector<double> z;         ///< z-coordinates of z(t)
  std::vector<double> v;         ///< v-coordinates of v(t)
  std::vector<double> position;  ///< exponential coordinates z(t) + v(t)
  std::vector<double> velocity;  ///< left-trivialized γ'(t) = e^{t j(z0)} v0 + z0
  double residual = 0.0;
};

/// Geodesic through the identity with γ'(0) = z0 + v0, where z0 and v0 are
/// coordinates in the splitting's z- and v-bases.
std::vector<GeodesicSample> geodesic(const MetricNilLieAlgebra& m, const CenterSplitting& s,
                                     const std::vector<double>& z0, const std::vector<double>& v0,
                                     const std::vector<double>& t_grid, const GeodesicOptions& options = {});

/// Pairing ⟨x, y⟩ of double vectors in ambient coordinates.
double metric_pair(const MetricNilLieAlgebra& m, const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nilgeo
