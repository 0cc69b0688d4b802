#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilgeo/construct.hpp"
#include "nilgeo/metric_geometry.hpp"

namespace nilgeo {

struct AdInvarianceResult {
  bool invariant = true;
  /// First (x, y, z) with ⟨[x,y],z⟩ + ⟨y,[x,z]⟩ ≠ 0.
  std::optional<std::array<std::size_t, 3>> witness;
};

AdInvarianceResult is_ad_invariant(const LieAlgebra& alg, const SymmetricForm& metric);
inline AdInvarianceResult is_ad_invariant(const MetricNilLieAlgebra& m) {
  return is_ad_invariant(m.algebra(), m.metric());
}

enum class ReductivityVerdict { NaturallyReductive, Fails, Inapplicable };

struct ReductivityReport {
  CenterSplitting splitting;
  bool j_injective = false;
  bool closed_under_bracket = false;
  /// [j(z_a), j(z_b)] = Σ_k tau(a, b, k) j(z_k), flattened as (a·p + b)·p + k.
  std::optional<RatVector> tau;
  bool tau_skew = false;
  ReductivityVerdict verdict = ReductivityVerdict::Inapplicable;
  std::string reason;
  std::vector<std::size_t> witness;

  /// (z, τ) as a Lie algebra in the splitting's z-basis.
  std::optional<LieAlgebra> tau_algebra() const;
};

/// Algebraic criterion: j(z) closed under the commutator and every τ_x skew
/// for ⟨,⟩_z. Non-injective j gives Inapplicable. Throws NotTwoStep and
/// DegenerateCenter; a τ violating Jacobi throws InternalInconsistency.
ReductivityReport naturally_reductive_check(const MetricNilLieAlgebra& m);

/// Rebuilds (g, π, V) from a naturally reductive metric: g = (z, τ),
/// π = j. Throws InvalidBasis when the verdict is not NaturallyReductive.
DataSet extract_data_set(const MetricNilLieAlgebra& m);

struct IsotropyElement {
  RatMatrix a;  ///< on z-coordinates
  RatMatrix b;  ///< on v-coordinates
};

struct IsotropyAlgebra {
  CenterSplitting splitting;
  std::vector<IsotropyElement> basis;
  std::size_t dim() const noexcept { return basis.size(); }
};

/// Pairs (A, B) ∈ so(z) × so(v) with [B, j(x)] = j(Ax) for all x in z.
/// The result is checked to be closed under the componentwise commutator.
IsotropyAlgebra isotropy_algebra(const MetricNilLieAlgebra& m);
/// Same for from_data_set(d); each A is additionally checked to be a
/// derivation of g.
IsotropyAlgebra isotropy_algebra(const DataSet& d);

struct CorankNormalForm {
  std::size_t corank = 0;
  RatMatrix z_tilde_basis;
  RatMatrix n_tilde_basis;
  RatMatrix u_basis;  ///< center of the corank-0 factor
  RatMatrix v_basis;  ///< isotropic partner, ⟨u_i, v_j⟩ = δ_ij
  SymmetricForm inner_v;
  std::vector<RatMatrix> rho;
  /// Columns: images of (f^1..f^d, w_1..w_d) of the rebuilt modified cotangent.
  RatMatrix embedding;
  std::optional<MetricNilLieAlgebra> rebuilt;
};

/// n = z̃ ⊥ ñ with z̃ a greedy complement of C(n) in z(n) and ñ a modified
/// cotangent. Throws NotTwoStep and NotAdInvariant.
CorankNormalForm corank_decomposition(const MetricNilLieAlgebra& m);

}  // namespace nilgeo
