#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nilgeo/error.hpp"
#include "nilgeo/form.hpp"
#include "nilgeo/lie_algebra.hpp"
#include "nilgeo/metric_geometry.hpp"

namespace nilgeo {

/// A Lie algebra g with an ad-invariant metric, a faithful representation
/// π on V without trivial subrepresentations, and a π-invariant metric on V.
struct DataSet {
  LieAlgebra g;
  SymmetricForm metric_g;
  std::vector<RatMatrix> rep;  ///< π(x_i) for each basis vector of g
  SymmetricForm metric_v;
  std::vector<std::string> v_names;  ///< optional labels for V
};

struct DataSetViolation {
  ErrorCode code;
  std::string message;
  std::vector<std::size_t> witness;
};

/// Every violated invariant, in a fixed order: shapes, ad-invariance,
/// homomorphism, faithfulness, trivial subrepresentations, skew-adjointness.
std::vector<DataSetViolation> validate(const DataSet& d);

class DataSetError : public Error {
 public:
  explicit DataSetError(std::vector<DataSetViolation> violations);
  const std::vector<DataSetViolation>& violations() const noexcept { return violations_; }

 private:
  std::vector<DataSetViolation> violations_;
};

/// n = g ⊕ V (g first) with ⟨[u,v], x⟩_g = ⟨π(x)u, v⟩_V and the product
/// metric. Throws DataSetError listing all violations.
MetricNilLieAlgebra from_data_set(const DataSet& d);

/// Same bracket rule from bare j-maps on (z, gram_z) and (v, gram_v), z
/// first. Each j must be skew-adjoint for gram_v (NotSkewAdjoint).
MetricNilLieAlgebra from_j_maps(const SymmetricForm& gram_z, const SymmetricForm& gram_v,
                                const std::vector<RatMatrix>& j);

/// h_{2n+1} with basis (v_1, ..., v_2n, z), ⟨z,z⟩ = λ and
/// ⟨[u,v], z⟩ = B(tu, v), so that j(z) = t.
MetricNilLieAlgebra heisenberg(std::size_t n, const SymmetricForm& b, const RatMatrix& t, const Rat& lambda);

/// Negates the metric on the center; j becomes −j.
MetricNilLieAlgebra flip_center_sign(const MetricNilLieAlgebra& m);

/// T*n = n ⋉ n* with basis (f^1, ..., f^n, e_1, ..., e_n), the coadjoint
/// action [e_i, f^j] = −Σ_k c_ik^j f^k and ⟨(x,φ),(y,ψ)⟩ = φ(y) + ψ(x).
MetricNilLieAlgebra cotangent_double(const NilLieAlgebra& alg);

/// V* ⊕ V with basis (f^1..f^d, w_1..w_d), ⟨f^i, w_j⟩ = δ_ij and
/// [w_a, w_b] = Σ_k ⟨ρ(w_k) w_a, w_b⟩_+ f^k.
MetricNilLieAlgebra modified_cotangent(const SymmetricForm& inner, const std::vector<RatMatrix>& rho);

/// m1 × m2 with the orthogonal sum metric.
MetricNilLieAlgebra orthogonal_product(const MetricNilLieAlgebra& a, const MetricNilLieAlgebra& b);
MetricNilLieAlgebra abelian_metric(const SymmetricForm& metric);

/// The same metric Lie algebra written in the basis given by the columns of p.
MetricNilLieAlgebra change_basis(const MetricNilLieAlgebra& m, const RatMatrix& p,
                                 std::vector<std::string> names = {});

/// Columns: the dim-6 labels e1..e6 written in the basis (f^1, f^2, f^3,
/// E_1, E_2, E_3) of cotangent_double(h3): e1 = E_3, e2 = −f^2, e3 = f^1,
/// e4 = E_1, e5 = E_2, e6 = f^3.
RatMatrix dim6_relabeling();

/// so(p, q) with basis L_ij = (e_i e_jᵀ − e_j e_iᵀ)η (i < j), Killing metric,
/// acting on R^{p,q} by evaluation.
DataSet so_pq_evaluation(std::size_t p, std::size_t q);

/// so(3) with [E1,E2] = E3 (cyclic), Killing metric, π = ad on itself.
DataSet so3_adjoint_dataset();

using CatalogEntry = std::variant<MetricNilLieAlgebra, DataSet>;

/// Known ids: h3_riemannian, h3_lorentz_1, h3_lorentz_2, r_x_h3_lorentz,
/// heisenberg_2n1, free3step2gen, dim6_cotangent_h3, so3_adjoint_dataset,
/// so_pq_evaluation, modified_tangent. Throws UnknownExample.
CatalogEntry example_catalog(std::string_view id);
const std::vector<std::string>& catalog_ids();

}  // namespace nilgeo
