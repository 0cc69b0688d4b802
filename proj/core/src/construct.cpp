#include "nilgeo/construct.hpp"

#include <algorithm>
#include <utility>

namespace nilgeo {

namespace {

std::string describe(const std::vector<DataSetViolation>& violations) {
  std::string out = "invalid data set:";
  for (const auto& v : violations) out += " [" + std::string(to_string(v.code)) + "] " + v.message + ";";
  return out;
}

bool is_skew_for(const RatMatrix& gram, const RatMatrix& op) {
  return (gram * op + op.transpose() * gram).is_zero();
}

MetricNilLieAlgebra make_metric(std::size_t dim, const std::vector<BracketEntry>& brackets, const RatMatrix& gram,
                                std::vector<std::string> names = {}) {
  return MetricNilLieAlgebra(from_structure_constants(dim, brackets, std::move(names)), SymmetricForm(gram));
}

/// Bracket on v from j-maps: [u, w] = G_z⁻¹ b with b_x = ⟨j(x)u, w⟩_V,
/// placed at offset `z_offset` inside a `total`-dimensional tensor.
RatVector bracket_tensor_from_j(const RatMatrix& gram_z, const RatMatrix& gram_v, const std::vector<RatMatrix>& j,
                                std::size_t z_offset, std::size_t v_offset, std::size_t total) {
  const std::size_t p = gram_z.rows();
  const std::size_t q = gram_v.rows();
  const auto gz_inv = inverse(gram_z);
  if (!gz_inv) throw Error(ErrorCode::InvalidForm, "metric on the center is degenerate");
  RatVector c(total * total * total, Rat(0));
  for (std::size_t u = 0; u < q; ++u)
    for (std::size_t w = u + 1; w < q; ++w) {
      RatVector b(p);
      for (std::size_t x = 0; x < p; ++x) {
        const RatVector ju = j[x] * unit_vector(q, u);
        b[x] = dot(ju, gram_v * unit_vector(q, w));
      }
      const RatVector coeff = *gz_inv * b;
      for (std::size_t k = 0; k < p; ++k) {
        c[((v_offset + u) * total + v_offset + w) * total + z_offset + k] = coeff[k];
        c[((v_offset + w) * total + v_offset + u) * total + z_offset + k] = -coeff[k];
      }
    }
  return c;
}

void check_j_maps(const SymmetricForm& gram_z, const SymmetricForm& gram_v, const std::vector<RatMatrix>& j) {
  if (j.size() != gram_z.dim()) throw Error(ErrorCode::DimensionMismatch, "one j-map per center basis vector");
  for (std::size_t a = 0; a < j.size(); ++a) {
    if (j[a].rows() != gram_v.dim() || j[a].cols() != gram_v.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "j-map has wrong size", {a});
    }
    if (!is_skew_for(gram_v.gram(), j[a])) throw Error(ErrorCode::NotSkewAdjoint, "j-map is not skew-adjoint", {a});
  }
  if (!gram_v.is_nondegenerate()) throw Error(ErrorCode::InvalidForm, "metric on v is degenerate");
}

RatMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
  RatMatrix m(n, n);
  m(i, j) = 1;
  return m;
}

}  // namespace

DataSetError::DataSetError(std::vector<DataSetViolation> violations)
    : Error(violations.empty() ? ErrorCode::InternalInconsistency : violations.front().code, describe(violations),
            violations.empty() ? std::vector<std::size_t>{} : violations.front().witness),
      violations_(std::move(violations)) {}

std::vector<DataSetViolation> validate(const DataSet& d) {
  std::vector<DataSetViolation> out;
  const std::size_t k = d.g.dim();
  const std::size_t n = d.metric_v.dim();
  if (d.metric_g.dim() != k) out.push_back({ErrorCode::DimensionMismatch, "metric_g has wrong size", {}});
  if (d.rep.size() != k) out.push_back({ErrorCode::DimensionMismatch, "need one matrix per basis vector of g", {}});
  for (std::size_t i = 0; i < d.rep.size(); ++i)
    if (d.rep[i].rows() != n || d.rep[i].cols() != n) {
      out.push_back({ErrorCode::DimensionMismatch, "representation matrix has wrong size", {i}});
    }
  if (!d.v_names.empty() && d.v_names.size() != n) {
    out.push_back({ErrorCode::DimensionMismatch, "V name count differs from dim V", {}});
  }
  if (!out.empty()) return out;
  if (!d.metric_g.is_nondegenerate()) out.push_back({ErrorCode::InvalidForm, "metric_g is degenerate", {}});
  if (!d.metric_v.is_nondegenerate()) out.push_back({ErrorCode::InvalidForm, "metric_V is degenerate", {}});

  [&] {
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y)
        for (std::size_t z = 0; z < k; ++z) {
          const Rat s = d.metric_g.pair(d.g.bracket_basis(x, y), unit_vector(k, z)) +
                        d.metric_g.pair(unit_vector(k, y), d.g.bracket_basis(x, z));
          if (sgn(s) != 0) {
            out.push_back({ErrorCode::AdInvarianceViolation, "metric_g is not ad-invariant", {x, y, z}});
            return;
          }
        }
  }();

  [&] {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        RatMatrix image(n, n);
        for (std::size_t l = 0; l < k; ++l)
          if (sgn(d.g.c(i, j, l)) != 0) image = image + d.g.c(i, j, l) * d.rep[l];
        if (!(commutator(d.rep[i], d.rep[j]) == image)) {
          out.push_back({ErrorCode::NotHomomorphism, "[π(x), π(y)] ≠ π([x, y])", {i, j}});
          return;
        }
      }
  }();

  std::vector<RatVector> vecs;
  for (const auto& r : d.rep) vecs.push_back(r.vec());
  const RatMatrix kernel = nullspace(RatMatrix::from_columns(n * n, vecs));
  if (kernel.cols() > 0) {
    std::vector<std::size_t> support;
    const RatVector kv = kernel.column(0);
    for (std::size_t i = 0; i < kv.size(); ++i)
      if (sgn(kv[i]) != 0) support.push_back(i);
    out.push_back({ErrorCode::NotFaithful, "π has a nonzero kernel", support});
  }

  RatMatrix stacked(0, n);
  for (const auto& r : d.rep) stacked = vstack(stacked, r);
  const RatMatrix fixed = nullspace(stacked);
  if (fixed.cols() > 0) {
    std::vector<std::size_t> support;
    const RatVector fv = fixed.column(0);
    for (std::size_t i = 0; i < fv.size(); ++i)
      if (sgn(fv[i]) != 0) support.push_back(i);
    out.push_back({ErrorCode::TrivialSubrep, "π has a trivial subrepresentation", support});
  }

  for (std::size_t i = 0; i < k; ++i)
    if (!is_skew_for(d.metric_v.gram(), d.rep[i])) {
      out.push_back({ErrorCode::NotSkewAdjoint, "π(x) is not skew-adjoint for metric_V", {i}});
      break;
    }
  return out;
}

MetricNilLieAlgebra from_data_set(const DataSet& d) {
  if (auto violations = validate(d); !violations.empty()) throw DataSetError(std::move(violations));
  const std::size_t k = d.g.dim();
  const std::size_t n = d.metric_v.dim();
  std::vector<std::string> names = d.g.names();
  const auto vn = d.v_names.empty() ? default_names(n, "v") : d.v_names;
  names.insert(names.end(), vn.begin(), vn.end());
  if (std::find_first_of(d.g.names().begin(), d.g.names().end(), vn.begin(), vn.end()) != d.g.names().end()) {
    names = default_names(k + n);
  }
  RatVector c = bracket_tensor_from_j(d.metric_g.gram(), d.metric_v.gram(), d.rep, 0, k, k + n);
  MetricNilLieAlgebra m(NilLieAlgebra(LieAlgebra::from_tensor(k + n, std::move(c), std::move(names))),
                        SymmetricForm(block_diagonal(d.metric_g.gram(), d.metric_v.gram())));

  const StructureReport report = structure_report(m.algebra());
  RatMatrix g_span(k + n, k);
  for (std::size_t i = 0; i < k; ++i) g_span(i, i) = 1;
  if (!same_span(report.center, g_span) || !same_span(report.commutator, g_span)) {
    throw Error(ErrorCode::InternalInconsistency, "center or commutator differs from g");
  }
  const CenterSplitting s = center_splitting(m);
  RatMatrix to_v(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) to_v(a, b) = s.v_basis(k + a, b);
  const RatMatrix from_v = *inverse(to_v);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(to_v * s.j_ambient(unit_vector(k + n, i)) * from_v == d.rep[i])) {
      throw Error(ErrorCode::InternalInconsistency, "recovered j differs from π", {i});
    }
  }
  return m;
}

MetricNilLieAlgebra from_j_maps(const SymmetricForm& gram_z, const SymmetricForm& gram_v,
                                const std::vector<RatMatrix>& j) {
  check_j_maps(gram_z, gram_v, j);
  const std::size_t p = gram_z.dim();
  const std::size_t q = gram_v.dim();
  RatVector c = bracket_tensor_from_j(gram_z.gram(), gram_v.gram(), j, 0, p, p + q);
  return MetricNilLieAlgebra(NilLieAlgebra(LieAlgebra::from_tensor(p + q, std::move(c))),
                             SymmetricForm(block_diagonal(gram_z.gram(), gram_v.gram())));
}

MetricNilLieAlgebra heisenberg(std::size_t n, const SymmetricForm& b, const RatMatrix& t, const Rat& lambda) {
  const std::size_t q = 2 * n;
  if (n == 0) throw Error(ErrorCode::InvalidShape, "heisenberg needs n ≥ 1");
  if (b.dim() != q || t.rows() != q || t.cols() != q) throw Error(ErrorCode::DimensionMismatch, "B and t must be 2n×2n");
  if (sgn(lambda) == 0) throw Error(ErrorCode::InvalidForm, "λ must be nonzero");
  if (!b.is_nondegenerate()) throw Error(ErrorCode::InvalidForm, "B is degenerate");
  if (!is_skew_for(b.gram(), t)) throw Error(ErrorCode::NotSkewAdjoint, "t is not skew-adjoint for B");
  if (sgn(determinant(t)) == 0) throw Error(ErrorCode::SingularT, "t is singular");
  const RatMatrix gz{{lambda}};
  RatVector c = bracket_tensor_from_j(gz, b.gram(), {t}, q, 0, q + 1);
  return MetricNilLieAlgebra(NilLieAlgebra(LieAlgebra::from_tensor(q + 1, std::move(c))),
                             SymmetricForm(block_diagonal(b.gram(), gz)));
}

MetricNilLieAlgebra flip_center_sign(const MetricNilLieAlgebra& m) {
  const CenterSplitting s = center_splitting(m);
  const RatMatrix blocks = block_diagonal(-s.gram_z, s.gram_v);
  return MetricNilLieAlgebra(m.algebra(), SymmetricForm(s.split_inverse.transpose() * blocks * s.split_inverse));
}

MetricNilLieAlgebra cotangent_double(const NilLieAlgebra& alg) {
  if (!alg.is_at_most_two_step()) throw Error(ErrorCode::NotTwoStep, "cotangent double expects a 2-step algebra");
  const std::size_t n = alg.dim();
  const std::size_t total = 2 * n;
  RatVector c(total * total * total, Rat(0));
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> Rat& { return c[(i * total + j) * total + k]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        at(n + i, n + j, n + k) = alg.c(i, j, k);
        // [e_i, f^j] has f^k-coefficient −c_ik^j
        at(n + i, j, k) = -alg.c(i, k, j);
        at(j, n + i, k) = alg.c(i, k, j);
      }
  RatMatrix gram(total, total);
  for (std::size_t i = 0; i < n; ++i) {
    gram(i, n + i) = 1;
    gram(n + i, i) = 1;
  }
  std::vector<std::string> names = default_names(n, "f");
  for (const auto& name : alg.names()) names.push_back(name);
  if (std::find_first_of(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(n),
                         names.begin() + static_cast<std::ptrdiff_t>(n), names.end()) !=
      names.begin() + static_cast<std::ptrdiff_t>(n)) {
    names = default_names(total);
  }
  return MetricNilLieAlgebra(NilLieAlgebra(LieAlgebra::from_tensor(total, std::move(c), std::move(names))),
                             SymmetricForm(gram));
}

MetricNilLieAlgebra modified_cotangent(const SymmetricForm& inner, const std::vector<RatMatrix>& rho) {
  const std::size_t d = inner.dim();
  if (d == 0) throw Error(ErrorCode::InvalidShape, "V must be nonzero");
  if (rho.size() != d) throw Error(ErrorCode::DimensionMismatch, "need ρ(w_k) for every basis vector of V");
  const Signature sig = signature(inner);
  if (sig.p != d) throw Error(ErrorCode::InvalidForm, "inner product on V must be positive definite");
  std::vector<RatVector> vecs;
  for (std::size_t k = 0; k < d; ++k) {
    if (rho[k].rows() != d || rho[k].cols() != d) throw Error(ErrorCode::DimensionMismatch, "ρ matrix size", {k});
    if (!is_skew_for(inner.gram(), rho[k])) throw Error(ErrorCode::RhoNotSkew, "ρ(w) is not skew-adjoint", {k});
    vecs.push_back(rho[k].vec());
  }
  if (rank(RatMatrix::from_columns(d * d, vecs)) != d) throw Error(ErrorCode::RhoNotInjective, "ρ is not injective");
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) {
      if (!is_zero(rho[a] * unit_vector(d, b) + rho[b] * unit_vector(d, a))) {
        throw Error(ErrorCode::RhoUUNonzero, "ρ(u)u ≠ 0", {a, b});
      }
    }

  const std::size_t total = 2 * d;
  RatVector c(total * total * total, Rat(0));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t k = 0; k < d; ++k)
        c[((d + a) * total + d + b) * total + k] = inner.pair(rho[k] * unit_vector(d, a), unit_vector(d, b));
  RatMatrix gram(total, total);
  for (std::size_t i = 0; i < d; ++i) {
    gram(i, d + i) = 1;
    gram(d + i, i) = 1;
  }
  std::vector<std::string> names = default_names(d, "f");
  const auto ws = default_names(d, "w");
  names.insert(names.end(), ws.begin(), ws.end());
  return MetricNilLieAlgebra(NilLieAlgebra(LieAlgebra::from_tensor(total, std::move(c), std::move(names))),
                             SymmetricForm(gram));
}

MetricNilLieAlgebra orthogonal_product(const MetricNilLieAlgebra& a, const MetricNilLieAlgebra& b) {
  return MetricNilLieAlgebra(NilLieAlgebra(direct_product(a.algebra(), b.algebra())),
                             SymmetricForm(block_diagonal(a.metric().gram(), b.metric().gram())));
}

MetricNilLieAlgebra abelian_metric(const SymmetricForm& metric) {
  return MetricNilLieAlgebra(NilLieAlgebra(abelian_algebra(metric.dim())), metric);
}

MetricNilLieAlgebra change_basis(const MetricNilLieAlgebra& m, const RatMatrix& p, std::vector<std::string> names) {
  const std::size_t n = m.dim();
  if (p.rows() != n || p.cols() != n) throw Error(ErrorCode::DimensionMismatch, "change of basis must be square");
  const auto p_inv = inverse(p);
  if (!p_inv) throw Error(ErrorCode::InvalidBasis, "change of basis is singular");
  RatVector c(n * n * n, Rat(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const RatVector coeff = *p_inv * m.algebra().bracket(p.column(a), p.column(b));
      for (std::size_t k = 0; k < n; ++k) c[(a * n + b) * n + k] = coeff[k];
    }
  return MetricNilLieAlgebra(NilLieAlgebra(LieAlgebra::from_tensor(n, std::move(c), std::move(names))),
                             SymmetricForm(p.transpose() * m.metric().gram() * p));
}

RatMatrix dim6_relabeling() {
  // Rows: f^1, f^2, f^3, E_1, E_2, E_3. Columns: e1..e6.
  RatMatrix p(6, 6);
  p(5, 0) = 1;
  p(1, 1) = -1;
  p(0, 2) = 1;
  p(3, 3) = 1;
  p(4, 4) = 1;
  p(2, 5) = 1;
  return p;
}

DataSet so_pq_evaluation(std::size_t p, std::size_t q) {
  const std::size_t n = p + q;
  if (n < 3) throw Error(ErrorCode::InvalidShape, "so(p, q) is semisimple only for p + q ≥ 3");
  RatVector eta(n, Rat(1));
  for (std::size_t i = p; i < n; ++i) eta[i] = -1;
  const RatMatrix eta_m = RatMatrix::diagonal(eta);
  std::vector<RatMatrix> basis;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      basis.push_back((matrix_unit(n, i, j) - matrix_unit(n, j, i)) * eta_m);
      names.push_back("L" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  DataSet d{matrix_lie_algebra(basis, names), SymmetricForm(), basis, SymmetricForm(eta_m), default_names(n, "u")};
  d.metric_g = SymmetricForm(killing_form(d.g));
  return d;
}

DataSet so3_adjoint_dataset() {
  const std::vector<BracketEntry> brackets = {
      {0, 1, {{2, Rat(1)}}},
      {1, 2, {{0, Rat(1)}}},
      {2, 0, {{1, Rat(1)}}},
  };
  LieAlgebra g = LieAlgebra::from_brackets(3, brackets, {"E1", "E2", "E3"});
  const SymmetricForm killing(killing_form(g));
  std::vector<RatMatrix> rep;
  for (std::size_t i = 0; i < 3; ++i) rep.push_back(g.ad_basis(i));
  return DataSet{g, killing, rep, killing, {"V1", "V2", "V3"}};
}

namespace {

DataSet sl2_modified_tangent() {
  // H, E, F with [H,E] = 2E, [H,F] = −2F, [E,F] = H.
  const std::vector<BracketEntry> brackets = {
      {0, 1, {{1, Rat(2)}}},
      {0, 2, {{2, Rat(-2)}}},
      {1, 2, {{0, Rat(1)}}},
  };
  LieAlgebra g = LieAlgebra::from_brackets(3, brackets, {"H", "E", "F"});
  const SymmetricForm killing(killing_form(g));
  std::vector<RatMatrix> rep;
  for (std::size_t i = 0; i < 3; ++i) rep.push_back(g.ad_basis(i));
  return DataSet{g, killing, rep, killing, {"vH", "vE", "vF"}};
}

MetricNilLieAlgebra h3_with(const RatVector& diag) {
  return make_metric(3, {{0, 1, {{2, Rat(1)}}}}, RatMatrix::diagonal(diag));
}

}  // namespace

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {
      "h3_riemannian",   "h3_lorentz_1",      "h3_lorentz_2",        "r_x_h3_lorentz",   "heisenberg_2n1",
      "free3step2gen",   "dim6_cotangent_h3", "so3_adjoint_dataset", "so_pq_evaluation", "modified_tangent",
  };
  return ids;
}

CatalogEntry example_catalog(std::string_view id) {
  if (id == "h3_riemannian") return h3_with({1, 1, 1});
  if (id == "h3_lorentz_1") return h3_with({1, 1, -1});
  if (id == "h3_lorentz_2") return h3_with({-1, 1, 1});
  if (id == "r_x_h3_lorentz") {
    RatMatrix g(4, 4);
    g(0, 0) = 1;
    g(1, 1) = 1;
    g(2, 3) = 1;
    g(3, 2) = 1;
    return make_metric(4, {{0, 1, {{2, Rat(1)}}}}, g);
  }
  if (id == "heisenberg_2n1") {
    const RatMatrix t{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
    return heisenberg(2, SymmetricForm::diagonal({1, 1, -1, -1}), t, Rat(-1));
  }
  if (id == "free3step2gen") {
    RatMatrix g(5, 5);
    g(2, 2) = 1;
    g(0, 4) = g(4, 0) = 1;
    g(1, 3) = g(3, 1) = -1;
    return make_metric(5, {{0, 1, {{2, Rat(1)}}}, {0, 2, {{3, Rat(1)}}}, {1, 2, {{4, Rat(1)}}}}, g);
  }
  if (id == "dim6_cotangent_h3") {
    RatMatrix g(6, 6);
    g(0, 5) = g(5, 0) = 1;
    g(1, 4) = g(4, 1) = -1;
    g(2, 3) = g(3, 2) = 1;
    return make_metric(6, {{3, 4, {{0, Rat(1)}}}, {3, 5, {{1, Rat(1)}}}, {4, 5, {{2, Rat(1)}}}}, g);
  }
  if (id == "so3_adjoint_dataset") return so3_adjoint_dataset();
  if (id == "so_pq_evaluation") return so_pq_evaluation(2, 1);
  if (id == "modified_tangent") return sl2_modified_tangent();
  throw Error(ErrorCode::UnknownExample, "unknown example id '" + std::string(id) + "'");
}

}  // namespace nilgeo
