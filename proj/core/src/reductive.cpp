#include "nilgeo/reductive.hpp"

#include <utility>

namespace nilgeo {

namespace {

std::vector<RatVector> vecs_of(const std::vector<RatMatrix>& ops) {
  std::vector<RatVector> out;
  for (const auto& op : ops) out.push_back(op.vec());
  return out;
}

}  // namespace

AdInvarianceResult is_ad_invariant(const LieAlgebra& alg, const SymmetricForm& metric) {
  const std::size_t n = alg.dim();
  if (metric.dim() != n) throw Error(ErrorCode::DimensionMismatch, "metric size differs from algebra");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const Rat s = metric.pair(alg.bracket_basis(x, y), unit_vector(n, z)) +
                      metric.pair(unit_vector(n, y), alg.bracket_basis(x, z));
        if (sgn(s) != 0) return AdInvarianceResult{false, std::array<std::size_t, 3>{x, y, z}};
      }
  return {};
}

std::optional<LieAlgebra> ReductivityReport::tau_algebra() const {
  if (!tau) return std::nullopt;
  return LieAlgebra::from_tensor(splitting.dim_z(), *tau);
}

ReductivityReport naturally_reductive_check(const MetricNilLieAlgebra& m) {
  ReductivityReport report;
  report.splitting = center_splitting(m);
  const CenterSplitting& s = report.splitting;
  const std::size_t p = s.dim_z();
  const std::size_t q = s.dim_v();
  report.j_injective = s.j_injective;
  if (!s.j_injective) {
    report.verdict = ReductivityVerdict::Inapplicable;
    report.reason = "j is not injective";
    return report;
  }

  const RatMatrix span = RatMatrix::from_columns(q * q, vecs_of(s.j_ops));
  RatVector tau(p * p * p, Rat(0));
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = a + 1; b < p; ++b) {
      const auto coeff = solve(span, commutator(s.j_ops[a], s.j_ops[b]).vec());
      if (!coeff) {
        report.verdict = ReductivityVerdict::Fails;
        report.reason = "j(z) is not closed under the bracket";
        report.witness = {a, b};
        return report;
      }
      for (std::size_t k = 0; k < p; ++k) {
        tau[(a * p + b) * p + k] = (*coeff)[k];
        tau[(b * p + a) * p + k] = -(*coeff)[k];
      }
    }
  report.closed_under_bracket = true;
  report.tau = tau;
  try {
    (void)LieAlgebra::from_tensor(p, tau);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::JacobiViolation) throw;
    throw Error(ErrorCode::InternalInconsistency, "τ violates the Jacobi identity", e.witness());
  }

  report.tau_skew = true;
  for (std::size_t x = 0; x < p; ++x) {
    RatMatrix tau_x(p, p);
    for (std::size_t y = 0; y < p; ++y)
      for (std::size_t k = 0; k < p; ++k) tau_x(k, y) = tau[(x * p + y) * p + k];
    if (!(s.gram_z * tau_x + tau_x.transpose() * s.gram_z).is_zero()) {
      report.tau_skew = false;
      report.verdict = ReductivityVerdict::Fails;
      report.reason = "τ_x is not skew-adjoint for the metric on z";
      report.witness = {x};
      return report;
    }
  }
  report.verdict = ReductivityVerdict::NaturallyReductive;
  return report;
}

DataSet extract_data_set(const MetricNilLieAlgebra& m) {
  const ReductivityReport r = naturally_reductive_check(m);
  if (r.verdict != ReductivityVerdict::NaturallyReductive) {
    throw Error(ErrorCode::InvalidBasis, "no data set: metric is not naturally reductive (" + r.reason + ")");
  }
  return DataSet{*r.tau_algebra(), SymmetricForm(r.splitting.gram_z), r.splitting.j_ops,
                 SymmetricForm(r.splitting.gram_v), {}};
}

IsotropyAlgebra isotropy_algebra(const MetricNilLieAlgebra& m) {
  IsotropyAlgebra out;
  out.splitting = center_splitting(m);
  const CenterSplitting& s = out.splitting;
  const std::size_t p = s.dim_z();
  const std::size_t q = s.dim_v();
  const std::size_t unknowns = p * p + q * q;
  auto a_var = [p](std::size_t r, std::size_t c) { return c * p + r; };
  auto b_var = [p, q](std::size_t r, std::size_t c) { return p * p + c * q + r; };

  std::vector<RatVector> rows;
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = r; c < p; ++c) {
      RatVector row(unknowns, Rat(0));
      for (std::size_t k = 0; k < p; ++k) {
        row[a_var(k, c)] += s.gram_z(r, k);
        row[a_var(k, r)] += s.gram_z(k, c);
      }
      rows.push_back(std::move(row));
    }
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t c = r; c < q; ++c) {
      RatVector row(unknowns, Rat(0));
      for (std::size_t k = 0; k < q; ++k) {
        row[b_var(k, c)] += s.gram_v(r, k);
        row[b_var(k, r)] += s.gram_v(k, c);
      }
      rows.push_back(std::move(row));
    }
  for (std::size_t a = 0; a < p; ++a) {
    const RatMatrix& j = s.j_ops[a];
    for (std::size_t r = 0; r < q; ++r)
      for (std::size_t c = 0; c < q; ++c) {
        // (B j_a − j_a B − Σ_k A(k, a) j_k)(r, c) = 0
        RatVector row(unknowns, Rat(0));
        for (std::size_t t = 0; t < q; ++t) {
          row[b_var(r, t)] += j(t, c);
          row[b_var(t, c)] -= j(r, t);
        }
        for (std::size_t k = 0; k < p; ++k) row[a_var(k, a)] -= s.j_ops[k](r, c);
        rows.push_back(std::move(row));
      }
  }
  RatMatrix system(rows.size(), unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < unknowns; ++j) system(i, j) = rows[i][j];
  const RatMatrix kernel = nullspace(system);

  auto unpack = [&](const RatVector& x) {
    IsotropyElement e{RatMatrix(p, p), RatMatrix(q, q)};
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t c = 0; c < p; ++c) e.a(r, c) = x[a_var(r, c)];
    for (std::size_t r = 0; r < q; ++r)
      for (std::size_t c = 0; c < q; ++c) e.b(r, c) = x[b_var(r, c)];
    return e;
  };
  auto pack = [&](const IsotropyElement& e) {
    RatVector x(unknowns, Rat(0));
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t c = 0; c < p; ++c) x[a_var(r, c)] = e.a(r, c);
    for (std::size_t r = 0; r < q; ++r)
      for (std::size_t c = 0; c < q; ++c) x[b_var(r, c)] = e.b(r, c);
    return x;
  };
  for (std::size_t i = 0; i < kernel.cols(); ++i) out.basis.push_back(unpack(kernel.column(i)));

  for (std::size_t i = 0; i < out.basis.size(); ++i)
    for (std::size_t j = i + 1; j < out.basis.size(); ++j) {
      const IsotropyElement br{commutator(out.basis[i].a, out.basis[j].a), commutator(out.basis[i].b, out.basis[j].b)};
      if (!in_span(kernel, pack(br))) {
        throw Error(ErrorCode::InternalInconsistency, "isotropy algebra is not closed", {i, j});
      }
    }
  if (s.j_injective) {
    const RatMatrix span = RatMatrix::from_columns(q * q, vecs_of(s.j_ops));
    for (std::size_t i = 0; i < out.basis.size(); ++i)
      for (std::size_t a = 0; a < p; ++a) {
        const auto col = coordinates(span, commutator(out.basis[i].b, s.j_ops[a]).vec());
        if (!col || *col != out.basis[i].a.column(a)) {
          throw Error(ErrorCode::InternalInconsistency, "A differs from j⁻¹ ∘ ad(B) ∘ j", {i, a});
        }
      }
  }
  return out;
}

IsotropyAlgebra isotropy_algebra(const DataSet& d) {
  const MetricNilLieAlgebra m = from_data_set(d);
  IsotropyAlgebra out = isotropy_algebra(m);
  const std::size_t k = d.g.dim();
  for (std::size_t i = 0; i < out.basis.size(); ++i) {
    const RatMatrix& a = out.basis[i].a;
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = x + 1; y < k; ++y) {
        const RatVector lhs = a * d.g.bracket_basis(x, y);
        const RatVector rhs = d.g.bracket(a.column(x), unit_vector(k, y)) + d.g.bracket(unit_vector(k, x), a.column(y));
        if (lhs != rhs) throw Error(ErrorCode::InternalInconsistency, "A is not a derivation of g", {i, x, y});
      }
  }
  return out;
}

CorankNormalForm corank_decomposition(const MetricNilLieAlgebra& m) {
  if (!m.is_two_step()) throw Error(ErrorCode::NotTwoStep, "corank decomposition expects a 2-step algebra");
  if (const auto inv = is_ad_invariant(m); !inv.invariant) {
    const auto& w = *inv.witness;
    throw Error(ErrorCode::NotAdInvariant, "metric is not ad-invariant", {w[0], w[1], w[2]});
  }
  const SymmetricForm& g = m.metric();
  const StructureReport rep = structure_report(m.algebra());

  CorankNormalForm out;
  out.corank = rep.corank;
  out.z_tilde_basis = greedy_complement(rep.commutator, rep.center);
  if (!g.restrict_to(out.z_tilde_basis).is_nondegenerate()) {
    throw Error(ErrorCode::InternalInconsistency, "metric is degenerate on the central factor");
  }
  out.n_tilde_basis = orthogonal_complement(g, out.z_tilde_basis);
  out.u_basis = rep.commutator;
  const std::size_t d = out.u_basis.cols();
  if (!g.restricted_gram(out.u_basis).is_zero() || out.n_tilde_basis.cols() != 2 * d) {
    throw Error(ErrorCode::InternalInconsistency, "commutator is not a Lagrangian of the corank-0 factor");
  }
  out.v_basis = isotropic_partners(g, out.u_basis, out.n_tilde_basis);
  out.inner_v = SymmetricForm(RatMatrix::identity(d));
  out.embedding = hstack(out.u_basis, out.v_basis);
  if (d == 0) return out;

  const auto& alg = m.algebra();
  for (std::size_t c = 0; c < d; ++c) {
    RatMatrix rho(d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        rho(b, a) = g.pair(alg.bracket(out.v_basis.column(a), out.v_basis.column(b)), out.v_basis.column(c));
    out.rho.push_back(std::move(rho));
  }
  out.rebuilt = modified_cotangent(out.inner_v, out.rho);

  const RatMatrix& p = out.embedding;
  if (!(p.transpose() * g.gram() * p == out.rebuilt->metric().gram())) {
    throw Error(ErrorCode::InternalInconsistency, "embedding is not isometric");
  }
  for (std::size_t a = 0; a < 2 * d; ++a)
    for (std::size_t b = a + 1; b < 2 * d; ++b) {
      if (p * out.rebuilt->algebra().bracket_basis(a, b) != alg.bracket(p.column(a), p.column(b))) {
        throw Error(ErrorCode::InternalInconsistency, "embedding does not preserve brackets", {a, b});
      }
    }
  return out;
}

}  // namespace nilgeo
