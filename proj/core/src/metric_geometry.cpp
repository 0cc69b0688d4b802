#include "nilgeo/metric_geometry.hpp"

#include <random>
#include <utility>

#include "nilgeo/error.hpp"

namespace nilgeo {

namespace {

RatVector apply_j(const CenterSplitting& s, const RatVector& central, const RatVector& x) {
  return s.v_basis * (s.j_ambient(central) * s.v_coords(x));
}

}  // namespace

MetricNilLieAlgebra::MetricNilLieAlgebra(NilLieAlgebra alg, SymmetricForm metric)
    : alg_(std::move(alg)), metric_(std::move(metric)) {
  if (metric_.dim() != alg_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "metric dimension differs from algebra dimension");
  }
  auto inv = inverse(metric_.gram());
  if (!inv) throw Error(ErrorCode::InvalidForm, "metric is degenerate");
  metric_inv_ = std::move(*inv);
}

RatMatrix MetricNilLieAlgebra::ad_star(const RatVector& x) const {
  return metric_inv_ * alg_.ad(x).transpose() * metric_.gram();
}

RatMatrix CenterSplitting::j(const RatVector& zc) const {
  if (zc.size() != dim_z()) throw Error(ErrorCode::DimensionMismatch, "z-coordinate vector size");
  RatMatrix out(dim_v(), dim_v());
  for (std::size_t a = 0; a < dim_z(); ++a) {
    if (sgn(zc[a]) != 0) out = out + zc[a] * j_ops[a];
  }
  return out;
}

RatMatrix CenterSplitting::j_ambient(const RatVector& x) const {
  if (!is_zero(v_coords(x))) throw Error(ErrorCode::InvalidBasis, "j is only defined on the center");
  return j(z_coords(x));
}

RatVector CenterSplitting::z_coords(const RatVector& x) const {
  const RatVector all = split_inverse * x;
  return RatVector(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(dim_z()));
}

RatVector CenterSplitting::v_coords(const RatVector& x) const {
  const RatVector all = split_inverse * x;
  return RatVector(all.begin() + static_cast<std::ptrdiff_t>(dim_z()), all.end());
}

CenterSplitting center_splitting(const MetricNilLieAlgebra& m) {
  if (!m.is_two_step()) throw Error(ErrorCode::NotTwoStep, "center splitting needs a 2-step algebra");
  const SymmetricForm& g = m.metric();
  CenterSplitting s;
  s.z_basis = center_basis(m.algebra());
  s.gram_z = g.restricted_gram(s.z_basis);
  if (!inverse(s.gram_z)) {
    throw Error(ErrorCode::DegenerateCenter, "metric is degenerate on the center; use witt_decompose");
  }
  s.v_basis = orthogonal_complement(g, s.z_basis);
  s.gram_v = g.restricted_gram(s.v_basis);
  const auto gv_inv = inverse(s.gram_v);
  const auto split_inv = inverse(hstack(s.z_basis, s.v_basis));
  if (!gv_inv || !split_inv) throw Error(ErrorCode::InternalInconsistency, "z^⊥ is not a complement of z");
  s.split_inverse = *split_inv;

  const std::size_t q = s.dim_v();
  const auto& alg = m.algebra();
  std::vector<RatVector> gz_cols;
  for (std::size_t a = 0; a < s.dim_z(); ++a) {
    const RatVector x = s.z_basis.column(a);
    RatMatrix b(q, q);
    for (std::size_t u = 0; u < q; ++u)
      for (std::size_t w = u + 1; w < q; ++w) {
        b(u, w) = g.pair(alg.bracket(s.v_basis.column(u), s.v_basis.column(w)), x);
        b(w, u) = -b(u, w);
      }
    RatMatrix j = -(*gv_inv * b);
    if (!(s.gram_v * j + j.transpose() * s.gram_v).is_zero()) {
      throw Error(ErrorCode::InternalInconsistency, "j-map is not skew-adjoint", {a});
    }
    gz_cols.push_back(j.vec());
    s.j_ops.push_back(std::move(j));
  }
  s.j_injective = s.dim_z() > 0 && q > 0 && rank(RatMatrix::from_columns(q * q, gz_cols)) == s.dim_z();
  return s;
}

std::vector<RatMatrix> structure_endomorphisms(const MetricNilLieAlgebra& m, const RatMatrix& center_basis_choice) {
  const std::size_t n = m.dim();
  const std::size_t p = center_basis_choice.cols();
  if (center_basis_choice.rows() != n) throw Error(ErrorCode::DimensionMismatch, "center basis has wrong length");
  if (!has_independent_columns(center_basis_choice)) throw Error(ErrorCode::InvalidBasis, "dependent center basis");
  std::vector<RatMatrix> omegas(p, RatMatrix(n, n));
  const auto& alg = m.algebra();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto coords = coordinates(center_basis_choice, alg.bracket_basis(a, b));
      if (!coords) throw Error(ErrorCode::InvalidBasis, "bracket leaves the chosen subspace", {a, b});
      for (std::size_t i = 0; i < p; ++i) {
        omegas[i](a, b) = (*coords)[i];
        omegas[i](b, a) = -(*coords)[i];
      }
    }
  std::vector<RatMatrix> out;
  out.reserve(p);
  for (const auto& omega : omegas) out.push_back(-(m.metric_inverse() * omega));
  return out;
}

LeviCivita::LeviCivita(const MetricNilLieAlgebra& m) : m_(m) {
  const std::size_t n = m.dim();
  const auto& alg = m.algebra();
  std::vector<RatMatrix> stars;
  stars.reserve(n);
  for (std::size_t i = 0; i < n; ++i) stars.push_back(m.ad_star(unit_vector(n, i)));
  table_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RatMatrix cross(n, n);
    for (std::size_t j = 0; j < n; ++j) cross.set_column(j, stars[j].column(i));
    table_.push_back(Rat(1, 2) * (alg.ad_basis(i) - stars[i] - cross));
  }
}

RatMatrix LeviCivita::nabla_operator(const RatVector& x) const {
  const std::size_t n = m_.dim();
  if (x.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector size");
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(x[i]) != 0) out = out + x[i] * table_[i];
  return out;
}

RatVector LeviCivita::nabla(const RatVector& x, const RatVector& y) const { return nabla_operator(x) * y; }

RatMatrix LeviCivita::curvature_operator(const RatVector& x, const RatVector& y) const {
  const RatMatrix nx = nabla_operator(x);
  const RatMatrix ny = nabla_operator(y);
  return commutator(nx, ny) - nabla_operator(m_.algebra().bracket(x, y));
}

RatVector LeviCivita::curvature(const RatVector& x, const RatVector& y, const RatVector& z) const {
  return curvature_operator(x, y) * z;
}

RatVector covariant_derivative(const MetricNilLieAlgebra& m, const RatVector& x, const RatVector& y) {
  const RatVector xy = m.algebra().bracket(x, y);
  return Rat(1, 2) * (xy - m.ad_star(x) * y - m.ad_star(y) * x);
}

RatVector curvature(const MetricNilLieAlgebra& m, const RatVector& x, const RatVector& y, const RatVector& z) {
  return LeviCivita(m).curvature(x, y, z);
}

RatVector covariant_derivative_by_cases(const MetricNilLieAlgebra& m, const CenterSplitting& s, const RatVector& x,
                                        const RatVector& y) {
  const RatVector xz = s.z_part(x), xv = s.v_part(x);
  const RatVector yz = s.z_part(y), yv = s.v_part(y);
  RatVector out = Rat(1, 2) * m.algebra().bracket(xv, yv);
  out += Rat(-1, 2) * apply_j(s, yz, xv);
  out += Rat(-1, 2) * apply_j(s, xz, yv);
  return out;
}

RatVector curvature_by_cases(const MetricNilLieAlgebra& m, const CenterSplitting& s, const RatVector& x,
                             const RatVector& y, const RatVector& z) {
  const auto& alg = m.algebra();
  const Rat q(1, 4);
  const RatVector xz = s.z_part(x), xv = s.v_part(x);
  const RatVector yz = s.z_part(y), yv = s.v_part(y);
  const RatVector zz = s.z_part(z), zv = s.v_part(z);

  RatVector out = zero_vector(m.dim());
  // x, y, z ∈ v
  out += Rat(1, 2) * apply_j(s, alg.bracket(xv, yv), zv);
  out += -q * apply_j(s, alg.bracket(yv, zv), xv);
  out += q * apply_j(s, alg.bracket(xv, zv), yv);
  // x ∈ v, y ∈ z, z ∈ v
  out += -q * alg.bracket(xv, apply_j(s, yz, zv));
  // x ∈ z, y ∈ v, z ∈ v
  out += q * alg.bracket(yv, apply_j(s, xz, zv));
  // x, y ∈ v, z ∈ z
  out += -q * alg.bracket(xv, apply_j(s, zz, yv));
  out += q * alg.bracket(yv, apply_j(s, zz, xv));
  // x ∈ v, y, z ∈ z
  out += -q * apply_j(s, yz, apply_j(s, zz, xv));
  // x ∈ z, y ∈ v, z ∈ z
  out += q * apply_j(s, xz, apply_j(s, zz, yv));
  // x, y ∈ z, z ∈ v
  out += q * (apply_j(s, xz, apply_j(s, yz, zv)) - apply_j(s, yz, apply_j(s, xz, zv)));
  return out;
}

Rat sectional_curvature(const MetricNilLieAlgebra& m, const RatVector& x, const RatVector& y) {
  const SymmetricForm& g = m.metric();
  const Rat xy = g.pair(x, y);
  const Rat q = g.pair(x, x) * g.pair(y, y) - xy * xy;
  if (sgn(q) == 0) throw Error(ErrorCode::DegeneratePlane, "span{x, y} is degenerate");
  return g.pair(curvature(m, x, y, y), x) / q;
}

std::optional<RatMatrix> rational_orthonormal_basis(const SymmetricForm& form, const RatMatrix& basis) {
  std::vector<RatVector> rest = basis.columns();
  std::vector<RatVector> out;
  const std::size_t rows = basis.rows();
  while (!rest.empty()) {
    std::optional<RatVector> pick;
    std::size_t replaced = 0;
    for (std::size_t i = 0; i < rest.size() && !pick; ++i) {
      const Rat a = form.pair(rest[i], rest[i]);
      if (sgn(a) != 0 && is_rational_square(abs(a))) {
        pick = rest[i];
        replaced = i;
      }
    }
    for (std::size_t i = 0; i < rest.size() && !pick; ++i)
      for (std::size_t j = 0; j < rest.size() && !pick; ++j) {
        if (i == j || sgn(form.pair(rest[j], rest[j])) != 0) continue;
        const Rat c = form.pair(rest[i], rest[j]);
        if (sgn(c) == 0) continue;
        const Rat a = form.pair(rest[i], rest[i]);
        pick = rest[i] + ((Rat(1) - a) / (2 * c)) * rest[j];
        replaced = i;
      }
    for (std::size_t i = 0; i < rest.size() && !pick; ++i)
      for (std::size_t j = i + 1; j < rest.size() && !pick; ++j)
        for (int sign : {1, -1}) {
          const RatVector cand = rest[i] + Rat(sign) * rest[j];
          const Rat a = form.pair(cand, cand);
          if (sgn(a) != 0 && is_rational_square(abs(a))) {
            pick = cand;
            replaced = i;
            break;
          }
        }
    if (!pick) return std::nullopt;

    const Rat norm = form.pair(*pick, *pick);
    const RatVector e = (Rat(1) / rational_sqrt(abs(norm))) * *pick;
    const Rat ee = form.pair(e, e);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(replaced));
    for (auto& r : rest) r = r - (form.pair(r, e) / ee) * e;
    out.push_back(e);
  }
  return RatMatrix::from_columns(rows, out);
}

RicciReport ricci(const MetricNilLieAlgebra& m) {
  const std::size_t n = m.dim();
  const LeviCivita lc(m);
  RicciReport report;
  report.ric = RatMatrix(n, n);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t a = 0; a < n; ++a) {
      const RatMatrix r = lc.curvature_operator(unit_vector(n, w), unit_vector(n, a));
      for (std::size_t b = 0; b < n; ++b) report.ric(a, b) += r(w, b);
    }
  if (!report.ric.is_symmetric()) throw Error(ErrorCode::InternalInconsistency, "Ricci form is not symmetric");
  report.transformation = m.metric_inverse() * report.ric;

  if (!m.is_two_step()) return report;
  std::optional<CenterSplitting> split;
  try {
    split = center_splitting(m);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateCenter) throw;
    return report;
  }
  const SymmetricForm& g = m.metric();
  const auto zon = rational_orthonormal_basis(g, split->z_basis);
  const auto von = rational_orthonormal_basis(g, split->v_basis);
  if (!zon || !von) return report;

  auto ric = [&](const RatVector& x, const RatVector& y) { return g.pair(x, report.transformation * y); };
  auto fail = [](const char* what) { throw Error(ErrorCode::InternalInconsistency, what); };
  const auto zs = zon->columns();
  const auto vs = von->columns();
  for (const auto& x : vs)
    for (const auto& y : vs) {
      Rat expected = 0;
      for (const auto& zi : zs) expected += g.pair(zi, zi) * g.pair(apply_j(*split, zi, apply_j(*split, zi, x)), y);
      if (ric(x, y) != Rat(1, 2) * expected) fail("Ricci v-block disagrees with the j-formula");
    }
  for (const auto& x : zs)
    for (const auto& y : zs) {
      Rat expected = 0;
      for (const auto& vj : vs) expected += g.pair(vj, vj) * g.pair(apply_j(*split, x, apply_j(*split, y, vj)), vj);
      if (ric(x, y) != Rat(-1, 4) * expected) fail("Ricci z-block disagrees with the j-formula");
    }
  for (const auto& x : vs)
    for (const auto& y : zs)
      if (sgn(ric(x, y)) != 0) fail("Ricci form pairs v with z");
  report.block_formulas_checked = true;
  return report;
}

FlatnessResult flatness_check(const MetricNilLieAlgebra& m) {
  const std::size_t n = m.dim();
  const LeviCivita lc(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RatMatrix r = lc.curvature_operator(unit_vector(n, i), unit_vector(n, j));
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(r.column(k))) return FlatnessResult{false, std::array<std::size_t, 3>{i, j, k}};
    }
  return FlatnessResult{};
}

NonsingularityResult is_nonsingular(const MetricNilLieAlgebra& m, const CenterSplitting& s) {
  (void)m;
  const std::size_t p = s.dim_z();
  const std::size_t q = s.dim_v();
  NonsingularityResult result;
  if (q == 0) return result;
  auto singular = [&](RatVector zc) {
    result.verdict = NonsingularityVerdict::SingularWitness;
    result.witness = std::move(zc);
    return result;
  };
  if (p == 1) {
    if (sgn(determinant(s.j_ops[0])) == 0) return singular(unit_vector(1, 0));
    return result;
  }
  std::vector<RatVector> cols;
  for (const auto& j : s.j_ops) cols.push_back(j.vec());
  const RatMatrix kernel = nullspace(RatMatrix::from_columns(q * q, cols));
  if (kernel.cols() > 0) return singular(kernel.column(0));
  for (std::size_t a = 0; a < p; ++a)
    if (sgn(determinant(s.j_ops[a])) == 0) return singular(unit_vector(p, a));

  std::mt19937_64 rng(0x5EED);
  for (int sample = 0; sample < 64; ++sample) {
    RatVector zc(p);
    do {
      for (auto& c : zc) c = static_cast<long>(rng() % 19) - 9;
    } while (is_zero(zc));
    if (sgn(determinant(s.j(zc))) == 0) return singular(zc);
  }
  result.verdict = NonsingularityVerdict::ProbablyNonsingular;
  return result;
}

double metric_pair(const MetricNilLieAlgebra& m, const std::vector<double>& x, const std::vector<double>& y) {
  const RatMatrix& g = m.metric().gram();
  double sum = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (sgn(g(i, j)) != 0) sum += x[i] * g(i, j).get_d() * y[j];
    }
  return sum;
}

}  // namespace nilgeo
