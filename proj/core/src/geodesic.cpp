#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "nilgeo/error.hpp"
#include "nilgeo/expm.hpp"
#include "nilgeo/metric_geometry.hpp"

namespace nilgeo {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd to_eigen(const RatMatrix& m) {
  MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

/// Evaluates v(t), v'(t) and the bracket integrand for one initial condition.
class Flow {
 public:
  Flow(const MatrixXd& j, VectorXd v0, std::vector<MatrixXd> bracket_z)
      : j_(j), v0_(std::move(v0)), bracket_z_(std::move(bracket_z)) {}

  void state(double t, VectorXd& v, VectorXd& dv) const {
    const ExpPhi ep = mat_exp_phi(j_, t);
    v = ep.phi * v0_;
    dv = ep.exp * v0_;
  }

  /// z-coordinates of [v'(s), v(s)].
  VectorXd integrand(double s) const {
    VectorXd v, dv;
    state(s, v, dv);
    VectorXd out(static_cast<Eigen::Index>(bracket_z_.size()));
    for (std::size_t k = 0; k < bracket_z_.size(); ++k) out(static_cast<Eigen::Index>(k)) = dv.dot(bracket_z_[k] * v);
    return out;
  }

  const MatrixXd& j() const { return j_; }

 private:
  MatrixXd j_;
  VectorXd v0_;
  std::vector<MatrixXd> bracket_z_;
};

VectorXd simpson_step(const Flow& f, double a, double b, const VectorXd& fa, const VectorXd& fm, const VectorXd& fb,
                      const VectorXd& whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const VectorXd flm = f.integrand(0.5 * (a + m));
  const VectorXd frm = f.integrand(0.5 * (m + b));
  const VectorXd left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const VectorXd right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const VectorXd delta = left + right - whole;
  if (depth <= 0 || delta.cwiseAbs().maxCoeff() <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

VectorXd adaptive_simpson(const Flow& f, double a, double b, double tol) {
  const VectorXd fa = f.integrand(a);
  const VectorXd fb = f.integrand(b);
  const VectorXd fm = f.integrand(0.5 * (a + b));
  const VectorXd whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

VectorXd gauss_legendre(const Flow& f, double a, double b) {
  static constexpr double kNodes[] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                      -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                      0.7966664774136267,  0.9602898564975363};
  static constexpr double kWeights[] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                        0.2223810344533745, 0.1012285362903763};
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  VectorXd sum = VectorXd::Zero(f.integrand(mid).size());
  for (int i = 0; i < 8; ++i) sum += kWeights[i] * f.integrand(mid + half * kNodes[i]);
  return half * sum;
}

}  // namespace

std::vector<GeodesicSample> geodesic(const MetricNilLieAlgebra& m, const CenterSplitting& s,
                                     const std::vector<double>& z0, const std::vector<double>& v0,
                                     const std::vector<double>& t_grid, const GeodesicOptions& options) {
  const std::size_t p = s.dim_z();
  const std::size_t q = s.dim_v();
  if (z0.size() != p || v0.size() != q) throw Error(ErrorCode::DimensionMismatch, "initial velocity size");
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(z0.begin(), z0.end(), finite) || !std::all_of(v0.begin(), v0.end(), finite) ||
      !std::all_of(t_grid.begin(), t_grid.end(), finite)) {
    throw Error(ErrorCode::InvalidShape, "non-finite geodesic input");
  }

  MatrixXd j = MatrixXd::Zero(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
  for (std::size_t a = 0; a < p; ++a) j += z0[a] * to_eigen(s.j_ops[a]);

  // bracket_z[k](a, b) = z-coordinate k of [v_a, v_b]
  std::vector<MatrixXd> bracket_z(p, MatrixXd::Zero(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q)));
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) {
      const RatVector zc = s.z_coords(m.algebra().bracket(s.v_basis.column(a), s.v_basis.column(b)));
      for (std::size_t k = 0; k < p; ++k)
        bracket_z[k](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = zc[k].get_d();
    }
  const Flow flow(j, to_eigen(v0), bracket_z);
  const VectorXd z0e = to_eigen(z0);
  const MatrixXd zb = to_eigen(s.z_basis);
  const MatrixXd vb = to_eigen(s.v_basis);

  // ∫_0^t [v', v] for every grid point, accumulated outward from 0.
  std::map<double, VectorXd> integral;
  integral[0.0] = VectorXd::Zero(static_cast<Eigen::Index>(p));
  std::vector<double> pos, neg;
  for (double t : t_grid) (t >= 0 ? pos : neg).push_back(t);
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end(), std::greater<>());
  for (const auto* side : {&pos, &neg}) {
    double prev = 0.0;
    VectorXd acc = VectorXd::Zero(static_cast<Eigen::Index>(p));
    for (double t : *side) {
      if (t != prev) acc += adaptive_simpson(flow, prev, t, options.quadrature_tolerance);
      integral[t] = acc;
      prev = t;
    }
  }

  const double h = options.residual_step;
  std::vector<GeodesicSample> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    GeodesicSample sample;
    sample.t = t;
    VectorXd v, dv;
    flow.state(t, v, dv);
    const VectorXd z = t * z0e - 0.5 * integral.at(t);
    sample.z = to_std(z);
    sample.v = to_std(v);
    sample.position = to_std(zb * z + vb * v);
    sample.velocity = to_std(zb * z0e + vb * dv);

    // Fourth-order central differences of v, v' and z around t.
    VectorXd vs[5], dvs[5], dz[5];
    for (int k = -2; k <= 2; ++k) {
      flow.state(t + k * h, vs[k + 2], dvs[k + 2]);
      dz[k + 2] = k == 0 ? VectorXd::Zero(static_cast<Eigen::Index>(p))
                         : VectorXd(k * h * z0e - 0.5 * gauss_legendre(flow, t, t + k * h));
    }
    auto d1 = [h](const VectorXd* f) { return VectorXd((f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h)); };
    const VectorXd r1 = d1(dvs) - j * dv;
    const VectorXd r2 = d1(dz) + 0.5 * flow.integrand(t) - z0e;
    const VectorXd r3 = dv - d1(vs);
    double residual = 0.0;
    for (const VectorXd* r : {&r1, &r2, &r3})
      if (r->size() > 0) residual = std::max(residual, r->cwiseAbs().maxCoeff());
    sample.residual = residual;
    out.push_back(std::move(sample));
  }
  return out;
}

}  // namespace nilgeo
