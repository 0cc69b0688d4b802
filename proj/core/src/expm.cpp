#include "nilgeo/expm.hpp"

#include <algorithm>
#include <cmath>

#include "nilgeo/error.hpp"

namespace nilgeo {

namespace {

constexpr double kTheta13 = 5.371920351148152;
constexpr double kPade13[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                              1187353796428800.0,  129060195264000.0,   10559470521600.0,
                              670442572800.0,      33522128640.0,       1323241920.0,
                              40840800.0,          960960.0,            16380.0,
                              182.0,               1.0};

}  // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidShape, "expm of a non-square matrix");
  if (!m.allFinite()) throw Error(ErrorCode::InvalidShape, "expm input has non-finite entries");
  const Eigen::Index n = m.rows();
  const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(n, n);
  if (n == 0) return ident;

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > kTheta13) s = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / kTheta13))));
  const Eigen::MatrixXd a = m / std::ldexp(1.0, s);

  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;
  const double* b = kPade13;
  const Eigen::MatrixXd u_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const Eigen::MatrixXd u = a * (a6 * u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Eigen::MatrixXd v_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const Eigen::MatrixXd v = a6 * v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

ExpPhi mat_exp_phi(const Eigen::MatrixXd& m, double t) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidShape, "mat_exp_phi of a non-square matrix");
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = t * m;
  block.topRightCorner(n, n) = t * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd big = expm(block);
  return {big.topLeftCorner(n, n), big.topRightCorner(n, n)};
}

}  // namespace nilgeo
