#pragma once

#include <Eigen/Dense>

namespace nilgeo {

/// Default tolerance for floating-point checks on exponential-based results.
inline constexpr double kFloatTolerance = 1e-9;

/// e^M by scaling and squaring with the degree-13 Padé approximant
/// (Higham 2005 parameters). Throws InvalidShape for non-square input or
/// non-finite entries.
Eigen::MatrixXd expm(const Eigen::MatrixXd& m);

struct ExpPhi {
  Eigen::MatrixXd exp;  ///< e^{tM}
  Eigen::MatrixXd phi;  ///< ∫_0^t e^{sM} ds
};

/// Both quantities come from one exponential of [[tM, tI], [0, 0]]: the
/// top-left block is e^{tM} and the top-right block is the integral.
ExpPhi mat_exp_phi(const Eigen::MatrixXd& m, double t);

}  // namespace nilgeo
