#pragma once

#include <Eigen/Core>

#include "magnon/model.hpp"

namespace magnon {

/// Steady-state covariance matrix V_pq = <{u_p, u_q}>/2 in the same
/// quadrature ordering as DriftMatrix. Vacuum variance is 1/2.
struct CovarianceMatrix {
  Matrix8 entries;
};

struct StabilityReport {
  bool stable = false;
  double spectral_abscissa = 0.0;  // max Re(lambda)
};

/// A is stable iff its spectral abscissa is below -1e-9 * max|A_ij|.
StabilityReport is_stable(const Eigen::Ref<const Eigen::MatrixXd>& a);
StabilityReport is_stable(const DriftMatrix& a);

/// Solves A X + X A^T = -D by complex Schur decomposition of A followed by
/// triangular back substitution (Bartels-Stewart). Returns the symmetrised
/// solution (X + X^T) / 2.
///
/// Throws StabilityError if A is not Hurwitz, NumericalError if the Schur
/// decomposition fails or the triangular system is singular.
Eigen::MatrixXd solve_lyapunov(const Eigen::Ref<const Eigen::MatrixXd>& a,
                               const Eigen::Ref<const Eigen::MatrixXd>& d);

CovarianceMatrix solve_steady_state(const DriftMatrix& a, const DiffusionMatrix& d);

/// max |A V + V A^T + D|
double lyapunov_residual(const Eigen::Ref<const Eigen::MatrixXd>& a,
                         const Eigen::Ref<const Eigen::MatrixXd>& d,
                         const Eigen::Ref<const Eigen::MatrixXd>& v);

}  // namespace magnon
