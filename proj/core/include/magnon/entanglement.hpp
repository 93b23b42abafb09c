#pragma once

#include <vector>

#include <Eigen/Core>

#include "magnon/lyapunov.hpp"

namespace magnon {

/// Two-magnon reduced covariance [[A, C], [C^T, B]] with A, B the local
/// blocks of magnon 1 and magnon 2 and C their cross-correlations.
struct TwoModeCovariance {
  Eigen::Matrix2d block_a;
  Eigen::Matrix2d block_b;
  Eigen::Matrix2d block_c;

  Eigen::Matrix4d assembled() const;
};

struct NegativityResult {
  double eta_minus = 0.0;       // smallest symplectic eigenvalue of the partial transpose
  double log_negativity = 0.0;  // E_N = max(0, -ln 2 eta_minus)
  bool entangled = false;
};

/// Within this distance of 2 eta_minus = 1 a state is reported as separable
/// with E_N = 0.0.
inline constexpr double kNegativityBoundaryTolerance = 1e-12;

TwoModeCovariance extract_magnon_block(const CovarianceMatrix& v);

/// Logarithmic negativity of a two-mode Gaussian state.
///
/// Throws UnphysicalStateError when det V <= 0 or the discriminant
/// Sigma^2 - 4 det V is below -1e-12.
NegativityResult log_negativity(const TwoModeCovariance& v);

/// Symplectic spectrum of an even-dimensional covariance matrix, ascending.
/// Throws UnphysicalStateError unless v is positive definite.
std::vector<double> symplectic_eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& v);

double min_symplectic_eigenvalue(const Eigen::Ref<const Eigen::MatrixXd>& v);

}  // namespace magnon
