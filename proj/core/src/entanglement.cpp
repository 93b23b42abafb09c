#include "magnon/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "magnon/errors.hpp"

namespace magnon {

namespace {

constexpr double kDiscriminantTolerance = 1e-12;

double det2(const Eigen::Matrix2d& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// Laplace expansion along the first two rows.
double det4(const Eigen::Matrix4d& m) {
  const auto minor_top = [&m](int c0, int c1) { return m(0, c0) * m(1, c1) - m(0, c1) * m(1, c0); };
  const auto minor_bottom = [&m](int c0, int c1) { return m(2, c0) * m(3, c1) - m(2, c1) * m(3, c0); };
  return minor_top(0, 1) * minor_bottom(2, 3) - minor_top(0, 2) * minor_bottom(1, 3) +
         minor_top(0, 3) * minor_bottom(1, 2) + minor_top(1, 2) * minor_bottom(0, 3) -
         minor_top(1, 3) * minor_bottom(0, 2) + minor_top(2, 3) * minor_bottom(0, 1);
}

Eigen::MatrixXd symplectic_form(Eigen::Index modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (Eigen::Index k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

// (eta_+^2 - eta_-^2)^2 evaluated as tr(N'^2), where N' is the traceless part
// of (Omega V_pt)^2. Algebraically equal to Sigma^2 - 4 det V, but without the
// O(eps) cancellation that would otherwise turn into an O(sqrt(eps)) error in
// eta_minus near the degenerate point eta_+ = eta_-.
double discriminant(const Eigen::Matrix4d& partial_transpose, double sigma) {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = omega(2, 3) = 1.0;
  omega(1, 0) = omega(3, 2) = -1.0;
  const Eigen::Matrix4d w = omega * partial_transpose;
  const Eigen::Matrix4d shifted = w * w + 0.5 * sigma * Eigen::Matrix4d::Identity();
  return (shifted.array() * shifted.transpose().array()).sum();
}

}  // namespace

Eigen::Matrix4d TwoModeCovariance::assembled() const {
  Eigen::Matrix4d m;
  m << block_a, block_c, block_c.transpose(), block_b;
  return m;
}

TwoModeCovariance extract_magnon_block(const CovarianceMatrix& v) {
  const int m1 = 2 * static_cast<int>(Mode::magnon1);
  const int m2 = 2 * static_cast<int>(Mode::magnon2);
  return {v.entries.block<2, 2>(m1, m1), v.entries.block<2, 2>(m2, m2), v.entries.block<2, 2>(m1, m2)};
}

NegativityResult log_negativity(const TwoModeCovariance& v) {
  const double sigma = det2(v.block_a) + det2(v.block_b) - 2.0 * det2(v.block_c);
  const Eigen::Matrix4d full = v.assembled();
  const double det = det4(full);
  if (!(det > 0.0)) {
    throw UnphysicalStateError(fmt::format("log_negativity: det V_mm = {:.17g} is not positive", det));
  }

  // Partial transpose: y -> -y on the second mode.
  const Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  const Eigen::Matrix4d pt = flip.asDiagonal() * full * flip.asDiagonal();
  double disc = discriminant(pt, sigma);
  if (disc < -kDiscriminantTolerance) {
    throw UnphysicalStateError(fmt::format("log_negativity: discriminant {:.17g} is negative", disc));
  }
  disc = std::max(disc, 0.0);

  // eta_-^2 = (Sigma - sqrt(disc)) / 2, rewritten with eta_+^2 eta_-^2 = det V
  // to avoid cancellation for strongly entangled states.
  const double denominator = sigma + std::sqrt(disc);
  if (!(denominator > 0.0)) {
    throw UnphysicalStateError(fmt::format("log_negativity: Sigma = {:.17g} is not positive", sigma));
  }
  const double eta_minus = std::sqrt(2.0 * det / denominator);

  NegativityResult result;
  result.eta_minus = eta_minus;
  result.entangled = 2.0 * eta_minus < 1.0 - kNegativityBoundaryTolerance;
  result.log_negativity = result.entangled ? -std::log(2.0 * eta_minus) : 0.0;
  return result;
}

std::vector<double> symplectic_eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& v) {
  const Eigen::Index dim = v.rows();
  if (dim != v.cols() || dim == 0 || dim % 2 != 0) {
    throw NumericalError(fmt::format("symplectic_eigenvalues: expected even square matrix, got {}x{}", v.rows(), v.cols()));
  }
  // The eigenvalues of Omega V are +-i nu. For positive definite V the
  // antisymmetric K = V^{1/2} Omega V^{1/2} is similar to Omega V, and K^T K
  // is symmetric with eigenvalues nu^2, each twice. Going through a symmetric
  // eigenproblem avoids the nonsymmetric QR iteration, which can stall on the
  // highly degenerate spectrum of near-vacuum states.
  const Eigen::MatrixXd sym = 0.5 * (v + v.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> root(sym);
  if (root.info() != Eigen::Success) {
    throw NumericalError("symplectic_eigenvalues: eigensolver failed");
  }
  if (!(root.eigenvalues().minCoeff() > 0.0)) {
    throw UnphysicalStateError(
        fmt::format("symplectic_eigenvalues: matrix is not positive definite (min eigenvalue {:.6g})",
                    root.eigenvalues().minCoeff()));
  }
  const Eigen::MatrixXd s = root.operatorSqrt();
  const Eigen::MatrixXd k = s * symplectic_form(dim / 2) * s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> squares(k.transpose() * k, Eigen::EigenvaluesOnly);
  if (squares.info() != Eigen::Success) {
    throw NumericalError("symplectic_eigenvalues: eigensolver failed");
  }

  // Ascending, so the two copies of each nu^2 are adjacent.
  std::vector<double> nu(static_cast<std::size_t>(dim / 2));
  for (std::size_t j = 0; j < nu.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(2 * j);
    nu[j] = std::sqrt(std::max(0.0, 0.5 * (squares.eigenvalues()(i) + squares.eigenvalues()(i + 1))));
  }
  return nu;
}

double min_symplectic_eigenvalue(const Eigen::Ref<const Eigen::MatrixXd>& v) {
  return symplectic_eigenvalues(v).front();
}

}  // namespace magnon
