#include "magnon/lyapunov.hpp"

#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "magnon/errors.hpp"

namespace magnon {

namespace {

constexpr double kStabilityMargin = 1e-9;

std::string echo(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  std::ostringstream os;
  os.precision(17);
  os << m.format(Eigen::IOFormat(Eigen::FullPrecision, 0, ", ", "\n", "  [", "]"));
  return os.str();
}

double stability_threshold(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  return -kStabilityMargin * a.cwiseAbs().maxCoeff();
}

}  // namespace

StabilityReport is_stable(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw NumericalError(fmt::format("is_stable: expected a non-empty square matrix, got {}x{}", a.rows(), a.cols()));
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("is_stable: eigensolver failed for\n" + echo(a));
  }
  const double abscissa = solver.eigenvalues().real().maxCoeff();
  return {abscissa < stability_threshold(a), abscissa};
}

StabilityReport is_stable(const DriftMatrix& a) { return is_stable(a.entries); }

Eigen::MatrixXd solve_lyapunov(const Eigen::Ref<const Eigen::MatrixXd>& a,
                               const Eigen::Ref<const Eigen::MatrixXd>& d) {
  using Complex = std::complex<double>;
  const Eigen::Index n = a.rows();
  if (a.cols() != n || d.rows() != n || d.cols() != n || n == 0) {
    throw NumericalError(fmt::format("solve_lyapunov: shape mismatch A {}x{}, D {}x{}", a.rows(), a.cols(),
                                     d.rows(), d.cols()));
  }

  // A = Q T Q^H with T upper triangular. Since A is real, A^T = Q T^H Q^H and
  // the equation becomes T Y + Y T^H = C with Y = Q^H X Q, C = -Q^H D Q.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(a.cast<Complex>());
  if (schur.info() != Eigen::Success) {
    throw NumericalError("solve_lyapunov: Schur decomposition failed for\n" + echo(a));
  }
  const Eigen::MatrixXcd& t = schur.matrixT();
  const Eigen::MatrixXcd& q = schur.matrixU();

  const double abscissa = t.diagonal().real().maxCoeff();
  if (!(abscissa < stability_threshold(a))) {
    throw StabilityError(fmt::format("solve_lyapunov: drift matrix is not Hurwitz (spectral abscissa {:.6g})", abscissa));
  }

  const Eigen::MatrixXcd c = -(q.adjoint() * d.cast<Complex>() * q);
  Eigen::MatrixXcd y(n, n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      Complex s = c(i, j);
      for (Eigen::Index k = i + 1; k < n; ++k) {
        s -= t(i, k) * y(k, j);
      }
      for (Eigen::Index k = j + 1; k < n; ++k) {
        s -= y(i, k) * std::conj(t(j, k));
      }
      const Complex pivot = t(i, i) + std::conj(t(j, j));
      if (pivot == Complex{0.0, 0.0}) {
        throw NumericalError("solve_lyapunov: singular triangular system");
      }
      y(i, j) = s / pivot;
    }
  }

  const Eigen::MatrixXd x = (q * y * q.adjoint()).real();
  return 0.5 * (x + x.transpose());
}

CovarianceMatrix solve_steady_state(const DriftMatrix& a, const DiffusionMatrix& d) {
  return {solve_lyapunov(a.entries, d.entries)};
}

double lyapunov_residual(const Eigen::Ref<const Eigen::MatrixXd>& a,
                         const Eigen::Ref<const Eigen::MatrixXd>& d,
                         const Eigen::Ref<const Eigen::MatrixXd>& v) {
  return (a * v + v * a.transpose() + d).cwiseAbs().maxCoeff();
}

}  // namespace magnon
