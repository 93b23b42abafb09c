#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace magnon::testing {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::MatrixXd omega(int modes) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    w(2 * k, 2 * k + 1) = 1.0;
    w(2 * k + 1, 2 * k) = -1.0;
  }
  return w;
}

}  // namespace

Eigen::MatrixXd kronecker_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d) {
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd k = Eigen::kroneckerProduct(id, a) + Eigen::kroneckerProduct(a, id);
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(d.data(), n * n);
  const Eigen::VectorXd x = k.fullPivLu().solve(rhs);
  return Eigen::Map<const Eigen::MatrixXd>(x.data(), n, n);
}

double negativity_by_eigenvalues(const Eigen::Matrix4d& v) {
  const Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  const Eigen::Matrix4d pt = flip.asDiagonal() * v * flip.asDiagonal();
  const Eigen::MatrixXd w = omega(2) * pt;
  const Eigen::VectorXcd ev = w.eigenvalues();
  double eta = ev.cwiseAbs().minCoeff();
  return std::max(0.0, -std::log(2.0 * eta));
}

Eigen::Matrix4d two_mode_squeezed_vacuum(double r) {
  const double c = 0.5 * std::cosh(2.0 * r);
  const double s = 0.5 * std::sinh(2.0 * r);
  Eigen::Matrix4d v;
  v << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return v;
}

Eigen::MatrixXd local_rotation(const Eigen::VectorXd& angles) {
  const Eigen::Index modes = angles.size();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (Eigen::Index k = 0; k < modes; ++k) {
    const double c = std::cos(angles(k));
    const double s = std::sin(angles(k));
    r.block<2, 2>(2 * k, 2 * k) << c, -s, s, c;
  }
  return r;
}

Matrix8 subsystem_swap() {
  // Mode blocks (a1, a2, m1, m2) -> (a2, a1, m2, m1).
  constexpr int target[] = {1, 0, 3, 2};
  Matrix8 p = Matrix8::Zero();
  for (int k = 0; k < kModeCount; ++k) {
    p.block<2, 2>(2 * target[k], 2 * k) = Eigen::Matrix2d::Identity();
  }
  return p;
}

Matrix8 random_stable_matrix(std::mt19937_64& rng, double margin) {
  Matrix8 a;
  for (int i = 0; i < kDimension; ++i) {
    for (int j = 0; j < kDimension; ++j) {
      a(i, j) = uniform(rng, -1.0, 1.0);
    }
  }
  const double abscissa = a.eigenvalues().real().maxCoeff();
  a -= (abscissa + margin) * Matrix8::Identity();
  return a;
}

Matrix8 random_psd_matrix(std::mt19937_64& rng) {
  Matrix8 b;
  for (int i = 0; i < kDimension; ++i) {
    for (int j = 0; j < kDimension; ++j) {
      b(i, j) = uniform(rng, -1.0, 1.0);
    }
  }
  return b * b.transpose();
}

Eigen::MatrixXd random_physical_covariance(std::mt19937_64& rng, int modes, Eigen::VectorXd* nu_out) {
  const int dim = 2 * modes;
  Eigen::MatrixXd h(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      h(i, j) = h(j, i) = uniform(rng, -0.6, 0.6);
    }
  }
  const Eigen::MatrixXd generator = omega(modes) * h;
  const Eigen::MatrixXd s = generator.exp();
  Eigen::VectorXd nu(dim);
  for (int k = 0; k < modes; ++k) {
    nu(2 * k) = nu(2 * k + 1) = 0.5 + uniform(rng, 0.0, 1.0);
  }
  if (nu_out != nullptr) {
    *nu_out = Eigen::Map<const Eigen::VectorXd, 0, Eigen::InnerStride<2>>(nu.data(), modes);
  }
  return s * nu.asDiagonal() * s.transpose();
}

SystemConfig random_config(std::mt19937_64& rng, DriveConfiguration drives) {
  const double kappa = constants::two_pi * 5.0e6;
  const double J = 4.0 * kappa;
  SystemConfig c = baseline_config(DriveConfiguration::unsqueezed);
  for (ModeParams* m : {&c.cavity1, &c.cavity2}) {
    m->detuning = uniform(rng, -2.0 * J, 2.0 * J);
    m->decay = uniform(rng, 0.2, 3.0) * kappa;
  }
  for (ModeParams* m : {&c.magnon1, &c.magnon2}) {
    m->detuning = uniform(rng, -J, J);
    m->decay = uniform(rng, 0.05, 0.5) * kappa;
  }
  c.g1 = uniform(rng, 0.0, 3.0) * kappa;
  c.g2 = uniform(rng, 0.0, 3.0) * kappa;
  c.J = uniform(rng, 0.0, 6.0) * kappa;
  const auto drive = [&rng] {
    return SqueezeDrive{uniform(rng, 0.0, 1.5), uniform(rng, 0.0, 2.0 * std::numbers::pi)};
  };
  if (drives != DriveConfiguration::unsqueezed) {
    c.drive1 = drive();
  }
  if (drives == DriveConfiguration::double_squeezed) {
    c.drive2 = drive();
  }
  c.bath.temperature = uniform(rng, 0.0, 0.5);
  return c;
}

}  // namespace magnon::testing
