#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>
#include <Eigen/Eigenvalues>

#include "magnon/errors.hpp"
#include "magnon/model.hpp"
#include "support/oracles.hpp"

namespace magnon {
namespace {

constexpr double kKappa = constants::two_pi * 5.0e6;

// Reference values evaluated with 30-digit arithmetic (mpmath).
constexpr double kOccupation10GHz450mK = 0.524882298927094817;
constexpr double kSinh2Of09 = 1.05373658815863315551;
constexpr double kSinhCoshOf09 = 1.47108714404783988636;

TEST(ThermalOccupation, ZeroTemperatureIsExactlyZero) {
  for (const double w : {1.0, 1e6, constants::default_carrier_frequency, 1e15}) {
    EXPECT_EQ(thermal_occupation(w, 0.0), 0.0);
  }
}

TEST(ThermalOccupation, TenGigahertzAt450Millikelvin) {
  EXPECT_NEAR(thermal_occupation(constants::two_pi * 10e9, 0.45), kOccupation10GHz450mK, 1e-12);
}

TEST(ThermalOccupation, UnitOccupationAtLogTwo) {
  const double w = constants::two_pi * 7e9;
  const double t = constants::hbar * w / (constants::boltzmann * std::numbers::ln2);
  EXPECT_NEAR(thermal_occupation(w, t), 1.0, 1e-14);
}

TEST(ThermalOccupation, RejectsBadArguments) {
  EXPECT_THROW(thermal_occupation(0.0, 0.1), std::domain_error);
  EXPECT_THROW(thermal_occupation(-1.0, 0.1), std::domain_error);
  EXPECT_THROW(thermal_occupation(1e9, -0.1), std::domain_error);
}

TEST(SqueezeOccupations, VacuumLimit) {
  const auto [n, m] = squeeze_occupations({0.0, 1.234});
  EXPECT_EQ(n, 0.0);
  EXPECT_EQ(std::abs(m), 0.0);
}

TEST(SqueezeOccupations, ReferenceStrength) {
  const auto in_phase = squeeze_occupations({0.9, 0.0});
  EXPECT_NEAR(in_phase.n, kSinh2Of09, 1e-14);
  EXPECT_NEAR(in_phase.m.real(), kSinhCoshOf09, 1e-14);
  EXPECT_EQ(in_phase.m.imag(), 0.0);

  const auto out_of_phase = squeeze_occupations({0.9, std::numbers::pi});
  EXPECT_NEAR(out_of_phase.n, kSinh2Of09, 1e-14);
  EXPECT_NEAR(out_of_phase.m.real(), -kSinhCoshOf09, 1e-14);
  EXPECT_NEAR(out_of_phase.m.imag(), 0.0, 1e-15);
}

TEST(SqueezeOccupations, IdealSqueezingIdentity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(0.0, 3.0), theta(-10.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto [n, m] = squeeze_occupations({r(rng), theta(rng)});
    EXPECT_NEAR(std::norm(m), n * (n + 1.0), 1e-13 * std::max(1.0, n * n));
  }
}

TEST(BuildDrift, DecoupledResonantModes) {
  SystemConfig c = baseline_config(DriveConfiguration::unsqueezed);
  for (const Mode m : {Mode::cavity1, Mode::cavity2, Mode::magnon1, Mode::magnon2}) {
    c.mode(m) = {0.0, kKappa};
  }
  c.g1 = c.g2 = c.J = 0.0;
  EXPECT_EQ(build_drift(c).entries, (-kKappa * Matrix8::Identity()).eval());
}

TEST(BuildDrift, MatchesPrintedMatrix) {
  const SystemConfig c = baseline_config(DriveConfiguration::double_squeezed);
  const double ka1 = c.cavity1.decay, ka2 = c.cavity2.decay, km1 = c.magnon1.decay, km2 = c.magnon2.decay;
  const double da1 = c.cavity1.detuning, da2 = c.cavity2.detuning;
  const double dm1 = c.magnon1.detuning, dm2 = c.magnon2.detuning;
  const double g1 = c.g1, g2 = c.g2, J = c.J;

  Matrix8 expected;
  expected << -ka1, da1, 0, J, 0, g1, 0, 0,
              -da1, -ka1, -J, 0, -g1, 0, 0, 0,
              0, J, -ka2, da2, 0, 0, 0, g2,
              -J, 0, -da2, -ka2, 0, 0, -g2, 0,
              0, g1, 0, 0, -km1, dm1, 0, 0,
              -g1, 0, 0, 0, -dm1, -km1, 0, 0,
              0, 0, 0, g2, 0, 0, -km2, dm2,
              0, 0, -g2, 0, 0, 0, -dm2, -km2;
  const Matrix8 a = build_drift(c).entries;
  EXPECT_EQ(a, expected);
  EXPECT_EQ(a(0, 1), -J);
  EXPECT_EQ(a(0, 3), J);
}

TEST(BuildDrift, ReferencePointIsHurwitz) {
  const Matrix8 a = build_drift(baseline_config(DriveConfiguration::double_squeezed)).entries;
  Eigen::EigenSolver<Matrix8> solver(a);
  EXPECT_LT(solver.eigenvalues().real().maxCoeff(), 0.0);
}

TEST(BuildDrift, SparsityPatternHoldsForRandomConfigs) {
  // Nonzero 2x2 blocks: the diagonal plus the a1-a2, a1-m1, a2-m2 couplings.
  const bool allowed[4][4] = {
      {true, true, true, false},
      {true, true, false, true},
      {true, false, true, false},
      {false, true, false, true},
  };
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix8 a = build_drift(testing::random_config(rng, DriveConfiguration::double_squeezed)).entries;
    for (int bi = 0; bi < 4; ++bi) {
      for (int bj = 0; bj < 4; ++bj) {
        const Eigen::Matrix2d block = a.block<2, 2>(2 * bi, 2 * bj);
        if (!allowed[bi][bj]) {
          EXPECT_EQ(block, Eigen::Matrix2d::Zero().eval());
        } else if (bi != bj) {
          // g J_rot or J J_rot: antisymmetric with zero diagonal.
          EXPECT_EQ(block(0, 0), 0.0);
          EXPECT_EQ(block(1, 1), 0.0);
          EXPECT_EQ(block(0, 1), -block(1, 0));
        } else {
          EXPECT_EQ(block(0, 0), block(1, 1));
          EXPECT_EQ(block(0, 1), -block(1, 0));
        }
      }
    }
  }
}

TEST(BuildDrift, DoublingCouplingOnlyTouchesCouplingBlocks) {
  SystemConfig c = baseline_config(DriveConfiguration::double_squeezed);
  const Matrix8 before = build_drift(c).entries;
  c.g1 *= 2.0;
  c.g2 *= 2.0;
  const Matrix8 diff = build_drift(c).entries - before;
  for (int bi = 0; bi < 4; ++bi) {
    for (int bj = 0; bj < 4; ++bj) {
      const bool g_block = (bi == 0 && bj == 2) || (bi == 2 && bj == 0) || (bi == 1 && bj == 3) || (bi == 3 && bj == 1);
      if (!g_block) {
        EXPECT_EQ(Eigen::Matrix2d(diff.block<2, 2>(2 * bi, 2 * bj)), Eigen::Matrix2d::Zero().eval()) << bi << "," << bj;
      }
    }
  }
  EXPECT_GT(diff.cwiseAbs().maxCoeff(), 0.0);
}

TEST(BuildDrift, UniformQuadratureRotationCommutes) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix8 a = build_drift(testing::random_config(rng, DriveConfiguration::double_squeezed)).entries;
    const Matrix8 r = testing::local_rotation(Eigen::VectorXd::Constant(4, angle(rng)));
    EXPECT_LE((r * a * r.transpose() - a).cwiseAbs().maxCoeff(), 1e-14 * a.cwiseAbs().maxCoeff());
  }
}

TEST(BuildDiffusion, VacuumInputs) {
  const SystemConfig c = baseline_config(DriveConfiguration::unsqueezed);
  Eigen::Matrix<double, 8, 1> diag;
  diag << c.cavity1.decay, c.cavity1.decay, c.cavity2.decay, c.cavity2.decay, c.magnon1.decay, c.magnon1.decay,
      c.magnon2.decay, c.magnon2.decay;
  EXPECT_EQ(build_diffusion(c).entries, Matrix8(diag.asDiagonal()));
}

TEST(BuildDiffusion, SingleSqueezedBlockStructure) {
  const SystemConfig c = baseline_config(DriveConfiguration::single_squeezed);
  const Matrix8 d = build_diffusion(c).entries;
  const double k = c.cavity1.decay;
  EXPECT_NEAR(d(0, 0), k * (2 * kSinh2Of09 + 1 + 2 * kSinhCoshOf09), 1e-13 * k);
  EXPECT_NEAR(d(1, 1), k * (2 * kSinh2Of09 + 1 - 2 * kSinhCoshOf09), 1e-13 * k);
  EXPECT_EQ(d(0, 1), 0.0);
  EXPECT_EQ(d(1, 0), 0.0);
  EXPECT_EQ(Eigen::Matrix2d(d.block<2, 2>(2, 2)), (c.cavity2.decay * Eigen::Matrix2d::Identity()).eval());
  EXPECT_EQ(Eigen::Matrix2d(d.block<2, 2>(4, 4)), (c.magnon1.decay * Eigen::Matrix2d::Identity()).eval());
}

TEST(BuildDiffusion, QuarterTurnPhaseMovesSqueezingOffDiagonal) {
  SystemConfig c = baseline_config(DriveConfiguration::single_squeezed);
  c.drive1->theta = std::numbers::pi / 2;
  const Matrix8 d = build_diffusion(c).entries;
  const double k = c.cavity1.decay;
  const auto [n, m] = squeeze_occupations(*c.drive1);
  EXPECT_NEAR(d(0, 1), 2 * k * std::sinh(0.9) * std::cosh(0.9), 1e-13 * k);
  EXPECT_NEAR(d(0, 1), 2 * k * m.imag(), 1e-13 * k);
  EXPECT_EQ(d(0, 1), d(1, 0));
  EXPECT_NEAR(d(0, 0), d(1, 1), 1e-13 * k);
  EXPECT_NEAR(d(0, 0), k * (2 * n + 1), 1e-13 * k);
}

TEST(BuildDiffusion, UndrivenCavityUsesLabFrequencyOccupation) {
  SystemConfig c = baseline_config(DriveConfiguration::single_squeezed);
  c.bath.temperature = 0.3;
  const Matrix8 d = build_diffusion(c).entries;
  const double n_a2 = thermal_occupation(c.bath.carrier_frequency + c.cavity2.detuning, 0.3);
  const double n_m1 = thermal_occupation(c.bath.carrier_frequency + c.magnon1.detuning, 0.3);
  EXPECT_DOUBLE_EQ(d(2, 2), c.cavity2.decay * (2 * n_a2 + 1));
  EXPECT_DOUBLE_EQ(d(4, 4), c.magnon1.decay * (2 * n_m1 + 1));
  EXPECT_NE(n_a2, n_m1);
}

TEST(BuildDiffusion, AbsentDriveMatchesZeroStrengthAtZeroTemperature) {
  SystemConfig absent = baseline_config(DriveConfiguration::single_squeezed);
  SystemConfig zero = absent;
  zero.drive2 = SqueezeDrive{0.0, 0.7};
  EXPECT_EQ(build_diffusion(absent).entries, build_diffusion(zero).entries);
}

TEST(BuildDiffusion, SymmetricPositiveSemidefinite) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto drives = static_cast<DriveConfiguration>(trial % 3);
    const Matrix8 d = build_diffusion(testing::random_config(rng, drives)).entries;
    EXPECT_EQ(d, d.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix8> solver(d);
    EXPECT_GE(solver.eigenvalues().minCoeff(), -1e-12 * d.cwiseAbs().maxCoeff());
  }
}

TEST(Model, SubsystemSwapPermutesBothMatrices) {
  const Matrix8 p = testing::subsystem_swap();
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto drives = static_cast<DriveConfiguration>(trial % 3);
    const SystemConfig c = testing::random_config(rng, drives);
    const SystemConfig s = swap_subsystems(c);
    EXPECT_EQ(build_drift(s).entries, (p * build_drift(c).entries * p.transpose()).eval());
    EXPECT_EQ(build_diffusion(s).entries, (p * build_diffusion(c).entries * p.transpose()).eval());
  }
}

TEST(Model, DriveConfigurationFollowsDrives) {
  EXPECT_EQ(drive_configuration(baseline_config(DriveConfiguration::unsqueezed)), DriveConfiguration::unsqueezed);
  EXPECT_EQ(drive_configuration(baseline_config(DriveConfiguration::single_squeezed)),
            DriveConfiguration::single_squeezed);
  SystemConfig only_second = baseline_config(DriveConfiguration::unsqueezed);
  only_second.drive2 = SqueezeDrive{0.5, 0.0};
  EXPECT_EQ(drive_configuration(only_second), DriveConfiguration::single_squeezed);
  EXPECT_EQ(drive_configuration(baseline_config(DriveConfiguration::double_squeezed)),
            DriveConfiguration::double_squeezed);
}

TEST(Validate, NamesTheOffendingField) {
  SystemConfig c = baseline_config(DriveConfiguration::double_squeezed);
  c.magnon1.decay = 0.0;
  try {
    validate(c);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("magnon1.decay"), std::string::npos) << e.what();
  }

  c = baseline_config(DriveConfiguration::double_squeezed);
  c.drive2->r = -0.1;
  EXPECT_THROW(validate(c), ConfigError);
  c = baseline_config(DriveConfiguration::double_squeezed);
  c.J = -1.0;
  EXPECT_THROW(validate(c), ConfigError);
  c = baseline_config(DriveConfiguration::double_squeezed);
  c.bath.temperature = -0.01;
  EXPECT_THROW(validate(c), ConfigError);
  EXPECT_NO_THROW(validate(baseline_config(DriveConfiguration::double_squeezed)));
}

}  // namespace
}  // namespace magnon
