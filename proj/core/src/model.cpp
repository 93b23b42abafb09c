#include "magnon/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "magnon/errors.hpp"

namespace magnon {

namespace {

// [[0, 1], [-1, 0]]: the rotation generator that appears in every block of
// the drift matrix.
Eigen::Matrix2d rotation_generator() {
  Eigen::Matrix2d r;
  r << 0.0, 1.0, -1.0, 0.0;
  return r;
}

template <typename Derived>
void set_block(Matrix8& m, Mode row, Mode col, const Eigen::MatrixBase<Derived>& block) {
  m.block<2, 2>(2 * static_cast<int>(row), 2 * static_cast<int>(col)) = block;
}

void require(bool ok, const char* field, const char* what, double value) {
  if (!ok) {
    throw ConfigError(fmt::format("{}: {} (got {})", field, what, value));
  }
}

Eigen::Matrix2d squeezed_block(double decay, const SqueezeDrive& drive) {
  const auto [n, m] = squeeze_occupations(drive);
  Eigen::Matrix2d block;
  block << 2.0 * n + 1.0 + 2.0 * m.real(), 2.0 * m.imag(),
           2.0 * m.imag(), 2.0 * n + 1.0 - 2.0 * m.real();
  block *= decay;
  return block;
}

Eigen::Matrix2d thermal_block(double decay, double occupation) {
  return decay * (2.0 * occupation + 1.0) * Eigen::Matrix2d::Identity();
}

}  // namespace

const ModeParams& SystemConfig::mode(Mode m) const {
  switch (m) {
    case Mode::cavity1: return cavity1;
    case Mode::cavity2: return cavity2;
    case Mode::magnon1: return magnon1;
    case Mode::magnon2: return magnon2;
  }
  throw std::logic_error("invalid mode");
}

ModeParams& SystemConfig::mode(Mode m) {
  return const_cast<ModeParams&>(std::as_const(*this).mode(m));
}

DriveConfiguration drive_configuration(const SystemConfig& config) {
  const int drives = int{config.drive1.has_value()} + int{config.drive2.has_value()};
  switch (drives) {
    case 0: return DriveConfiguration::unsqueezed;
    case 1: return DriveConfiguration::single_squeezed;
    default: return DriveConfiguration::double_squeezed;
  }
}

void validate(const SystemConfig& c) {
  const auto check_mode = [](const ModeParams& m, const char* detuning, const char* decay) {
    require(std::isfinite(m.detuning), detuning, "must be finite", m.detuning);
    require(std::isfinite(m.decay) && m.decay > 0.0, decay, "decay must be > 0", m.decay);
  };
  check_mode(c.cavity1, "cavity1.detuning", "cavity1.decay");
  check_mode(c.cavity2, "cavity2.detuning", "cavity2.decay");
  check_mode(c.magnon1, "magnon1.detuning", "magnon1.decay");
  check_mode(c.magnon2, "magnon2.detuning", "magnon2.decay");

  require(std::isfinite(c.g1) && c.g1 >= 0.0, "coupling.g1", "must be >= 0", c.g1);
  require(std::isfinite(c.g2) && c.g2 >= 0.0, "coupling.g2", "must be >= 0", c.g2);
  require(std::isfinite(c.J) && c.J >= 0.0, "coupling.J", "must be >= 0", c.J);

  if (c.drive1) {
    require(std::isfinite(c.drive1->r) && c.drive1->r >= 0.0, "drive1.r", "must be >= 0", c.drive1->r);
    require(std::isfinite(c.drive1->theta), "drive1.theta", "must be finite", c.drive1->theta);
  }
  if (c.drive2) {
    require(std::isfinite(c.drive2->r) && c.drive2->r >= 0.0, "drive2.r", "must be >= 0", c.drive2->r);
    require(std::isfinite(c.drive2->theta), "drive2.theta", "must be finite", c.drive2->theta);
  }

  require(std::isfinite(c.bath.temperature) && c.bath.temperature >= 0.0, "bath.temperature",
          "must be >= 0", c.bath.temperature);
  require(std::isfinite(c.bath.carrier_frequency) && c.bath.carrier_frequency > 0.0,
          "bath.carrier_frequency", "must be > 0", c.bath.carrier_frequency);
}

SystemConfig swap_subsystems(const SystemConfig& c) {
  SystemConfig s = c;
  std::swap(s.cavity1, s.cavity2);
  std::swap(s.magnon1, s.magnon2);
  std::swap(s.g1, s.g2);
  std::swap(s.drive1, s.drive2);
  return s;
}

SystemConfig baseline_config(DriveConfiguration drives) {
  const double kappa_a = constants::two_pi * 5.0e6;
  const double J = 4.0 * kappa_a;

  SystemConfig c;
  c.cavity1 = {-J, kappa_a};
  c.cavity2 = {-J, kappa_a};
  c.magnon1 = {0.5 * J, kappa_a / 5.0};
  c.magnon2 = {-0.5 * J, kappa_a / 5.0};
  c.g1 = 2.0 * kappa_a;
  c.g2 = 2.0 * kappa_a;
  c.J = J;
  if (drives != DriveConfiguration::unsqueezed) {
    c.drive1 = SqueezeDrive{0.9, 0.0};
  }
  if (drives == DriveConfiguration::double_squeezed) {
    c.drive2 = SqueezeDrive{0.9, 0.0};
  }
  return c;
}

double thermal_occupation(double frequency, double temperature) {
  if (!(frequency > 0.0) || !std::isfinite(frequency)) {
    throw std::domain_error(fmt::format("thermal_occupation: frequency must be > 0 (got {})", frequency));
  }
  if (!(temperature >= 0.0)) {
    throw std::domain_error(fmt::format("thermal_occupation: temperature must be >= 0 (got {})", temperature));
  }
  if (temperature == 0.0) {
    return 0.0;
  }
  const double x = constants::hbar * frequency / (constants::boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

SqueezeOccupations squeeze_occupations(const SqueezeDrive& drive) {
  const double s = std::sinh(drive.r);
  const double c = std::cosh(drive.r);
  return {s * s, std::polar(s * c, drive.theta)};
}

DriftMatrix build_drift(const SystemConfig& config) {
  const Eigen::Matrix2d rot = rotation_generator();
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();

  Matrix8 a = Matrix8::Zero();
  for (const Mode m : {Mode::cavity1, Mode::cavity2, Mode::magnon1, Mode::magnon2}) {
    const ModeParams& p = config.mode(m);
    set_block(a, m, m, -p.decay * id + p.detuning * rot);
  }
  set_block(a, Mode::cavity1, Mode::cavity2, config.J * rot);
  set_block(a, Mode::cavity2, Mode::cavity1, config.J * rot);
  set_block(a, Mode::cavity1, Mode::magnon1, config.g1 * rot);
  set_block(a, Mode::magnon1, Mode::cavity1, config.g1 * rot);
  set_block(a, Mode::cavity2, Mode::magnon2, config.g2 * rot);
  set_block(a, Mode::magnon2, Mode::cavity2, config.g2 * rot);
  return {a};
}

DiffusionMatrix build_diffusion(const SystemConfig& config) {
  const BathConfig& bath = config.bath;
  const auto occupation = [&bath](const ModeParams& p) {
    return thermal_occupation(bath.carrier_frequency + p.detuning, bath.temperature);
  };
  const auto cavity_block = [&](const ModeParams& p, const std::optional<SqueezeDrive>& drive) {
    return drive ? squeezed_block(p.decay, *drive) : thermal_block(p.decay, occupation(p));
  };

  Matrix8 d = Matrix8::Zero();
  set_block(d, Mode::cavity1, Mode::cavity1, cavity_block(config.cavity1, config.drive1));
  set_block(d, Mode::cavity2, Mode::cavity2, cavity_block(config.cavity2, config.drive2));
  set_block(d, Mode::magnon1, Mode::magnon1, thermal_block(config.magnon1.decay, occupation(config.magnon1)));
  set_block(d, Mode::magnon2, Mode::magnon2, thermal_block(config.magnon2.decay, occupation(config.magnon2)));

  // Each 2x2 block must be PSD. For ideal squeezing det = kappa^2 exactly.
  for (int k = 0; k < kModeCount; ++k) {
    const Eigen::Matrix2d b = d.block<2, 2>(2 * k, 2 * k);
    const double scale = b.trace() * b.trace();
    if (b(0, 0) < 0.0 || b(1, 1) < 0.0 || b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0) < -1e-12 * scale) {
      throw std::logic_error(fmt::format("build_diffusion: block {} is not positive semidefinite", k));
    }
  }
  return {d};
}

}  // namespace magnon
