#pragma once

#include <complex>
#include <numbers>
#include <optional>

#include <Eigen/Core>

namespace magnon {

/// Quadrature ordering used by every 8x8 matrix in the library:
/// [x_a1, y_a1, x_a2, y_a2, x_m1, y_m1, x_m2, y_m2].
inline constexpr int kModeCount = 4;
inline constexpr int kDimension = 2 * kModeCount;

using Matrix8 = Eigen::Matrix<double, kDimension, kDimension>;

/// Block index of each bosonic mode in the quadrature vector.
enum class Mode : int { cavity1 = 0, cavity2 = 1, magnon1 = 2, magnon2 = 3 };

namespace constants {
inline constexpr double hbar = 1.054571817e-34;       // J s (exact, SI 2019)
inline constexpr double boltzmann = 1.380649e-23;     // J / K (exact, SI 2019)
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double default_carrier_frequency = two_pi * 10.0e9;  // rad/s
}  // namespace constants

/// Detuning from the squeezed-field carrier and energy decay rate, rad/s.
struct ModeParams {
  double detuning = 0.0;
  double decay = 0.0;

  bool operator==(const ModeParams&) const = default;
};

/// Ideal squeezed vacuum input: strength r >= 0, phase theta in radians.
struct SqueezeDrive {
  double r = 0.0;
  double theta = 0.0;

  bool operator==(const SqueezeDrive&) const = default;
};

struct BathConfig {
  double temperature = 0.0;  // kelvin
  double carrier_frequency = constants::default_carrier_frequency;  // rad/s

  bool operator==(const BathConfig&) const = default;
};

/// Full parameter set of the two-cavity / two-magnon system. All rates are
/// angular frequencies in rad/s. An absent drive means the cavity sees
/// thermal (vacuum at T = 0) input noise.
struct SystemConfig {
  ModeParams cavity1;
  ModeParams cavity2;
  ModeParams magnon1;
  ModeParams magnon2;
  double g1 = 0.0;
  double g2 = 0.0;
  double J = 0.0;
  std::optional<SqueezeDrive> drive1;
  std::optional<SqueezeDrive> drive2;
  BathConfig bath;

  const ModeParams& mode(Mode m) const;
  ModeParams& mode(Mode m);

  bool operator==(const SystemConfig&) const = default;
};

enum class DriveConfiguration { unsqueezed, single_squeezed, double_squeezed };

DriveConfiguration drive_configuration(const SystemConfig& config);

/// Throws ConfigError naming the offending field, e.g. "magnon1.decay".
void validate(const SystemConfig& config);

/// Exchanges every subsystem-1 parameter with its subsystem-2 counterpart.
SystemConfig swap_subsystems(const SystemConfig& config);

/// Reference parameter set: kappa_a / 2pi = 5 MHz, kappa_m = kappa_a / 5,
/// J = 4 kappa_a, g1 = g2 = 2 kappa_a, r = 0.9, theta = 0, cavity detunings
/// -J, magnon detunings +J/2 and -J/2, T = 0, carrier 2pi x 10 GHz.
SystemConfig baseline_config(DriveConfiguration drives);

/// Bose-Einstein occupation 1 / (exp(hbar w / k_B T) - 1). Exactly 0 at
/// T = 0. Throws std::domain_error for non-positive frequency or negative
/// temperature.
double thermal_occupation(double frequency, double temperature);

struct SqueezeOccupations {
  double n = 0.0;                // <s^dag s> = sinh^2 r
  std::complex<double> m{};      // <s s> = e^{i theta} sinh r cosh r
};

SqueezeOccupations squeeze_occupations(const SqueezeDrive& drive);

struct DriftMatrix {
  Matrix8 entries;
};

struct DiffusionMatrix {
  Matrix8 entries;
};

/// Coefficient matrix of the linearised quadrature dynamics du/dt = A u + n.
DriftMatrix build_drift(const SystemConfig& config);

/// Block-diagonal input-noise correlation matrix. Squeezed blocks for
/// driven cavities, thermal blocks kappa (2N + 1) I for everything else,
/// with occupations evaluated at carrier_frequency + detuning.
DiffusionMatrix build_diffusion(const SystemConfig& config);

}  // namespace magnon
