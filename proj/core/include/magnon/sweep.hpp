#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "magnon/entanglement.hpp"
#include "magnon/lyapunov.hpp"
#include "magnon/model.hpp"

namespace magnon {

/// Scalar fields of SystemConfig that a sweep axis can drive. Values are in
/// internal units: rad/s for rates, radians for phases, kelvin.
enum class Parameter {
  cavity1_detuning,
  cavity1_decay,
  cavity2_detuning,
  cavity2_decay,
  magnon1_detuning,
  magnon1_decay,
  magnon2_detuning,
  magnon2_decay,
  coupling_g1,
  coupling_g2,
  coupling_J,
  drive1_r,
  drive1_theta,
  drive2_r,
  drive2_theta,
  bath_temperature,
  bath_carrier_frequency,
};

/// Dotted path such as "cavity1.detuning" or "drive2.theta". Throws
/// ConfigError for unknown paths.
Parameter parse_parameter(std::string_view path);
std::string_view parameter_path(Parameter p);

/// Sets one field. Throws ConfigError when the parameter belongs to a drive
/// that is absent from the configuration.
void set_parameter(SystemConfig& config, Parameter p, double value);
double get_parameter(const SystemConfig& config, Parameter p);

struct SweepAxis {
  Parameter parameter{};
  double start = 0.0;
  double stop = 1.0;
  int points = 2;

  /// Linear grid; value(points - 1) == stop exactly.
  double value(int index) const;
};

/// Everything the pipeline learns about one configuration.
struct SteadyState {
  StabilityReport stability;
  std::optional<CovarianceMatrix> covariance;  // empty when unstable
  NegativityResult negativity;
  double min_symplectic = 0.0;
};

/// drift -> stability -> Lyapunov -> magnon block -> log negativity.
SteadyState analyze(const SystemConfig& config);

/// Grids are stored with axis 1 varying fastest: flat = i1 + n1 * i2.
struct SweepResult {
  std::vector<SweepAxis> axes;
  std::vector<double> values;            // E_N; NaN where unstable
  std::vector<std::uint8_t> stable;      // 1 = stable
  std::vector<double> min_symplectic;    // NaN where unstable
  SystemConfig base;

  std::size_t size() const { return values.size(); }
  std::array<std::size_t, 2> unflatten(std::size_t flat) const;
  /// Axis values at a flat grid index.
  std::vector<double> parameters_at(std::size_t flat) const;
};

struct SweepOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Evaluates E_N on the grid spanned by one or two axes. Throws ConfigError
/// before any solve if an axis is malformed, repeats a parameter or would
/// drive the configuration out of its valid range. Output does not depend
/// on the worker count.
SweepResult run_sweep(const SystemConfig& base, std::span<const SweepAxis> axes, SweepOptions options = {});

struct Optimum {
  std::array<std::size_t, 2> index{};
  std::vector<double> parameters;
  double log_negativity = 0.0;
};

/// First maximum in flat (axis-1 fastest) order; unstable points are
/// ignored. Throws NumericalError if no point is stable.
Optimum find_optimum(const SweepResult& result);

inline constexpr double kEntanglementThreshold = 1e-6;

/// Largest bath temperature in [0, t_max] with E_N > threshold, located by a
/// coarse scan and refined by bisection to `resolution` kelvin. Returns t_max
/// when the state is still entangled there. Throws ConfigError when the
/// state is not entangled at T = 0.
double survival_temperature(const SystemConfig& base, double t_max, double resolution,
                            double threshold = kEntanglementThreshold);

}  // namespace magnon
