#include "magnon/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <utility>

#include <fmt/format.h>

#include "magnon/errors.hpp"

namespace magnon {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ParameterName {
  Parameter parameter;
  std::string_view path;
};

constexpr ParameterName kParameterNames[] = {
    {Parameter::cavity1_detuning, "cavity1.detuning"},
    {Parameter::cavity1_decay, "cavity1.decay"},
    {Parameter::cavity2_detuning, "cavity2.detuning"},
    {Parameter::cavity2_decay, "cavity2.decay"},
    {Parameter::magnon1_detuning, "magnon1.detuning"},
    {Parameter::magnon1_decay, "magnon1.decay"},
    {Parameter::magnon2_detuning, "magnon2.detuning"},
    {Parameter::magnon2_decay, "magnon2.decay"},
    {Parameter::coupling_g1, "coupling.g1"},
    {Parameter::coupling_g2, "coupling.g2"},
    {Parameter::coupling_J, "coupling.J"},
    {Parameter::drive1_r, "drive1.r"},
    {Parameter::drive1_theta, "drive1.theta"},
    {Parameter::drive2_r, "drive2.r"},
    {Parameter::drive2_theta, "drive2.theta"},
    {Parameter::bath_temperature, "bath.temperature"},
    {Parameter::bath_carrier_frequency, "bath.carrier_frequency"},
};

SqueezeDrive& require_drive(std::optional<SqueezeDrive>& drive, Parameter p) {
  if (!drive) {
    throw ConfigError(fmt::format("{}: drive is absent from the configuration", parameter_path(p)));
  }
  return *drive;
}

double& field(SystemConfig& c, Parameter p) {
  switch (p) {
    case Parameter::cavity1_detuning: return c.cavity1.detuning;
    case Parameter::cavity1_decay: return c.cavity1.decay;
    case Parameter::cavity2_detuning: return c.cavity2.detuning;
    case Parameter::cavity2_decay: return c.cavity2.decay;
    case Parameter::magnon1_detuning: return c.magnon1.detuning;
    case Parameter::magnon1_decay: return c.magnon1.decay;
    case Parameter::magnon2_detuning: return c.magnon2.detuning;
    case Parameter::magnon2_decay: return c.magnon2.decay;
    case Parameter::coupling_g1: return c.g1;
    case Parameter::coupling_g2: return c.g2;
    case Parameter::coupling_J: return c.J;
    case Parameter::drive1_r: return require_drive(c.drive1, p).r;
    case Parameter::drive1_theta: return require_drive(c.drive1, p).theta;
    case Parameter::drive2_r: return require_drive(c.drive2, p).r;
    case Parameter::drive2_theta: return require_drive(c.drive2, p).theta;
    case Parameter::bath_temperature: return c.bath.temperature;
    case Parameter::bath_carrier_frequency: return c.bath.carrier_frequency;
  }
  throw std::logic_error("invalid parameter");
}

void check_axes(const SystemConfig& base, std::span<const SweepAxis> axes) {
  if (axes.empty() || axes.size() > 2) {
    throw ConfigError(fmt::format("sweep: expected 1 or 2 axes, got {}", axes.size()));
  }
  for (const SweepAxis& axis : axes) {
    const auto name = parameter_path(axis.parameter);
    if (axis.points < 2) {
      throw ConfigError(fmt::format("sweep axis {}: points must be >= 2 (got {})", name, axis.points));
    }
    if (!std::isfinite(axis.start) || !std::isfinite(axis.stop) || axis.start == axis.stop) {
      throw ConfigError(fmt::format("sweep axis {}: start and stop must be finite and distinct", name));
    }
  }
  if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
    throw ConfigError(fmt::format("sweep: both axes drive {}", parameter_path(axes[0].parameter)));
  }

  validate(base);
  // Every field constraint is a half-line, so checking the corners of the
  // grid covers the interior.
  const auto ends = [](const SweepAxis& a) { return std::array{a.start, a.stop}; };
  for (const double v0 : ends(axes[0])) {
    SystemConfig corner = base;
    set_parameter(corner, axes[0].parameter, v0);
    if (axes.size() == 1) {
      validate(corner);
      continue;
    }
    for (const double v1 : ends(axes[1])) {
      set_parameter(corner, axes[1].parameter, v1);
      validate(corner);
    }
  }
}

unsigned worker_count(unsigned requested, std::size_t tasks) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, tasks));
}

}  // namespace

Parameter parse_parameter(std::string_view path) {
  for (const auto& entry : kParameterNames) {
    if (entry.path == path) {
      return entry.parameter;
    }
  }
  throw ConfigError(fmt::format("unknown parameter path '{}'", path));
}

std::string_view parameter_path(Parameter p) {
  for (const auto& entry : kParameterNames) {
    if (entry.parameter == p) {
      return entry.path;
    }
  }
  throw std::logic_error("invalid parameter");
}

void set_parameter(SystemConfig& config, Parameter p, double value) { field(config, p) = value; }

double get_parameter(const SystemConfig& config, Parameter p) {
  SystemConfig copy = config;
  return field(copy, p);
}

double SweepAxis::value(int index) const {
  if (index == points - 1) {
    return stop;
  }
  return start + (stop - start) * static_cast<double>(index) / static_cast<double>(points - 1);
}

SteadyState analyze(const SystemConfig& config) {
  validate(config);
  const DriftMatrix drift = build_drift(config);
  const DiffusionMatrix diffusion = build_diffusion(config);

  SteadyState state;
  state.stability = is_stable(drift);
  if (!state.stability.stable) {
    return state;
  }
  state.covariance = solve_steady_state(drift, diffusion);
  state.negativity = log_negativity(extract_magnon_block(*state.covariance));
  state.min_symplectic = min_symplectic_eigenvalue(state.covariance->entries);
  return state;
}

std::array<std::size_t, 2> SweepResult::unflatten(std::size_t flat) const {
  const auto n1 = static_cast<std::size_t>(axes.at(0).points);
  return {flat % n1, flat / n1};
}

std::vector<double> SweepResult::parameters_at(std::size_t flat) const {
  const auto idx = unflatten(flat);
  std::vector<double> out;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    out.push_back(axes[k].value(static_cast<int>(idx[k])));
  }
  return out;
}

SweepResult run_sweep(const SystemConfig& base, std::span<const SweepAxis> axes, SweepOptions options) {
  check_axes(base, axes);

  SweepResult result;
  result.axes.assign(axes.begin(), axes.end());
  result.base = base;
  std::size_t total = 1;
  for (const SweepAxis& axis : axes) {
    total *= static_cast<std::size_t>(axis.points);
  }
  result.values.assign(total, kNaN);
  result.stable.assign(total, 0);
  result.min_symplectic.assign(total, kNaN);

  const unsigned workers = worker_count(options.threads, total);
  std::vector<std::pair<std::size_t, std::exception_ptr>> failures(workers, {total, nullptr});

  const auto work = [&](unsigned worker) {
    for (std::size_t flat = worker; flat < total; flat += workers) {
      try {
        SystemConfig point = base;
        const auto idx = result.unflatten(flat);
        for (std::size_t k = 0; k < axes.size(); ++k) {
          set_parameter(point, axes[k].parameter, axes[k].value(static_cast<int>(idx[k])));
        }
        const SteadyState state = analyze(point);
        if (state.stability.stable) {
          result.values[flat] = state.negativity.log_negativity;
          result.stable[flat] = 1;
          result.min_symplectic[flat] = state.min_symplectic;
        }
      } catch (...) {
        failures[worker] = {flat, std::current_exception()};
        return;
      }
    }
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work, w);
    }
  }

  // Report the failure at the smallest grid index so errors are reproducible too.
  const auto first = std::min_element(failures.begin(), failures.end(),
                                      [](const auto& a, const auto& b) { return a.first < b.first; });
  if (first != failures.end() && first->second) {
    std::rethrow_exception(first->second);
  }
  return result;
}

Optimum find_optimum(const SweepResult& result) {
  std::optional<std::size_t> best;
  for (std::size_t flat = 0; flat < result.size(); ++flat) {
    if (!result.stable[flat]) {
      continue;
    }
    if (!best || result.values[flat] > result.values[*best]) {
      best = flat;
    }
  }
  if (!best) {
    throw NumericalError("find_optimum: no stable grid point");
  }
  return {result.unflatten(*best), result.parameters_at(*best), result.values[*best]};
}

double survival_temperature(const SystemConfig& base, double t_max, double resolution, double threshold) {
  if (!(t_max > 0.0) || !(resolution > 0.0)) {
    throw ConfigError("survival_temperature: t_max and resolution must be > 0");
  }
  const auto entanglement_at = [&base](double temperature) {
    SystemConfig c = base;
    c.bath.temperature = temperature;
    const SteadyState state = analyze(c);
    if (!state.stability.stable) {
      throw StabilityError(fmt::format("survival_temperature: unstable at T = {} K", temperature));
    }
    return state.negativity.log_negativity;
  };

  if (!(entanglement_at(0.0) > threshold)) {
    throw ConfigError("survival_temperature: configuration is not entangled at T = 0");
  }

  const int points = static_cast<int>(std::clamp(std::ceil(t_max / resolution), 1.0, 64.0)) + 1;
  const SweepAxis grid{Parameter::bath_temperature, 0.0, t_max, points};
  std::vector<double> scan(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    scan[static_cast<std::size_t>(k)] = entanglement_at(grid.value(k));
  }

  const auto above = [threshold](double e) { return e > threshold; };
  const auto first_below = std::find_if_not(scan.begin(), scan.end(), above);
  if (first_below == scan.end()) {
    return t_max;
  }

  // Re-entrant entanglement beyond the first zero: give up on bisection and
  // scan the whole range at the requested resolution.
  if (std::any_of(first_below, scan.end(), above)) {
    const int fine_points = static_cast<int>(std::ceil(t_max / resolution)) + 1;
    const SweepAxis fine{Parameter::bath_temperature, 0.0, t_max, std::max(fine_points, 2)};
    double best = 0.0;
    for (int k = 0; k < fine.points; ++k) {
      if (above(entanglement_at(fine.value(k)))) {
        best = fine.value(k);
      }
    }
    return best;
  }

  const int last = static_cast<int>(first_below - scan.begin()) - 1;
  double lo = grid.value(last);
  double hi = grid.value(last + 1);
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (above(entanglement_at(mid)) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace magnon
