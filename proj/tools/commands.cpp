#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "magnon/errors.hpp"
#include "magnon/sweep.hpp"

namespace magnon::cli {

namespace {

constexpr int kDefaultPoints2d = 101;
constexpr int kDefaultPoints1d = 201;
constexpr double kSurvivalResolution = 1e-3;  // K

constexpr const char* kQuadratureNames[] = {"x_a1", "y_a1", "x_a2", "y_a2", "x_m1", "y_m1", "x_m2", "y_m2"};

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", what, text));
  }
  return value;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const StabilityError& e) {
    err << "error: " << e.what() << '\n';
    return kUnstable;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

std::filesystem::path output_path(const CommandOptions& options, std::string_view command) {
  return options.out.value_or(std::filesystem::path(fmt::format("{}.csv", command)));
}

void echo_config(const CommandOptions& options, const SystemConfig& config, std::ostream& out) {
  if (options.verbose) {
    out << "resolved configuration (internal units):\n" << describe(config);
  }
}

std::string axes_summary(std::span<const FileAxis> axes, const std::vector<double>& internal_values) {
  std::string text;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    text += fmt::format("{} = {}, ", axes[k].parameter.key,
                        format_number(internal_values[k] / axes[k].parameter.scale));
  }
  return text;
}

}  // namespace

std::string_view command_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::detuning: return "sweep-detuning";
    case SweepKind::phase: return "sweep-phase";
    case SweepKind::squeeze: return "sweep-squeeze";
    case SweepKind::decay: return "sweep-decay";
    case SweepKind::temperature: return "sweep-temperature";
  }
  throw std::logic_error("invalid sweep kind");
}

FileAxis parse_axis(std::string_view spec, const ConfigDocument& doc, int points) {
  const auto first = spec.find(':');
  const auto second = first == std::string_view::npos ? first : spec.find(':', first + 1);
  if (second == std::string_view::npos || spec.find(':', second + 1) != std::string_view::npos) {
    throw ConfigError(fmt::format("axis '{}': expected param:start:stop", spec));
  }
  FileAxis axis;
  axis.parameter = parse_file_parameter(spec.substr(0, first), doc);
  axis.start = parse_double(spec.substr(first + 1, second - first - 1), "axis start");
  axis.stop = parse_double(spec.substr(second + 1), "axis stop");
  axis.points = points;
  return axis;
}

std::vector<FileAxis> default_axes(SweepKind kind, const ConfigDocument& doc, std::optional<int> points) {
  const auto axis = [&doc](Parameter p, double start, double stop, int n) {
    return FileAxis{file_parameter(p, doc), start, stop, n};
  };
  const int n2 = points.value_or(kDefaultPoints2d);
  const int n1 = points.value_or(kDefaultPoints1d);

  switch (kind) {
    case SweepKind::detuning: {
      if (!(doc.J > 0.0)) {
        throw ConfigError("sweep-detuning: default range [-2J, 2J] needs J > 0; pass --axis1/--axis2");
      }
      return {axis(Parameter::cavity1_detuning, -2.0 * doc.J, 2.0 * doc.J, n2),
              axis(Parameter::cavity2_detuning, -2.0 * doc.J, 2.0 * doc.J, n2)};
    }
    case SweepKind::phase:
    case SweepKind::squeeze: {
      const bool phase = kind == SweepKind::phase;
      const double stop = phase ? 360.0 : 2.0;
      const Parameter p1 = phase ? Parameter::drive1_theta : Parameter::drive1_r;
      const Parameter p2 = phase ? Parameter::drive2_theta : Parameter::drive2_r;
      if (doc.drive1 && doc.drive2) {
        return {axis(p1, 0.0, stop, n2), axis(p2, 0.0, stop, n2)};
      }
      if (doc.drive1) {
        return {axis(p1, 0.0, stop, n1)};
      }
      if (doc.drive2) {
        return {axis(p2, 0.0, stop, n1)};
      }
      throw ConfigError(fmt::format("{}: configuration has no squeezed drive", command_name(kind)));
    }
    case SweepKind::decay: {
      const double unit = doc.rate_unit == RateUnit::kappa_a ? 1.0 : doc.cavity2.decay;
      return {axis(Parameter::cavity2_decay, 0.1 * unit, 20.0 * unit, n1)};
    }
    case SweepKind::temperature:
      return {axis(Parameter::bath_temperature, 0.0, 600.0, n1)};
  }
  throw std::logic_error("invalid sweep kind");
}

unsigned threads_from_environment() {
  const char* value = std::getenv("MAGNON_NUM_THREADS");
  if (value == nullptr || *value == '\0') {
    return 0;
  }
  unsigned threads = 0;
  const std::string_view text(value);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), threads);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(fmt::format("MAGNON_NUM_THREADS: '{}' is not a non-negative integer", text));
  }
  return threads;
}

int cmd_steady_state(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ConfigDocument doc = load_config_document(options.config);
    const SystemConfig config = resolve(doc);
    echo_config(options, config, out);

    const SteadyState state = analyze(config);

    std::string report = "## magnon steady-state\n";
    std::istringstream embedded(format_config(doc));
    for (std::string line; std::getline(embedded, line);) {
      report += "# " + line + '\n';
    }
    report += fmt::format("## stable = {}\n", state.stability.stable);
    report += fmt::format("## spectral_abscissa = {}\n", format_number(state.stability.spectral_abscissa));

    out << "stable: " << (state.stability.stable ? "yes" : "no") << '\n';
    out << "spectral abscissa: " << format_number(state.stability.spectral_abscissa) << " rad/s\n";

    if (!state.stability.stable) {
      write_file_atomic(output_path(options, "steady-state"), report);
      err << "error: drift matrix is not Hurwitz; no steady state\n";
      return static_cast<int>(kUnstable);
    }

    const NegativityResult& neg = state.negativity;
    report += fmt::format("## E_N = {}\n", format_number(neg.log_negativity));
    report += fmt::format("## eta_minus = {}\n", format_number(neg.eta_minus));
    report += fmt::format("## min_symplectic_eigenvalue = {}\n", format_number(state.min_symplectic));
    for (int i = 0; i < kDimension; ++i) {
      report += kQuadratureNames[i];
      report += i + 1 < kDimension ? ',' : '\n';
    }
    const Matrix8& v = state.covariance->entries;
    for (int i = 0; i < kDimension; ++i) {
      for (int j = 0; j < kDimension; ++j) {
        report += format_number(v(i, j));
        report += j + 1 < kDimension ? ',' : '\n';
      }
    }
    write_file_atomic(output_path(options, "steady-state"), report);

    out << "E_N: " << format_number(neg.log_negativity) << (neg.entangled ? " (entangled)" : " (separable)") << '\n';
    out << "eta_minus: " << format_number(neg.eta_minus) << '\n';
    out << "min symplectic eigenvalue: " << format_number(state.min_symplectic) << '\n';
    return static_cast<int>(kSuccess);
  });
}

int cmd_sweep(SweepKind kind, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ConfigDocument doc = load_config_document(options.config);
    const SystemConfig config = resolve(doc);
    echo_config(options, config, out);

    if (options.points && *options.points < 2) {
      throw ConfigError(fmt::format("--points must be >= 2 (got {})", *options.points));
    }
    std::vector<FileAxis> axes;
    if (options.axis1) {
      const int n = options.points.value_or(options.axis2 ? kDefaultPoints2d : kDefaultPoints1d);
      axes.push_back(parse_axis(*options.axis1, doc, n));
      if (options.axis2) {
        axes.push_back(parse_axis(*options.axis2, doc, n));
      }
    } else if (options.axis2) {
      throw ConfigError("--axis2 requires --axis1");
    } else {
      axes = default_axes(kind, doc, options.points);
    }

    std::vector<SweepAxis> internal;
    for (const FileAxis& a : axes) {
      internal.push_back(a.internal());
    }
    const SweepResult result = run_sweep(config, internal, SweepOptions{options.threads});
    write_file_atomic(output_path(options, command_name(kind)), format_sweep_csv(result, axes, doc, command_name(kind)));

    const Optimum best = find_optimum(result);
    out << "optimum: " << axes_summary(axes, best.parameters) << "E_N = " << format_number(best.log_negativity)
        << '\n';

    if (kind == SweepKind::temperature && axes.size() == 1 && axes[0].parameter.parameter == Parameter::bath_temperature) {
      const double t_max = std::max(internal[0].start, internal[0].stop);
      SystemConfig cold = config;
      cold.bath.temperature = 0.0;
      if (analyze(cold).negativity.log_negativity > kEntanglementThreshold) {
        const double survival = survival_temperature(config, t_max, kSurvivalResolution);
        out << "survival temperature: " << format_number(survival * 1e3) << " mK\n";
      } else {
        out << "survival temperature: n/a (not entangled at T = 0)\n";
      }
    }
    return static_cast<int>(kSuccess);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady-state magnon-magnon entanglement in a squeezed two-cavity system"};
  app.require_subcommand(1);

  CommandOptions options;
  const auto common = [&options](CLI::App* sub, bool sweep) {
    sub->add_option("--config", options.config, "Configuration file")->required();
    sub->add_option("--out", options.out, "Output CSV path");
    sub->add_flag("--verbose", options.verbose, "Echo the resolved configuration");
    if (sweep) {
      sub->add_option("--points", options.points, "Grid points per axis");
      sub->add_option("--axis1", options.axis1, "First axis, param:start:stop in file units");
      sub->add_option("--axis2", options.axis2, "Second axis, param:start:stop in file units");
    }
  };

  CLI::App* steady = app.add_subcommand("steady-state", "Solve one configuration and report E_N and V");
  common(steady, false);

  const SweepKind kinds[] = {SweepKind::detuning, SweepKind::phase, SweepKind::squeeze, SweepKind::decay,
                             SweepKind::temperature};
  const char* descriptions[] = {
      "E_N over cavity detunings (default: both cavities, [-2J, 2J])",
      "E_N over squeezing phases (default: 0..360 deg per drive)",
      "E_N over squeezing strengths (default: 0..2 per drive)",
      "E_N over the cavity-2 decay rate (default: 0.1..20 kappa)",
      "E_N over bath temperature (default: 0..600 mK) and survival temperature",
  };
  std::vector<std::pair<CLI::App*, SweepKind>> sweeps;
  for (std::size_t k = 0; k < std::size(kinds); ++k) {
    CLI::App* sub = app.add_subcommand(std::string(command_name(kinds[k])), descriptions[k]);
    common(sub, true);
    sweeps.emplace_back(sub, kinds[k]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  const int env = guarded(err, [&] {
    options.threads = threads_from_environment();
    return static_cast<int>(kSuccess);
  });
  if (env != kSuccess) {
    return env;
  }

  if (steady->parsed()) {
    return cmd_steady_state(options, out, err);
  }
  for (const auto& [sub, kind] : sweeps) {
    if (sub->parsed()) {
      return cmd_sweep(kind, options, out, err);
    }
  }
  return kConfigError;
}

}  // namespace magnon::cli
