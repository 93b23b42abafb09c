#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magnon/config_file.hpp"
#include "magnon/csv.hpp"

namespace magnon::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,
  kUnstable = 2,
  kNumericalFailure = 3,
};

enum class SweepKind { detuning, phase, squeeze, decay, temperature };

std::string_view command_name(SweepKind kind);

struct CommandOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<int> points;
  std::optional<std::string> axis1;
  std::optional<std::string> axis2;
  bool verbose = false;
  unsigned threads = 0;
};

/// "param:start:stop" with param a configuration-file key and start/stop in
/// file units.
FileAxis parse_axis(std::string_view spec, const ConfigDocument& doc, int points);

/// Axes used when no --axis1 is given. Throws ConfigError when the
/// configuration cannot support the default (e.g. a phase sweep without any
/// drive).
std::vector<FileAxis> default_axes(SweepKind kind, const ConfigDocument& doc, std::optional<int> points);

/// Reads MAGNON_NUM_THREADS; 0 or unset means all cores.
unsigned threads_from_environment();

int cmd_steady_state(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(SweepKind kind, const CommandOptions& options, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace magnon::cli
