#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "magnon/model.hpp"
#include "magnon/sweep.hpp"

namespace magnon {

/// How rate-valued keys are read: ordinary frequency in Hz (multiplied by
/// 2 pi on ingestion) or multiples of kappa_a, with kappa_a / 2 pi given by
/// [units] kappa_a_Hz.
enum class RateUnit { hz, kappa_a };

/// The configuration file exactly as written, in file units, with defaults
/// filled in. Layout:
///
///   [units]     rate_unit = "Hz" | "kappa_a", kappa_a_Hz
///   [cavity1] [cavity2] [magnon1] [magnon2]   detuning, decay
///   [coupling]  g1, g2, J
///   [drive1] [drive2]   r, theta_deg          (optional sections)
///   [bath]      temperature_mK, carrier_frequency_GHz   (optional)
struct ConfigDocument {
  struct Mode {
    double detuning = 0.0;
    double decay = 0.0;
    bool operator==(const Mode&) const = default;
  };
  struct Drive {
    double r = 0.0;
    double theta_deg = 0.0;
    bool operator==(const Drive&) const = default;
  };

  RateUnit rate_unit = RateUnit::hz;
  std::optional<double> kappa_a_hz;
  Mode cavity1;
  Mode cavity2;
  Mode magnon1;
  Mode magnon2;
  double g1 = 0.0;
  double g2 = 0.0;
  double J = 0.0;
  std::optional<Drive> drive1;
  std::optional<Drive> drive2;
  double temperature_mk = 0.0;
  double carrier_frequency_ghz = 10.0;

  /// rad/s per file rate unit.
  double rate_scale() const;

  bool operator==(const ConfigDocument&) const = default;
};

/// Parses a configuration document. Unknown sections or keys, a missing
/// [units] section and malformed numbers are all ConfigErrors; unknown keys
/// are listed together.
ConfigDocument parse_config(std::istream& in);
ConfigDocument parse_config(std::string_view text);
ConfigDocument load_config_document(const std::filesystem::path& path);

/// Converts to internal units and validates, reporting field paths.
SystemConfig resolve(const ConfigDocument& doc);

SystemConfig load_config(const std::filesystem::path& path);

/// Writes every key explicitly, numbers with 17 significant digits, so that
/// parse_config(format_config(doc)) == doc.
std::string format_config(const ConfigDocument& doc);

/// Human-readable dump of a resolved configuration in internal units.
std::string describe(const SystemConfig& config);

/// A sweep parameter addressed by its configuration-file key, e.g.
/// "cavity1.detuning", "drive1.theta_deg", "bath.temperature_mK".
struct FileParameter {
  Parameter parameter{};
  std::string key;
  double scale = 1.0;  // internal value = file value * scale
};

FileParameter parse_file_parameter(std::string_view key, const ConfigDocument& doc);
FileParameter file_parameter(Parameter parameter, const ConfigDocument& doc);

}  // namespace magnon
