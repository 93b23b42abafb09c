#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "magnon/config_file.hpp"
#include "magnon/sweep.hpp"

namespace magnon {

/// A sweep axis expressed in configuration-file units.
struct FileAxis {
  FileParameter parameter;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;

  double value(int index) const;
  SweepAxis internal() const;
};

/// "%.17g", with "nan" for NaN.
std::string format_number(double value);

/// Sweep output: '#'-prefixed metadata preamble embedding the configuration
/// (free-text lines use "##"), one header row naming the axes, then one row
/// per grid point with axis values in file units, E_N and the stability
/// flag. Rows follow the flat grid order (axis 1 fastest). LF line endings.
std::string format_sweep_csv(const SweepResult& result, std::span<const FileAxis> axes, const ConfigDocument& doc,
                             std::string_view command);

/// Parses the configuration embedded in a metadata preamble.
ConfigDocument read_metadata(std::istream& in);
ConfigDocument read_metadata(std::string_view text);

/// Writes to a temporary sibling and renames it over `path`, so readers
/// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace magnon
