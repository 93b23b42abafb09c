#include "magnon/csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <fmt/format.h>

#include "magnon/errors.hpp"

namespace magnon {

double FileAxis::value(int index) const {
  return SweepAxis{parameter.parameter, start, stop, points}.value(index);
}

SweepAxis FileAxis::internal() const {
  return {parameter.parameter, start * parameter.scale, stop * parameter.scale, points};
}

std::string format_number(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  return fmt::format("{:.17g}", value);
}

std::string format_sweep_csv(const SweepResult& result, std::span<const FileAxis> axes, const ConfigDocument& doc,
                             std::string_view command) {
  if (axes.size() != result.axes.size()) {
    throw std::logic_error("format_sweep_csv: axis count mismatch");
  }
  std::string out;
  out += fmt::format("## magnon {}\n", command);
  for (std::size_t k = 0; k < axes.size(); ++k) {
    out += fmt::format("## axis{} = {} from {} to {}, {} points\n", k + 1, axes[k].parameter.key,
                       format_number(axes[k].start), format_number(axes[k].stop), axes[k].points);
  }
  std::istringstream config(format_config(doc));
  for (std::string line; std::getline(config, line);) {
    out += "# " + line + '\n';
  }

  for (const FileAxis& axis : axes) {
    out += axis.parameter.key + ',';
  }
  out += "E_N,stable\n";

  for (std::size_t flat = 0; flat < result.size(); ++flat) {
    const auto idx = result.unflatten(flat);
    for (std::size_t k = 0; k < axes.size(); ++k) {
      out += format_number(axes[k].value(static_cast<int>(idx[k]))) + ',';
    }
    out += format_number(result.values[flat]);
    out += result.stable[flat] ? ",1\n" : ",0\n";
  }
  return out;
}

ConfigDocument read_metadata(std::istream& in) {
  std::string config;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line.front() != '#') {
      break;
    }
    std::string_view body(line);
    body.remove_prefix(1);
    if (!body.empty() && body.front() == ' ') {
      body.remove_prefix(1);
    }
    config.append(body);
    config += '\n';
  }
  if (config.empty()) {
    throw ConfigError("CSV has no metadata preamble");
  }
  return parse_config(config);
}

ConfigDocument read_metadata(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_metadata(in);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += fmt::format(".tmp.{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ConfigError(fmt::format("cannot write '{}'", tmp.string()));
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw ConfigError(fmt::format("failed writing '{}'", tmp.string()));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ConfigError(fmt::format("cannot move output into place at '{}'", path.string()));
  }
}

}  // namespace magnon
