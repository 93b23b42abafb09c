#include "magnon/config_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "magnon/errors.hpp"

namespace magnon {

namespace {

namespace pt = boost::property_tree;

constexpr double kDegree = std::numbers::pi / 180.0;

const std::map<std::string, std::set<std::string>, std::less<>>& known_keys() {
  static const std::map<std::string, std::set<std::string>, std::less<>> keys = {
      {"units", {"rate_unit", "kappa_a_Hz"}},
      {"cavity1", {"detuning", "decay"}},
      {"cavity2", {"detuning", "decay"}},
      {"magnon1", {"detuning", "decay"}},
      {"magnon2", {"detuning", "decay"}},
      {"coupling", {"g1", "g2", "J"}},
      {"drive1", {"r", "theta_deg"}},
      {"drive2", {"r", "theta_deg"}},
      {"bath", {"temperature_mK", "carrier_frequency_GHz"}},
  };
  return keys;
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double parse_number(const std::string& text, std::string_view path) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') {
    ++begin;
  }
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", path, text));
  }
  return value;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  bool has_section(std::string_view section) const {
    return tree_.get_child_optional(pt::ptree::path_type(std::string(section), '\0')).has_value();
  }

  std::optional<std::string> raw(std::string_view section, std::string_view key) const {
    const auto sec = tree_.get_child_optional(pt::ptree::path_type(std::string(section), '\0'));
    if (!sec) {
      return std::nullopt;
    }
    const auto value = sec->get_optional<std::string>(pt::ptree::path_type(std::string(key), '\0'));
    if (!value) {
      return std::nullopt;
    }
    return unquote(*value);
  }

  double number(std::string_view section, std::string_view key) const {
    const auto path = fmt::format("{}.{}", section, key);
    const auto text = raw(section, key);
    if (!text) {
      throw ConfigError(fmt::format("{}: missing", path));
    }
    return parse_number(*text, path);
  }

  double number_or(std::string_view section, std::string_view key, double fallback) const {
    return raw(section, key) ? number(section, key) : fallback;
  }

 private:
  const pt::ptree& tree_;
};

void reject_unknown(const pt::ptree& tree) {
  std::vector<std::string> unknown;
  for (const auto& [section, body] : tree) {
    const auto known = known_keys().find(section);
    if (known == known_keys().end()) {
      unknown.push_back(body.empty() && !body.data().empty() ? section : fmt::format("[{}]", section));
      continue;
    }
    for (const auto& [key, value] : body) {
      if (!known->second.contains(key)) {
        unknown.push_back(fmt::format("{}.{}", section, key));
      }
    }
  }
  if (!unknown.empty()) {
    throw ConfigError(fmt::format("unknown configuration keys: {}", fmt::join(unknown, ", ")));
  }
}

ConfigDocument::Mode read_mode(const Reader& r, std::string_view section) {
  if (!r.has_section(section)) {
    throw ConfigError(fmt::format("[{}]: section missing", section));
  }
  return {r.number(section, "detuning"), r.number(section, "decay")};
}

std::optional<ConfigDocument::Drive> read_drive(const Reader& r, std::string_view section) {
  if (!r.has_section(section)) {
    return std::nullopt;
  }
  return ConfigDocument::Drive{r.number(section, "r"), r.number_or(section, "theta_deg", 0.0)};
}

std::string number(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

double ConfigDocument::rate_scale() const {
  switch (rate_unit) {
    case RateUnit::hz: return constants::two_pi;
    case RateUnit::kappa_a: return constants::two_pi * kappa_a_hz.value_or(0.0);
  }
  throw std::logic_error("invalid rate unit");
}

ConfigDocument parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("malformed configuration (line {}): {}", e.line(), e.message()));
  }
  reject_unknown(tree);
  const Reader r(tree);

  ConfigDocument doc;
  if (!r.has_section("units")) {
    throw ConfigError("[units]: section missing");
  }
  const auto unit = r.raw("units", "rate_unit");
  if (!unit) {
    throw ConfigError("units.rate_unit: missing");
  }
  if (*unit == "Hz") {
    doc.rate_unit = RateUnit::hz;
  } else if (*unit == "kappa_a") {
    doc.rate_unit = RateUnit::kappa_a;
  } else {
    throw ConfigError(fmt::format("units.rate_unit: expected \"Hz\" or \"kappa_a\", got '{}'", *unit));
  }
  if (r.raw("units", "kappa_a_Hz")) {
    doc.kappa_a_hz = r.number("units", "kappa_a_Hz");
  }
  if (doc.rate_unit == RateUnit::kappa_a) {
    if (!doc.kappa_a_hz) {
      throw ConfigError("units.kappa_a_Hz: required when rate_unit = \"kappa_a\"");
    }
    if (!(*doc.kappa_a_hz > 0.0)) {
      throw ConfigError(fmt::format("units.kappa_a_Hz: must be > 0 (got {})", *doc.kappa_a_hz));
    }
  }

  doc.cavity1 = read_mode(r, "cavity1");
  doc.cavity2 = read_mode(r, "cavity2");
  doc.magnon1 = read_mode(r, "magnon1");
  doc.magnon2 = read_mode(r, "magnon2");

  if (!r.has_section("coupling")) {
    throw ConfigError("[coupling]: section missing");
  }
  doc.g1 = r.number("coupling", "g1");
  doc.g2 = r.number("coupling", "g2");
  doc.J = r.number("coupling", "J");

  doc.drive1 = read_drive(r, "drive1");
  doc.drive2 = read_drive(r, "drive2");

  doc.temperature_mk = r.number_or("bath", "temperature_mK", 0.0);
  doc.carrier_frequency_ghz = r.number_or("bath", "carrier_frequency_GHz", 10.0);
  return doc;
}

ConfigDocument parse_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_config(in);
}

ConfigDocument load_config_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(fmt::format("cannot open configuration file '{}'", path.string()));
  }
  return parse_config(in);
}

SystemConfig resolve(const ConfigDocument& doc) {
  const double s = doc.rate_scale();
  const auto mode = [s](const ConfigDocument::Mode& m) { return ModeParams{m.detuning * s, m.decay * s}; };
  const auto drive = [](const std::optional<ConfigDocument::Drive>& d) -> std::optional<SqueezeDrive> {
    if (!d) {
      return std::nullopt;
    }
    return SqueezeDrive{d->r, d->theta_deg * kDegree};
  };

  SystemConfig c;
  c.cavity1 = mode(doc.cavity1);
  c.cavity2 = mode(doc.cavity2);
  c.magnon1 = mode(doc.magnon1);
  c.magnon2 = mode(doc.magnon2);
  c.g1 = doc.g1 * s;
  c.g2 = doc.g2 * s;
  c.J = doc.J * s;
  c.drive1 = drive(doc.drive1);
  c.drive2 = drive(doc.drive2);
  c.bath.temperature = doc.temperature_mk * 1e-3;
  c.bath.carrier_frequency = doc.carrier_frequency_ghz * constants::two_pi * 1e9;
  validate(c);
  return c;
}

SystemConfig load_config(const std::filesystem::path& path) { return resolve(load_config_document(path)); }

std::string format_config(const ConfigDocument& doc) {
  std::string out;
  const auto line = [&out](std::string_view text) {
    out += text;
    out += '\n';
  };
  line("[units]");
  line(doc.rate_unit == RateUnit::hz ? "rate_unit = \"Hz\"" : "rate_unit = \"kappa_a\"");
  if (doc.kappa_a_hz) {
    line(fmt::format("kappa_a_Hz = {}", number(*doc.kappa_a_hz)));
  }
  const auto mode = [&](std::string_view name, const ConfigDocument::Mode& m) {
    line(fmt::format("[{}]", name));
    line(fmt::format("detuning = {}", number(m.detuning)));
    line(fmt::format("decay = {}", number(m.decay)));
  };
  mode("cavity1", doc.cavity1);
  mode("cavity2", doc.cavity2);
  mode("magnon1", doc.magnon1);
  mode("magnon2", doc.magnon2);
  line("[coupling]");
  line(fmt::format("g1 = {}", number(doc.g1)));
  line(fmt::format("g2 = {}", number(doc.g2)));
  line(fmt::format("J = {}", number(doc.J)));
  const auto drive = [&](std::string_view name, const std::optional<ConfigDocument::Drive>& d) {
    if (!d) {
      return;
    }
    line(fmt::format("[{}]", name));
    line(fmt::format("r = {}", number(d->r)));
    line(fmt::format("theta_deg = {}", number(d->theta_deg)));
  };
  drive("drive1", doc.drive1);
  drive("drive2", doc.drive2);
  line("[bath]");
  line(fmt::format("temperature_mK = {}", number(doc.temperature_mk)));
  line(fmt::format("carrier_frequency_GHz = {}", number(doc.carrier_frequency_ghz)));
  return out;
}

std::string describe(const SystemConfig& c) {
  std::string out;
  const auto mode = [&out](std::string_view name, const ModeParams& m) {
    out += fmt::format("{}.detuning = {:.17g} rad/s\n{}.decay = {:.17g} rad/s\n", name, m.detuning, name, m.decay);
  };
  mode("cavity1", c.cavity1);
  mode("cavity2", c.cavity2);
  mode("magnon1", c.magnon1);
  mode("magnon2", c.magnon2);
  out += fmt::format("coupling.g1 = {:.17g} rad/s\ncoupling.g2 = {:.17g} rad/s\ncoupling.J = {:.17g} rad/s\n", c.g1,
                     c.g2, c.J);
  const auto drive = [&out](std::string_view name, const std::optional<SqueezeDrive>& d) {
    if (d) {
      out += fmt::format("{}.r = {:.17g}\n{}.theta = {:.17g} rad\n", name, d->r, name, d->theta);
    } else {
      out += fmt::format("{} = absent (thermal input)\n", name);
    }
  };
  drive("drive1", c.drive1);
  drive("drive2", c.drive2);
  out += fmt::format("bath.temperature = {:.17g} K\nbath.carrier_frequency = {:.17g} rad/s\n", c.bath.temperature,
                     c.bath.carrier_frequency);
  return out;
}

FileParameter file_parameter(Parameter parameter, const ConfigDocument& doc) {
  const double rate = doc.rate_scale();
  switch (parameter) {
    case Parameter::drive1_theta: return {parameter, "drive1.theta_deg", kDegree};
    case Parameter::drive2_theta: return {parameter, "drive2.theta_deg", kDegree};
    case Parameter::drive1_r:
    case Parameter::drive2_r: return {parameter, std::string(parameter_path(parameter)), 1.0};
    case Parameter::bath_temperature: return {parameter, "bath.temperature_mK", 1e-3};
    case Parameter::bath_carrier_frequency: return {parameter, "bath.carrier_frequency_GHz", constants::two_pi * 1e9};
    default: return {parameter, std::string(parameter_path(parameter)), rate};
  }
}

FileParameter parse_file_parameter(std::string_view key, const ConfigDocument& doc) {
  static constexpr Parameter kAll[] = {
      Parameter::cavity1_detuning, Parameter::cavity1_decay,   Parameter::cavity2_detuning,
      Parameter::cavity2_decay,    Parameter::magnon1_detuning, Parameter::magnon1_decay,
      Parameter::magnon2_detuning, Parameter::magnon2_decay,   Parameter::coupling_g1,
      Parameter::coupling_g2,      Parameter::coupling_J,      Parameter::drive1_r,
      Parameter::drive1_theta,     Parameter::drive2_r,        Parameter::drive2_theta,
      Parameter::bath_temperature, Parameter::bath_carrier_frequency,
  };
  std::vector<std::string> valid;
  for (const Parameter p : kAll) {
    FileParameter fp = file_parameter(p, doc);
    if (fp.key == key) {
      return fp;
    }
    valid.push_back(std::move(fp.key));
  }
  throw ConfigError(fmt::format("unknown parameter '{}' (expected one of: {})", key, fmt::join(valid, ", ")));
}

}  // namespace magnon
