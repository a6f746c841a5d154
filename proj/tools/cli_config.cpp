#include "cli_config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace specsmooth::cli {

namespace {

const std::set<std::string> kCommands{"eigen", "decay", "smoothing", "equivalence", "free", "theta"};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  for (auto& p : parts) boost::trim(p);
  return parts;
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = boost::trim_copy(text);
  const std::string lower = boost::to_lower_copy(t);
  if (lower == "inf" || lower == "infinity" || lower == "+inf") return INFINITY;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || std::isnan(value)) {
    throw ConfigError(what + ": expected a number, got '" + text + "'");
  }
  return value;
}

Section::Section(std::string name, std::map<std::string, std::string> values)
    : name_(std::move(name)), values_(std::move(values)) {}

bool Section::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string* Section::lookup(const std::string& key) {
  consumed_.insert(key);
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

void Section::bad_value(const std::string& key, const std::string& expected) const {
  throw ConfigError("[" + name_ + "] key '" + key + "': expected " + expected + ", got '" + values_.at(key) + "'");
}

std::string Section::get_string(const std::string& key, std::optional<std::string> fallback) {
  if (const auto* v = lookup(key)) return boost::trim_copy(*v);
  if (fallback) return *fallback;
  throw ConfigError("[" + name_ + "] missing required key '" + key + "'");
}

double Section::get_double(const std::string& key, std::optional<double> fallback) {
  if (const auto* v = lookup(key)) {
    try {
      const double x = parse_double(*v, key);
      if (!std::isfinite(x)) bad_value(key, "a finite number");
      return x;
    } catch (const ConfigError&) {
      bad_value(key, "a finite number");
    }
  }
  if (fallback) return *fallback;
  throw ConfigError("[" + name_ + "] missing required key '" + key + "'");
}

std::int64_t Section::get_int(const std::string& key, std::optional<std::int64_t> fallback) {
  if (const auto* v = lookup(key)) {
    const std::string t = boost::trim_copy(*v);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) bad_value(key, "an integer");
    return value;
  }
  if (fallback) return *fallback;
  throw ConfigError("[" + name_ + "] missing required key '" + key + "'");
}

std::size_t Section::get_size(const std::string& key, std::optional<std::size_t> fallback) {
  const std::int64_t v = get_int(key, fallback ? std::optional<std::int64_t>(static_cast<std::int64_t>(*fallback))
                                               : std::nullopt);
  if (v < 0) bad_value(key, "a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::vector<double> Section::get_double_list(const std::string& key, std::optional<std::vector<double>> fallback) {
  if (const auto* v = lookup(key)) {
    std::vector<double> out;
    for (const auto& part : split_list(*v)) {
      try {
        out.push_back(parse_double(part, key));
      } catch (const ConfigError&) {
        bad_value(key, "a comma-separated list of numbers");
      }
    }
    return out;
  }
  if (fallback) return *fallback;
  throw ConfigError("[" + name_ + "] missing required key '" + key + "'");
}

std::vector<std::int64_t> Section::get_int_list(const std::string& key) {
  const auto* v = lookup(key);
  if (!v) throw ConfigError("[" + name_ + "] missing required key '" + key + "'");
  std::vector<std::int64_t> out;
  for (const auto& part : split_list(*v)) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      bad_value(key, "a comma-separated list of integers");
    }
    out.push_back(value);
  }
  return out;
}

void Section::reject_unknown() const {
  std::vector<std::string> unknown;
  for (const auto& [key, unused] : values_) {
    if (!consumed_.count(key)) unknown.push_back(key);
  }
  if (!unknown.empty()) {
    throw ConfigError("[" + name_ + "] unknown key" + (unknown.size() > 1 ? "s " : " ") + "'" +
                      boost::join(unknown, "', '") + "'");
  }
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();

  ConfigFile config;
  config.text = buffer.str();
  config.hash = fnv1a(config.text);

  boost::property_tree::ptree tree;
  try {
    std::istringstream stream(config.text);
    boost::property_tree::ini_parser::read_ini(stream, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("malformed config '" + path + "': " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [name, child] : tree) {
    if (child.empty()) throw ConfigError("key '" + name + "' appears outside any [section]");
    if (!kCommands.count(name)) throw ConfigError("unknown section [" + name + "]");
    auto& section = config.sections[name];
    for (const auto& [key, value] : child) section[key] = value.data();
  }
  return config;
}

Section command_section(const ConfigFile& config, const std::string& command) {
  const auto it = config.sections.find(command);
  if (it == config.sections.end()) throw ConfigError("config has no [" + command + "] section");
  return Section(command, it->second);
}

SystemConfig read_system(Section& s) {
  SystemConfig c;
  c.potential_name = s.get_string("potential");
  if (c.potential_name == "harmonic") {
    c.potential = SS_POTENTIAL_HARMONIC;
    c.k = 2.0;
    c.m = s.get_double("m", 2.0);
  } else if (c.potential_name == "bracket_power") {
    c.potential = SS_POTENTIAL_BRACKET_POWER;
    c.k = s.get_double("k");
    c.m = s.get_double("m", c.k);
  } else if (c.potential_name == "zero") {
    c.potential = SS_POTENTIAL_ZERO;
    c.k = 0.0;
    c.m = s.get_double("m", 2.0);
  } else {
    throw ConfigError("[" + s.name() + "] key 'potential': expected harmonic, bracket_power or zero, got '" +
                      c.potential_name + "'");
  }
  c.half_width = s.get_double("half_width");
  c.spacing = s.get_double("spacing");
  c.count = s.get_size("count");
  const std::string solver = s.get_string("solver", std::string("finite_difference"));
  if (solver == "harmonic_reference") {
    if (c.potential != SS_POTENTIAL_HARMONIC) {
      throw ConfigError("[" + s.name() + "] key 'solver': harmonic_reference requires potential = harmonic");
    }
    c.harmonic_reference = true;
  } else if (solver != "finite_difference") {
    throw ConfigError("[" + s.name() + "] key 'solver': expected finite_difference or harmonic_reference, got '" +
                      solver + "'");
  }
  if (!(c.half_width > 0.0)) throw ConfigError("[" + s.name() + "] key 'half_width' must be positive");
  if (!(c.spacing > 0.0)) throw ConfigError("[" + s.name() + "] key 'spacing' must be positive");
  if (c.count == 0) throw ConfigError("[" + s.name() + "] key 'count' must be at least 1");
  return c;
}

WeightConfig read_weight(Section& s) {
  WeightConfig w;
  w.name = s.get_string("weight");
  if (w.name == "constant_one") {
    w.kind = SS_WEIGHT_CONSTANT_ONE;
  } else if (w.name == "indicator") {
    w.kind = SS_WEIGHT_INDICATOR;
    w.a = s.get_double("weight_a", -1.0);
    w.b = s.get_double("weight_b", 1.0);
  } else if (w.name == "inverse_power") {
    w.kind = SS_WEIGHT_INVERSE_POWER;
    w.nu = s.get_double("weight_nu");
  } else {
    throw ConfigError("[" + s.name() + "] key 'weight': expected constant_one, indicator or inverse_power, got '" +
                      w.name + "'");
  }
  return w;
}

}  // namespace specsmooth::cli
