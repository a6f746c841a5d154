#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <specsmooth/specsmooth.h>

namespace specsmooth::cli {

// Validation problem in the config file or on the command line (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key/value view of one config section. Every key must be consumed
// through one of the getters; leftovers are reported by reject_unknown().
class Section {
 public:
  Section(std::string name, std::map<std::string, std::string> values);

  const std::string& name() const noexcept { return name_; }

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, std::optional<std::string> fallback = std::nullopt);
  double get_double(const std::string& key, std::optional<double> fallback = std::nullopt);
  std::size_t get_size(const std::string& key, std::optional<std::size_t> fallback = std::nullopt);
  std::int64_t get_int(const std::string& key, std::optional<std::int64_t> fallback = std::nullopt);
  std::vector<double> get_double_list(const std::string& key, std::optional<std::vector<double>> fallback = std::nullopt);
  std::vector<std::int64_t> get_int_list(const std::string& key);

  void reject_unknown() const;

 private:
  const std::string* lookup(const std::string& key);
  [[noreturn]] void bad_value(const std::string& key, const std::string& expected) const;

  std::string name_;
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
};

struct ConfigFile {
  std::string text;
  std::uint64_t hash = 0;
  std::map<std::string, std::map<std::string, std::string>> sections;
};

ConfigFile load_config(const std::string& path);
Section command_section(const ConfigFile& config, const std::string& command);

std::uint64_t fnv1a(const std::string& bytes);

// Shared parameter groups.
struct SystemConfig {
  ss_potential_kind potential = SS_POTENTIAL_HARMONIC;
  std::string potential_name;
  double k = 2.0;
  double m = 2.0;
  double half_width = 0.0;
  double spacing = 0.0;
  std::size_t count = 0;
  bool harmonic_reference = false;
};

struct WeightConfig {
  ss_weight_kind kind = SS_WEIGHT_CONSTANT_ONE;
  std::string name;
  double a = -1.0;
  double b = 1.0;
  double nu = 0.5;
};

SystemConfig read_system(Section& s);
WeightConfig read_weight(Section& s);
double parse_double(const std::string& text, const std::string& what);

}  // namespace specsmooth::cli
