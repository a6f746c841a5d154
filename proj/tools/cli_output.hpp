#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>
#include <specsmooth/specsmooth.h>

namespace specsmooth::cli {

using Json = nlohmann::ordered_json;

// Library call returned a non-OK status.
class LibraryError : public std::runtime_error {
 public:
  LibraryError(ss_status status, const std::string& what) : std::runtime_error(what), status_(status) {}
  ss_status status() const noexcept { return status_; }

 private:
  ss_status status_;
};

// A numerical self-check inside a command did not hold (exit code 3).
class SelfCheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(ss_status status);

struct GridDeleter {
  void operator()(ss_grid* p) const { ss_grid_destroy(p); }
};
struct HamiltonianDeleter {
  void operator()(ss_hamiltonian* p) const { ss_hamiltonian_destroy(p); }
};
struct EigenDeleter {
  void operator()(ss_eigensystem* p) const { ss_eigen_destroy(p); }
};
struct IndexDeleter {
  void operator()(ss_projector_index* p) const { ss_projector_index_destroy(p); }
};
using GridPtr = std::unique_ptr<ss_grid, GridDeleter>;
using HamiltonianPtr = std::unique_ptr<ss_hamiltonian, HamiltonianDeleter>;
using EigenPtr = std::unique_ptr<ss_eigensystem, EigenDeleter>;
using IndexPtr = std::unique_ptr<ss_projector_index, IndexDeleter>;

using Cell = std::variant<std::int64_t, std::string, double>;

std::string format_double(double x);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<Cell>& cells);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

// Collects the pieces of the JSON summary for one command.
struct Report {
  std::string command;
  std::uint64_t config_hash = 0;
  std::filesystem::path out_dir;
  Json results = Json::object();
  std::vector<std::string> warnings;
  std::vector<std::string> files;

  std::filesystem::path file(const std::string& name);
  void warn(std::string w);
  void write_summary();
};

std::string hex64(std::uint64_t v);

}  // namespace specsmooth::cli
