#include "cli_output.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>

namespace specsmooth::cli {

void check(ss_status status) {
  if (status != SS_OK) throw LibraryError(status, ss_last_error());
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw OutputError("cannot write '" + path.string() + "'");
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            out_ << format_double(v);
          } else {
            out_ << v;
          }
        },
        cells[i]);
  }
  out_ << '\n';
  if (!out_) throw OutputError("write failed for '" + path_.string() + "'");
}

std::filesystem::path Report::file(const std::string& name) {
  files.push_back(name);
  return out_dir / name;
}

void Report::warn(std::string w) {
  if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(std::move(w));
}

void Report::write_summary() {
  Json j;
  j["command"] = command;
  j["config_hash"] = hex64(config_hash);
  j["results"] = results;
  j["warnings"] = warnings;
  j["version"] = ss_version();
  const auto path = out_dir / (command + ".json");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw OutputError("write failed for '" + path.string() + "'");
}

}  // namespace specsmooth::cli
