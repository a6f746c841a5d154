#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "cli_config.hpp"
#include "cli_output.hpp"
#include "commands.hpp"

namespace sc = specsmooth::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSelfCheck = 3;

void apply_thread_env() {
  const char* env = std::getenv("SPECSMOOTH_THREADS");
  if (!env || !*env) return;
  const std::string text(env);
  int threads = 0;
  try {
    std::size_t used = 0;
    threads = std::stoi(text, &used);
    if (used != text.size() || threads < 0) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw sc::ConfigError("SPECSMOOTH_THREADS must be a non-negative integer, got '" + text + "'");
  }
  ss_set_thread_count(threads);
}

int exit_code_for(ss_status status) {
  switch (status) {
    case SS_ERR_INVALID_ARGUMENT:
    case SS_ERR_INVALID_STATE:
      return kExitConfig;
    case SS_ERR_NUMERICAL_FAILURE:
      return kExitSelfCheck;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral smoothing experiments for 1D Schroedinger operators"};
  app.set_version_flag("--version", std::string(ss_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";

  const std::vector<std::pair<std::string, std::string>> commands{
      {"eigen", "Lowest eigenpairs, residuals and grid convergence"},
      {"decay", "Weighted eigenfunction decay and spectral gaps"},
      {"smoothing", "Best smoothing constant and quadrature self-check"},
      {"equivalence", "Compare the entire-part smoothing constant with the bin supremum"},
      {"free", "Free Laplacian projector kernels and uniform bound"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Config file (INI)")->required();
    sub->add_option("--out", out_dir, "Output directory");
  }
  auto* theta = app.add_subcommand("theta", "Exponent theta(q, k)");
  std::vector<std::string> theta_args;
  std::string theta_out;
  theta->add_option("--config", config_path, "Config file (INI)");
  theta->add_option("--out", theta_out, "Output directory for theta.json");
  theta->add_option("args", theta_args, "q k [eta]; q may be 'inf'")->expected(0, 3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    apply_thread_env();

    if (command == "theta") {
      sc::ThetaArgs args;
      std::uint64_t hash = 0;
      if (!theta_args.empty()) {
        if (!config_path.empty()) throw sc::ConfigError("theta: give either --config or positional q k [eta]");
        if (theta_args.size() < 2) throw sc::ConfigError("theta: expected q k [eta]");
        args.q = sc::parse_double(theta_args[0], "q");
        args.k = sc::parse_double(theta_args[1], "k");
        if (theta_args.size() == 3) args.eta = sc::parse_double(theta_args[2], "eta");
        std::string joined;
        for (const auto& a : theta_args) joined += a + "\n";
        hash = sc::fnv1a(joined);
      } else {
        if (config_path.empty()) throw sc::ConfigError("theta: expected --config or positional q k [eta]");
        const auto config = sc::load_config(config_path);
        auto section = sc::command_section(config, "theta");
        args = sc::read_theta(section);
        hash = config.hash;
      }
      const double value = sc::cmd_theta(args);
      std::printf("%.17g\n", value);
      if (!theta_out.empty()) {
        std::filesystem::create_directories(theta_out);
        sc::Report report;
        report.command = "theta";
        report.config_hash = hash;
        report.out_dir = theta_out;
        report.results = {{"q", std::isinf(args.q) ? sc::Json("inf") : sc::Json(args.q)},
                          {"k", args.k},
                          {"eta", args.eta ? sc::Json(*args.eta) : sc::Json(nullptr)},
                          {"theta", value}};
        report.write_summary();
      }
      return kExitOk;
    }

    const auto config = sc::load_config(config_path);
    auto section = sc::command_section(config, command);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw sc::OutputError("cannot create output directory '" + out_dir + "': " + ec.message());

    sc::Report report;
    report.command = command;
    report.config_hash = config.hash;
    report.out_dir = out_dir;

    if (command == "eigen") sc::cmd_eigen(section, report);
    else if (command == "decay") sc::cmd_decay(section, report);
    else if (command == "smoothing") sc::cmd_smoothing(section, report);
    else if (command == "equivalence") sc::cmd_equivalence(section, report);
    else if (command == "free") sc::cmd_free(section, report);

    report.write_summary();
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << command << ": wrote";
    for (const auto& f : report.files) std::cout << ' ' << f;
    std::cout << ' ' << command << ".json to " << out_dir << '\n';
    return kExitOk;
  } catch (const sc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sc::OutputError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sc::SelfCheckFailure& e) {
    std::cerr << "self-check failed: " << e.what() << '\n';
    return kExitSelfCheck;
  } catch (const sc::LibraryError& e) {
    std::cerr << ss_status_name(e.status()) << ": " << e.what() << '\n';
    return exit_code_for(e.status());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
