#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace specsmooth::cli {

namespace {

constexpr double kSqrtTwoPi = 2.5066282746310002;

ss_potential_spec potential_spec(const SystemConfig& c) {
  ss_potential_spec p{};
  p.kind = c.potential;
  p.k = c.k;
  p.m = c.m;
  return p;
}

ss_weight_spec weight_spec(const WeightConfig& w) {
  ss_weight_spec s{};
  s.kind = w.kind;
  s.a = w.a;
  s.b = w.b;
  s.nu = w.nu;
  return s;
}

struct System {
  GridPtr grid;
  HamiltonianPtr hamiltonian;
  EigenPtr eig;
  std::vector<double> lambdas_sq;
  std::size_t grid_size = 0;
};

GridPtr make_grid(double half_width, double spacing) {
  ss_grid* g = nullptr;
  check(ss_grid_create_spacing(half_width, spacing, &g));
  return GridPtr(g);
}

void collect_eigen_warnings(const ss_eigensystem* eig, Report& r) {
  for (std::size_t i = 0; i < ss_eigen_warning_count(eig); ++i) r.warn(ss_eigen_warning(eig, i));
}

void collect_index_warnings(const ss_projector_index* index, Report& r) {
  for (std::size_t i = 0; i < ss_projector_warning_count(index); ++i) r.warn(ss_projector_warning(index, i));
}

System solve(const SystemConfig& c, Report& r) {
  System s;
  s.grid = make_grid(c.half_width, c.spacing);
  s.grid_size = ss_grid_size(s.grid.get());
  if (c.count > s.grid_size) {
    throw ConfigError("count = " + std::to_string(c.count) + " exceeds the " + std::to_string(s.grid_size) +
                      " grid points; refine 'spacing' or lower 'count'");
  }
  const auto spec = potential_spec(c);
  ss_hamiltonian* h = nullptr;
  check(ss_hamiltonian_create(&spec, s.grid.get(), &h));
  s.hamiltonian.reset(h);
  ss_eigensystem* e = nullptr;
  if (c.harmonic_reference) {
    check(ss_eigen_harmonic_reference(s.grid.get(), c.count, &e));
  } else {
    check(ss_eigen_lowest(h, c.count, &e));
  }
  s.eig.reset(e);
  s.lambdas_sq.resize(c.count);
  check(ss_eigen_values(e, s.lambdas_sq.data(), c.count));
  collect_eigen_warnings(e, r);
  return s;
}

std::vector<double> sample_weight(const WeightConfig& w, const ss_grid* grid) {
  const auto spec = weight_spec(w);
  std::vector<double> psi(ss_grid_size(grid));
  check(ss_sample_weight(&spec, grid, psi.data(), psi.size()));
  return psi;
}

IndexPtr make_index(const ss_eigensystem* eig, Report& r) {
  ss_projector_index* idx = nullptr;
  check(ss_projector_index_create(eig, &idx));
  collect_index_warnings(idx, r);
  return IndexPtr(idx);
}

// Interleaved (re, im) coefficients, complex normal entries on the first `active` modes.
std::vector<double> random_coefficients(std::size_t count, std::size_t active, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> c(2 * count, 0.0);
  for (std::size_t n = 0; n < std::min(count, active); ++n) {
    c[2 * n] = dist(rng);
    c[2 * n + 1] = dist(rng);
  }
  return c;
}

ss_dynamics parse_dynamics(Section& s) {
  const std::string v = s.get_string("dynamics", std::string("H"));
  if (v == "H") return SS_DYNAMICS_H;
  if (v == "A") return SS_DYNAMICS_A;
  throw ConfigError("[" + s.name() + "] key 'dynamics': expected H or A, got '" + v + "'");
}

ss_bracket parse_bracket(Section& s) {
  const std::string v = s.get_string("bracket", std::string("H"));
  if (v == "H") return SS_BRACKET_H;
  if (v == "A") return SS_BRACKET_A;
  throw ConfigError("[" + s.name() + "] key 'bracket': expected H or A, got '" + v + "'");
}

Json system_json(const SystemConfig& c, std::size_t grid_size) {
  Json j;
  j["potential"] = c.potential_name;
  j["k"] = c.k;
  j["m"] = c.m;
  j["half_width"] = c.half_width;
  j["spacing"] = c.spacing;
  j["grid_points"] = grid_size;
  j["count"] = c.count;
  j["solver"] = c.harmonic_reference ? "harmonic_reference" : "finite_difference";
  return j;
}

Json weight_json(const WeightConfig& w) {
  Json j;
  j["kind"] = w.name;
  if (w.kind == SS_WEIGHT_INDICATOR) {
    j["a"] = w.a;
    j["b"] = w.b;
  } else if (w.kind == SS_WEIGHT_INVERSE_POWER) {
    j["nu"] = w.nu;
  }
  return j;
}

struct BinNorms {
  std::vector<std::int64_t> labels;
  std::vector<std::size_t> sizes;
  std::vector<double> norms;
};

BinNorms bin_norms(const ss_projector_index* idx, const std::vector<double>& bin_values) {
  BinNorms b;
  const std::size_t bins = ss_projector_bin_count(idx);
  for (std::size_t i = 0; i < bins; ++i) {
    std::int64_t label = 0;
    std::size_t size = 0;
    check(ss_projector_bin(idx, i, &label, nullptr, 0, &size));
    b.labels.push_back(label);
    b.sizes.push_back(size);
    b.norms.push_back(bin_values[i]);
  }
  return b;
}

}  // namespace

void cmd_eigen(Section& s, Report& r) {
  const auto cfg = read_system(s);
  const auto spacings = s.get_double_list("convergence_spacings", std::vector<double>{});
  const bool check_assumption = s.has("x0");
  const double x0 = s.get_double("x0", 0.0);
  s.reject_unknown();
  if (!spacings.empty() && spacings.size() < 3) {
    throw ConfigError("[eigen] key 'convergence_spacings' needs at least three spacings");
  }

  auto sys = solve(cfg, r);
  std::vector<double> residuals(cfg.count);
  check(ss_eigen_residuals(sys.eig.get(), residuals.data(), cfg.count));
  double max_residual = 0.0;
  check(ss_residual_check(sys.hamiltonian.get(), sys.eig.get(), &max_residual));
  double deviation = 0.0;
  check(ss_entire_part_deviation(sys.eig.get(), &deviation));

  {
    CsvWriter csv(r.file("eigen.csv"), {"n", "lambda_sq", "residual"});
    for (std::size_t n = 0; n < cfg.count; ++n) {
      csv.row({static_cast<std::int64_t>(n + 1), sys.lambdas_sq[n], residuals[n]});
    }
  }

  Json res;
  res["system"] = system_json(cfg, sys.grid_size);
  res["lambda_sq_min"] = sys.lambdas_sq.front();
  res["lambda_sq_max"] = sys.lambdas_sq.back();
  res["max_residual"] = max_residual;
  res["entire_part_deviation"] = deviation;
  if (cfg.potential == SS_POTENTIAL_HARMONIC) {
    double worst = 0.0;
    for (std::size_t n = 0; n < cfg.count; ++n) {
      const double exact = 2.0 * static_cast<double>(n) + 1.0;
      worst = std::max(worst, std::abs(sys.lambdas_sq[n] - exact) / exact);
    }
    res["max_relative_error_vs_odd_integers"] = worst;
  }

  if (!spacings.empty()) {
    const auto spec = potential_spec(cfg);
    std::vector<double> values(spacings.size() * cfg.count);
    std::vector<double> orders(cfg.count);
    check(ss_convergence_table(&spec, cfg.half_width, spacings.data(), spacings.size(), cfg.count, values.data(),
                               orders.data()));
    std::vector<std::string> header{"n"};
    for (std::size_t i = 0; i < spacings.size(); ++i) header.push_back("lambda_sq_h" + std::to_string(i + 1));
    header.push_back("observed_order");
    CsvWriter csv(r.file("convergence.csv"), header);
    for (std::size_t n = 0; n < cfg.count; ++n) {
      std::vector<Cell> row{static_cast<std::int64_t>(n + 1)};
      for (std::size_t i = 0; i < spacings.size(); ++i) row.emplace_back(values[i * cfg.count + n]);
      row.emplace_back(orders[n]);
      csv.row(row);
    }
    res["convergence_spacings"] = spacings;
    const auto [lo, hi] = std::minmax_element(orders.begin(), orders.end());
    res["observed_order_min"] = *lo;
    res["observed_order_max"] = *hi;
  }

  if (check_assumption) {
    const auto spec = potential_spec(cfg);
    ss_assumption_report a{};
    check(ss_check_assumption(&spec, x0, sys.grid.get(), &a));
    Json j;
    j["x0"] = a.x0;
    j["points_checked"] = a.points_checked;
    j["inf_log_derivative_ratio"] = a.inf_log_derivative_ratio;
    j["min_second_derivative"] = a.min_second_derivative;
    j["min_sandwich_ratio"] = a.min_sandwich_ratio;
    j["max_sandwich_ratio"] = a.max_sandwich_ratio;
    j["max_first_symbol_ratio"] = a.max_first_symbol_ratio;
    j["max_second_symbol_ratio"] = a.max_second_symbol_ratio;
    j["growth_condition"] = a.growth_condition != 0;
    j["convexity_condition"] = a.convexity_condition != 0;
    j["passes"] = a.passes != 0;
    res["assumption"] = j;
  }
  r.results = res;
}

void cmd_decay(Section& s, Report& r) {
  const auto cfg = read_system(s);
  const auto weight = read_weight(s);
  const std::size_t fit_lo = s.get_size("fit_lo", cfg.count / 4 + 1);
  const std::size_t fit_hi = s.get_size("fit_hi", cfg.count);
  const double gap_m = s.get_double("gap_m", cfg.m);
  s.reject_unknown();
  if (fit_lo < 1 || fit_hi > cfg.count || fit_lo > fit_hi) {
    throw ConfigError("[decay] fit range [" + std::to_string(fit_lo) + ", " + std::to_string(fit_hi) +
                      "] is empty or outside modes 1.." + std::to_string(cfg.count));
  }
  if (fit_hi - fit_lo < 10) {
    throw ConfigError("[decay] fit range [" + std::to_string(fit_lo) + ", " + std::to_string(fit_hi) +
                      "] must span at least 10 modes");
  }

  auto sys = solve(cfg, r);
  const auto psi = sample_weight(weight, sys.grid.get());
  auto idx = make_index(sys.eig.get(), r);
  std::vector<double> norms(cfg.count);
  std::vector<double> bin_values(ss_projector_bin_count(idx.get()));
  check(ss_weighted_decay(sys.eig.get(), psi.data(), psi.size(), idx.get(), norms.data(), bin_values.data()));
  std::vector<double> lambdas(cfg.count);
  for (std::size_t n = 0; n < cfg.count; ++n) lambdas[n] = std::sqrt(sys.lambdas_sq[n]);

  ss_decay_fit fit{};
  check(ss_fit_decay_exponent(lambdas.data(), norms.data(), cfg.count, fit_lo, fit_hi, &fit));
  if (fit.excluded_zero_norms > 0) {
    r.warn(std::to_string(fit.excluded_zero_norms) + " zero weighted norms excluded from the fit");
  }

  ss_gap_summary gaps{};
  const std::size_t n_gaps = cfg.count > 0 ? cfg.count - 1 : 0;
  std::vector<double> gap_values(n_gaps), ratios(n_gaps);
  std::vector<int> distinct(n_gaps);
  check(ss_gap_profile(sys.eig.get(), gap_m, &gaps, gap_values.data(), ratios.data(), distinct.data()));

  {
    CsvWriter csv(r.file("decay_modes.csv"), {"n", "lambda", "weighted_norm", "bin"});
    for (std::size_t n = 0; n < cfg.count; ++n) {
      csv.row({static_cast<std::int64_t>(n + 1), lambdas[n], norms[n],
               static_cast<std::int64_t>(std::floor(sys.lambdas_sq[n]))});
    }
  }
  const auto bins = bin_norms(idx.get(), bin_values);
  {
    CsvWriter csv(r.file("decay_bins.csv"), {"bin", "size", "operator_norm"});
    for (std::size_t i = 0; i < bins.labels.size(); ++i) {
      csv.row({bins.labels[i], static_cast<std::int64_t>(bins.sizes[i]), bins.norms[i]});
    }
  }
  {
    CsvWriter csv(r.file("decay_gaps.csv"), {"n", "gap", "ratio", "distinct_bins"});
    for (std::size_t n = 0; n < n_gaps; ++n) {
      csv.row({static_cast<std::int64_t>(n + 1), gap_values[n], ratios[n], static_cast<std::int64_t>(distinct[n])});
    }
  }

  Json res;
  res["system"] = system_json(cfg, sys.grid_size);
  res["weight"] = weight_json(weight);
  res["fit"] = {{"gamma_hat", fit.gamma},       {"c2_hat", fit.c2},
                {"log_residual", fit.residual}, {"n_lo", fit.n_lo},
                {"n_hi", fit.n_hi},             {"excluded_zero_norms", fit.excluded_zero_norms}};
  Json g;
  g["m"] = gap_m;
  g["inf_ratio"] = gaps.inf_ratio;
  g["singleton_from"] = gaps.has_singleton_from ? Json(gaps.singleton_from) : Json(nullptr);
  res["gaps"] = g;
  res["bin_count"] = bins.labels.size();
  r.results = res;
}

void cmd_smoothing(Section& s, Report& r) {
  const auto cfg = read_system(s);
  const auto weight = read_weight(s);
  const double gamma = s.get_double("gamma");
  const auto dynamics = parse_dynamics(s);
  const auto bracket = parse_bracket(s);
  const std::size_t panels = s.get_size("quadrature_panels", 4096);
  const double tolerance = s.get_double("quadrature_tolerance", 1e-4);
  const std::size_t test_modes = s.get_size("test_modes", 8);
  const std::int64_t seed = s.get_int("seed", 1);
  const auto trunc_values = s.get_double_list(
      "truncations", std::vector<double>{static_cast<double>(std::max<std::size_t>(2, cfg.count / 4)),
                                         static_cast<double>(std::max<std::size_t>(2, cfg.count / 2)),
                                         static_cast<double>(cfg.count)});
  s.reject_unknown();
  if (panels < 8) throw ConfigError("[smoothing] key 'quadrature_panels' must be at least 8");
  if (!(tolerance > 0.0)) throw ConfigError("[smoothing] key 'quadrature_tolerance' must be positive");
  if (test_modes == 0) throw ConfigError("[smoothing] key 'test_modes' must be at least 1");
  if (cfg.count < 2) throw ConfigError("[smoothing] key 'count' must be at least 2");
  std::vector<std::size_t> truncations;
  for (double t : trunc_values) {
    if (t != std::floor(t) || t < 2 || t > static_cast<double>(cfg.count)) {
      throw ConfigError("[smoothing] key 'truncations': entries must be integers in [2, count]");
    }
    truncations.push_back(static_cast<std::size_t>(t));
  }

  auto sys = solve(cfg, r);
  const auto psi = sample_weight(weight, sys.grid.get());

  ss_smoothing_constant c1{};
  std::vector<double> maximizer(2 * cfg.count);
  check(ss_smoothing_constant_compute(sys.eig.get(), psi.data(), psi.size(), gamma, dynamics, bracket, &c1,
                                      maximizer.data()));
  if (!c1.power_converged) r.warn("power iteration cross-check did not converge within its iteration cap");

  {
    CsvWriter csv(r.file("smoothing_truncation.csv"), {"modes", "c1", "top_eigenvalue"});
    for (std::size_t t : truncations) {
      ss_eigensystem* e = nullptr;
      check(ss_eigen_truncate(sys.eig.get(), t, &e));
      EigenPtr sub(e);
      ss_smoothing_constant ct{};
      check(ss_smoothing_constant_compute(sub.get(), psi.data(), psi.size(), gamma, dynamics, bracket, &ct, nullptr));
      csv.row({static_cast<std::int64_t>(t), ct.c1, ct.top_eigenvalue});
    }
  }

  // Self-check: quadrature against the closed form on single modes and on a
  // seeded random combination of the lowest modes.
  double worst = 0.0;
  {
    CsvWriter csv(r.file("smoothing_selfcheck.csv"), {"case", "closed_form", "quadrature", "relative_difference"});
    const std::size_t active = std::min(cfg.count, test_modes);
    auto compare = [&](const std::string& label, const std::vector<double>& coeffs) {
      double closed = 0.0;
      double quad = 0.0;
      check(ss_smoothing_closed_form(sys.eig.get(), psi.data(), psi.size(), gamma, coeffs.data(), dynamics, bracket,
                                     &closed));
      check(ss_smoothing_quadrature(sys.eig.get(), psi.data(), psi.size(), gamma, coeffs.data(), dynamics, bracket,
                                    panels, &quad));
      const double rel = closed > 0.0 ? std::abs(quad - closed) / closed : std::abs(quad);
      worst = std::max(worst, rel);
      csv.row({label, closed, quad, rel});
    };
    for (std::size_t n = 0; n < active; ++n) {
      std::vector<double> coeffs(2 * cfg.count, 0.0);
      coeffs[2 * n] = 1.0;
      compare("mode_" + std::to_string(n + 1), coeffs);
    }
    compare("random", random_coefficients(cfg.count, active, static_cast<std::uint64_t>(seed)));
  }

  Json res;
  res["system"] = system_json(cfg, sys.grid_size);
  res["weight"] = weight_json(weight);
  res["gamma"] = gamma;
  res["dynamics"] = dynamics == SS_DYNAMICS_H ? "H" : "A";
  res["bracket"] = bracket == SS_BRACKET_H ? "H" : "A";
  res["c1"] = c1.c1;
  res["top_eigenvalue"] = c1.top_eigenvalue;
  res["power_iteration"] = {{"converged", c1.power_converged != 0},
                            {"iterations", c1.power_iterations},
                            {"last_rayleigh_quotient", c1.last_rayleigh_quotient}};
  res["truncations"] = truncations;
  res["self_check"] = {{"quadrature_panels", panels},
                       {"tolerance", tolerance},
                       {"max_relative_difference", worst},
                       {"passed", worst <= tolerance}};
  r.results = res;
  if (!(worst <= tolerance)) {
    r.write_summary();
    throw SelfCheckFailure("quadrature and closed form differ by " + format_double(worst) + " (tolerance " +
                           format_double(tolerance) + ")");
  }
}

void cmd_equivalence(Section& s, Report& r) {
  const auto cfg = read_system(s);
  const auto weight = read_weight(s);
  const double gamma = s.get_double("gamma");
  const double tolerance = s.get_double("ratio_tolerance", 1e-8);
  s.reject_unknown();
  if (cfg.count < 2) throw ConfigError("[equivalence] key 'count' must be at least 2");

  auto sys = solve(cfg, r);
  const auto psi = sample_weight(weight, sys.grid.get());
  auto idx = make_index(sys.eig.get(), r);

  ss_smoothing_constant c1a{};
  check(ss_smoothing_constant_compute(sys.eig.get(), psi.data(), psi.size(), gamma, SS_DYNAMICS_A, SS_BRACKET_A, &c1a,
                                      nullptr));
  ss_smoothing_constant c1h{};
  check(ss_smoothing_constant_compute(sys.eig.get(), psi.data(), psi.size(), gamma, SS_DYNAMICS_H, SS_BRACKET_H, &c1h,
                                      nullptr));

  std::vector<double> norms(cfg.count);
  std::vector<double> bin_values(ss_projector_bin_count(idx.get()));
  check(ss_weighted_decay(sys.eig.get(), psi.data(), psi.size(), idx.get(), norms.data(), bin_values.data()));
  const auto bins = bin_norms(idx.get(), bin_values);

  double sup = 0.0;
  std::int64_t argmax = 0;
  {
    CsvWriter csv(r.file("equivalence_bins.csv"), {"bin", "size", "operator_norm", "weighted_norm"});
    for (std::size_t i = 0; i < bins.labels.size(); ++i) {
      const double bracket_n = std::sqrt(1.0 + static_cast<double>(bins.labels[i]) * static_cast<double>(bins.labels[i]));
      const double weighted = std::pow(bracket_n, gamma / 2.0) * bins.norms[i];
      if (weighted > sup) {
        sup = weighted;
        argmax = bins.labels[i];
      }
      csv.row({bins.labels[i], static_cast<std::int64_t>(bins.sizes[i]), bins.norms[i], weighted});
    }
  }
  const double bin_side = kSqrtTwoPi * sup;
  const double ratio = bin_side > 0.0 ? c1a.c1 / bin_side : (c1a.c1 == 0.0 ? 1.0 : INFINITY);

  Json res;
  res["system"] = system_json(cfg, sys.grid_size);
  res["weight"] = weight_json(weight);
  res["gamma"] = gamma;
  res["c1_A"] = c1a.c1;
  res["bin_sup"] = bin_side;
  res["bin_argmax"] = argmax;
  res["ratio"] = ratio;
  res["ratio_tolerance"] = tolerance;
  res["c1_H"] = c1h.c1;

  std::vector<double> lambdas(cfg.count);
  for (std::size_t n = 0; n < cfg.count; ++n) lambdas[n] = std::sqrt(sys.lambdas_sq[n]);
  const std::size_t lo = cfg.count / 4 + 1;
  if (cfg.count - lo >= 10) {
    ss_decay_fit fit{};
    const ss_status st = ss_fit_decay_exponent(lambdas.data(), norms.data(), cfg.count, lo, cfg.count, &fit);
    if (st == SS_OK) {
      res["decay_fit"] = {{"gamma_hat", fit.gamma}, {"c2_hat", fit.c2}, {"n_lo", fit.n_lo}, {"n_hi", fit.n_hi}};
    } else {
      r.warn(std::string("decay fit skipped: ") + ss_last_error());
      res["decay_fit"] = nullptr;
    }
  } else {
    r.warn("decay fit skipped: fewer than 11 modes above the lowest quartile");
    res["decay_fit"] = nullptr;
  }
  const bool passed = std::abs(ratio - 1.0) <= tolerance;
  res["passed"] = passed;
  r.results = res;
  if (!passed) {
    r.write_summary();
    throw SelfCheckFailure("C1 ratio " + format_double(ratio) + " differs from 1 by more than " +
                           format_double(tolerance));
  }
}

void cmd_free(Section& s, Report& r) {
  const auto bands = s.get_int_list("bands");
  const double u_min = s.get_double("u_min", -20.0);
  const double u_max = s.get_double("u_max", 20.0);
  const std::size_t u_points = s.get_size("u_points", 401);
  const double tolerance = s.get_double("tolerance", 1e-8);
  const double half_width = s.get_double("half_width", 3.0);
  const double spacing = s.get_double("spacing", 0.01);
  const auto weight = read_weight(s);
  s.reject_unknown();
  if (bands.empty()) throw ConfigError("[free] key 'bands' is empty");
  for (auto n : bands) {
    if (n < 1) throw ConfigError("[free] key 'bands': N must be >= 1, got " + std::to_string(n));
  }
  if (u_points < 2 || !(u_max > u_min)) throw ConfigError("[free] need u_points >= 2 and u_max > u_min");

  double max_diff = 0.0;
  {
    CsvWriter csv(r.file("free_kernel.csv"), {"u", "n", "closed_form", "quadrature", "abs_difference"});
    for (auto n : bands) {
      for (std::size_t i = 0; i < u_points; ++i) {
        const double u = u_min + (u_max - u_min) * static_cast<double>(i) / static_cast<double>(u_points - 1);
        double closed = 0.0;
        double quad = 0.0;
        check(ss_kernel_f(n, u, SS_KERNEL_CLOSED_FORM, &closed));
        check(ss_kernel_f(n, u, SS_KERNEL_QUADRATURE, &quad));
        const double diff = std::abs(closed - quad);
        max_diff = std::max(max_diff, diff);
        csv.row({u, n, closed, quad, diff});
      }
    }
  }

  auto grid = make_grid(half_width, spacing);
  const auto psi = sample_weight(weight, grid.get());
  std::vector<double> per_band(bands.size());
  double sup = 0.0;
  double variation = 0.0;
  check(ss_uniform_bound_check(bands.data(), bands.size(), grid.get(), psi.data(), psi.size(), per_band.data(), &sup,
                               &variation));

  Json kernel_zero = Json::object();
  bool below_half = true;
  {
    CsvWriter csv(r.file("free_bands.csv"),
                  {"n", "half_width", "centre", "kernel_at_zero", "sqrt_n_half_width", "per_band_sup"});
    for (std::size_t i = 0; i < bands.size(); ++i) {
      double c = 0.0;
      double d = 0.0;
      check(ss_band_params(bands[i], &c, &d));
      double f0 = 0.0;
      check(ss_kernel_f(bands[i], 0.0, SS_KERNEL_CLOSED_FORM, &f0));
      const double scaled = std::sqrt(static_cast<double>(bands[i])) * c;
      below_half = below_half && scaled <= 0.5;
      kernel_zero[std::to_string(bands[i])] = f0;
      csv.row({bands[i], c, d, f0, scaled, per_band[i]});
    }
  }

  Json res;
  res["bands"] = bands;
  res["weight"] = weight_json(weight);
  res["kernel_at_zero"] = kernel_zero;
  res["max_abs_difference"] = max_diff;
  res["tolerance"] = tolerance;
  res["sup"] = sup;
  res["variation"] = variation;
  res["stable_within_5_percent"] = variation <= 0.05;
  res["bounded_by_inverse_pi"] = sup <= 1.0 / std::numbers::pi;
  res["sqrt_n_half_width_at_most_half"] = below_half;
  const bool passed = max_diff <= tolerance;
  res["passed"] = passed;
  r.results = res;
  if (!passed) {
    r.write_summary();
    throw SelfCheckFailure("closed-form and quadrature kernels differ by " + format_double(max_diff));
  }
}

ThetaArgs read_theta(Section& s) {
  ThetaArgs a;
  a.q = parse_double(s.get_string("q"), "q");
  a.k = s.get_double("k");
  if (s.has("eta")) a.eta = s.get_double("eta");
  s.reject_unknown();
  return a;
}

double cmd_theta(const ThetaArgs& args) {
  double out = 0.0;
  check(ss_theta_exponent(args.q, args.k, args.eta ? 1 : 0, args.eta.value_or(0.0), &out));
  return out;
}

}  // namespace specsmooth::cli
