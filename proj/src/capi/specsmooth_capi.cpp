#include "specsmooth/specsmooth.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/free_laplacian.hpp"
#include "core/operator_builder.hpp"
#include "core/parallel.hpp"
#include "core/smoothing_functional.hpp"
#include "core/spectral_projectors.hpp"
#include "core/tridiag_eig.hpp"

namespace ss = specsmooth;

struct ss_grid {
  ss::Grid grid;
};
struct ss_hamiltonian {
  ss::TridiagonalHamiltonian h;
};
struct ss_eigensystem {
  ss::EigenSystem eig;
};
struct ss_projector_index {
  ss::ProjectorIndex index;
};

namespace {

thread_local std::string g_last_error;

ss_status fail(ss_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
ss_status guarded(F&& body) {
  try {
    body();
    return SS_OK;
  } catch (const ss::Error& e) {
    switch (e.code()) {
      case ss::ErrorCode::invalid_argument:
        return fail(SS_ERR_INVALID_ARGUMENT, e.what());
      case ss::ErrorCode::invalid_state:
        return fail(SS_ERR_INVALID_STATE, e.what());
      case ss::ErrorCode::numerical_failure:
        return fail(SS_ERR_NUMERICAL_FAILURE, e.what());
    }
    return fail(SS_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SS_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(SS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SS_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ss::InvalidArgument(what);
}

template <typename T>
void require_non_null(const T* p, const char* name) {
  if (p == nullptr) throw ss::InvalidArgument(std::string(name) + " must not be NULL");
}

ss::PotentialSpec to_core(const ss_potential_spec* spec) {
  require_non_null(spec, "potential spec");
  switch (spec->kind) {
    case SS_POTENTIAL_HARMONIC:
      return ss::PotentialSpec::harmonic(spec->m);
    case SS_POTENTIAL_BRACKET_POWER:
      return ss::PotentialSpec::bracket_power(spec->k, spec->m);
    case SS_POTENTIAL_ZERO:
      return ss::PotentialSpec::zero();
    case SS_POTENTIAL_CUSTOM:
      require(spec->samples != nullptr || spec->n_samples == 0, "custom potential samples are NULL");
      return ss::PotentialSpec::custom({spec->samples, spec->samples + spec->n_samples}, spec->k, spec->m);
  }
  throw ss::InvalidArgument("unknown potential kind");
}

ss::WeightSpec to_core(const ss_weight_spec* spec) {
  require_non_null(spec, "weight spec");
  switch (spec->kind) {
    case SS_WEIGHT_CONSTANT_ONE:
      return ss::WeightSpec::constant_one();
    case SS_WEIGHT_INDICATOR:
      return ss::WeightSpec::indicator(spec->a, spec->b);
    case SS_WEIGHT_INVERSE_POWER:
      return ss::WeightSpec::inverse_power(spec->nu);
    case SS_WEIGHT_CUSTOM:
      require(spec->samples != nullptr || spec->n_samples == 0, "custom weight samples are NULL");
      return ss::WeightSpec::custom({spec->samples, spec->samples + spec->n_samples});
  }
  throw ss::InvalidArgument("unknown weight kind");
}

ss::Coefficients read_coefficients(const double* data, std::size_t count) {
  require_non_null(data, "coefficients");
  ss::Coefficients c(count);
  for (std::size_t n = 0; n < count; ++n) c[n] = {data[2 * n], data[2 * n + 1]};
  return c;
}

void write_coefficients(const ss::Coefficients& c, double* out) {
  for (std::size_t n = 0; n < c.size(); ++n) {
    out[2 * n] = c[n].real();
    out[2 * n + 1] = c[n].imag();
  }
}

std::span<const double> weight_span(const ss_eigensystem* eig, const double* psi, std::size_t len) {
  require_non_null(psi, "psi");
  require(len == eig->eig.grid_size(), "psi length does not match the grid");
  return {psi, len};
}

void copy_out(std::span<const double> src, double* out, std::size_t len) {
  require_non_null(out, "output buffer");
  require(len >= src.size(), "output buffer too small");
  std::copy(src.begin(), src.end(), out);
}

ss::Dynamics to_core(ss_dynamics d) { return d == SS_DYNAMICS_A ? ss::Dynamics::A : ss::Dynamics::H; }
ss::Bracket to_core(ss_bracket b) { return b == SS_BRACKET_A ? ss::Bracket::A : ss::Bracket::H; }

}  // namespace

extern "C" {

const char* ss_last_error(void) { return g_last_error.c_str(); }

const char* ss_status_name(ss_status status) {
  switch (status) {
    case SS_OK:
      return "ok";
    case SS_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case SS_ERR_INVALID_STATE:
      return "invalid-state";
    case SS_ERR_NUMERICAL_FAILURE:
      return "numerical-failure";
    case SS_ERR_OUT_OF_MEMORY:
      return "out-of-memory";
    case SS_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* ss_version(void) { return "0.1.0"; }

void ss_set_thread_count(int threads) { ss::set_thread_limit(threads); }
int ss_get_thread_count(void) { return ss::thread_limit(); }

// ---- grids ----------------------------------------------------------------

ss_status ss_grid_create(double half_width, size_t n_points, ss_grid** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = new ss_grid{ss::build_grid(half_width, n_points)};
  });
}

ss_status ss_grid_create_spacing(double half_width, double spacing, ss_grid** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = new ss_grid{ss::build_grid(half_width, ss::points_for_spacing(half_width, spacing))};
  });
}

void ss_grid_destroy(ss_grid* grid) { delete grid; }
size_t ss_grid_size(const ss_grid* grid) { return grid ? grid->grid.size() : 0; }
double ss_grid_spacing(const ss_grid* grid) { return grid ? grid->grid.spacing() : 0.0; }

ss_status ss_grid_points(const ss_grid* grid, double* out, size_t len) {
  return guarded([&] {
    require_non_null(grid, "grid");
    copy_out(grid->grid.points(), out, len);
  });
}

ss_status ss_sample_potential(const ss_potential_spec* spec, const ss_grid* grid, double* out, size_t len) {
  return guarded([&] {
    require_non_null(grid, "grid");
    copy_out(ss::sample_potential(to_core(spec), grid->grid), out, len);
  });
}

ss_status ss_sample_weight(const ss_weight_spec* spec, const ss_grid* grid, double* out, size_t len) {
  return guarded([&] {
    require_non_null(grid, "grid");
    copy_out(ss::sample_weight(to_core(spec), grid->grid), out, len);
  });
}

ss_status ss_check_assumption(const ss_potential_spec* spec, double x0, const ss_grid* grid,
                              ss_assumption_report* out) {
  return guarded([&] {
    require_non_null(grid, "grid");
    require_non_null(out, "out");
    const auto r = ss::check_assumption(to_core(spec), x0, grid->grid);
    *out = {r.x0,
            r.points_checked,
            r.inf_log_derivative_ratio,
            r.min_second_derivative,
            r.min_sandwich_ratio,
            r.max_sandwich_ratio,
            r.max_first_symbol_ratio,
            r.max_second_symbol_ratio,
            r.analytic_derivatives,
            r.growth_condition,
            r.convexity_condition,
            r.passes};
  });
}

// ---- Hamiltonian / eigensystems ----------------------------------------------

ss_status ss_hamiltonian_create(const ss_potential_spec* spec, const ss_grid* grid, ss_hamiltonian** out) {
  return guarded([&] {
    require_non_null(grid, "grid");
    require_non_null(out, "out");
    *out = new ss_hamiltonian{ss::assemble_hamiltonian(to_core(spec), grid->grid)};
  });
}

void ss_hamiltonian_destroy(ss_hamiltonian* h) { delete h; }

ss_status ss_hamiltonian_diagonal(const ss_hamiltonian* h, double* out, size_t len) {
  return guarded([&] {
    require_non_null(h, "hamiltonian");
    copy_out(h->h.matrix.diagonal, out, len);
  });
}

double ss_hamiltonian_off_diagonal(const ss_hamiltonian* h) {
  return h && !h->h.matrix.off_diagonal.empty() ? h->h.matrix.off_diagonal.front() : 0.0;
}

size_t ss_hamiltonian_count_below(const ss_hamiltonian* h, double sigma) {
  return h ? h->h.matrix.count_below(sigma) : 0;
}

ss_status ss_eigen_lowest(const ss_hamiltonian* h, size_t count, ss_eigensystem** out) {
  return guarded([&] {
    require_non_null(h, "hamiltonian");
    require_non_null(out, "out");
    *out = new ss_eigensystem{ss::eigen_lowest(h->h, count)};
  });
}

ss_status ss_eigen_harmonic_reference(const ss_grid* grid, size_t count, ss_eigensystem** out) {
  return guarded([&] {
    require_non_null(grid, "grid");
    require_non_null(out, "out");
    *out = new ss_eigensystem{ss::harmonic_reference(grid->grid, count)};
  });
}

ss_status ss_eigen_truncate(const ss_eigensystem* eig, size_t count, ss_eigensystem** out) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    require_non_null(out, "out");
    if (count == 0) throw ss::InvalidArgument("truncation count must be positive");
    *out = new ss_eigensystem{eig->eig.truncated(count)};
  });
}

void ss_eigen_destroy(ss_eigensystem* eig) { delete eig; }
size_t ss_eigen_count(const ss_eigensystem* eig) { return eig ? eig->eig.count() : 0; }
size_t ss_eigen_grid_size(const ss_eigensystem* eig) { return eig ? eig->eig.grid_size() : 0; }

ss_status ss_eigen_values(const ss_eigensystem* eig, double* out, size_t len) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    copy_out(eig->eig.lambdas_sq(), out, len);
  });
}

ss_status ss_eigen_vector(const ss_eigensystem* eig, size_t n, double* out, size_t len) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    require(n < eig->eig.count(), "mode index out of range");
    copy_out(eig->eig.vector(n), out, len);
  });
}

ss_status ss_eigen_residuals(const ss_eigensystem* eig, double* out, size_t len) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    copy_out(eig->eig.residuals(), out, len);
  });
}

size_t ss_eigen_warning_count(const ss_eigensystem* eig) { return eig ? eig->eig.warnings().size() : 0; }

const char* ss_eigen_warning(const ss_eigensystem* eig, size_t i) {
  if (!eig || i >= eig->eig.warnings().size()) return nullptr;
  return eig->eig.warnings()[i].c_str();
}

ss_status ss_residual_check(const ss_hamiltonian* h, const ss_eigensystem* eig, double* out) {
  return guarded([&] {
    require_non_null(h, "hamiltonian");
    require_non_null(eig, "eigensystem");
    require_non_null(out, "out");
    *out = ss::residual_check(h->h, eig->eig);
  });
}

ss_status ss_convergence_table(const ss_potential_spec* spec, double half_width, const double* spacings,
                               size_t n_spacings, size_t count, double* values_out, double* order_out) {
  return guarded([&] {
    require_non_null(spacings, "spacings");
    const auto table = ss::convergence_table(to_core(spec), half_width, {spacings, n_spacings}, count);
    if (values_out) {
      for (std::size_t s = 0; s < n_spacings; ++s) {
        std::copy(table.lambdas_sq[s].begin(), table.lambdas_sq[s].end(), values_out + s * count);
      }
    }
    if (order_out) std::copy(table.observed_order.begin(), table.observed_order.end(), order_out);
  });
}

// ---- projectors ----------------------------------------------------------------

ss_status ss_projector_index_create(const ss_eigensystem* eig, ss_projector_index** out) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    require_non_null(out, "out");
    *out = new ss_projector_index{ss::bin_spectrum(eig->eig)};
  });
}

ss_status ss_projector_index_from_values(const double* lambdas_sq, size_t count, ss_projector_index** out) {
  return guarded([&] {
    require_non_null(lambdas_sq, "lambdas_sq");
    require_non_null(out, "out");
    *out = new ss_projector_index{ss::bin_spectrum(std::span<const double>(lambdas_sq, count))};
  });
}

void ss_projector_index_destroy(ss_projector_index* index) { delete index; }

size_t ss_projector_bin_count(const ss_projector_index* index) { return index ? index->index.bins.size() : 0; }

ss_status ss_projector_bin(const ss_projector_index* index, size_t i, int64_t* label, size_t* members,
                           size_t capacity, size_t* size) {
  return guarded([&] {
    require_non_null(index, "index");
    require(i < index->index.bins.size(), "bin position out of range");
    auto it = std::next(index->index.bins.begin(), static_cast<std::ptrdiff_t>(i));
    if (label) *label = it->first;
    if (size) *size = it->second.size();
    if (members) {
      require(capacity >= it->second.size(), "member buffer too small");
      std::copy(it->second.begin(), it->second.end(), members);
    }
  });
}

size_t ss_projector_warning_count(const ss_projector_index* index) {
  return index ? index->index.warnings.size() : 0;
}

const char* ss_projector_warning(const ss_projector_index* index, size_t i) {
  if (!index || i >= index->index.warnings.size()) return nullptr;
  return index->index.warnings[i].c_str();
}

ss_status ss_apply_projector(const ss_projector_index* index, const double* coeffs, size_t count, int64_t bin,
                             double* out) {
  return guarded([&] {
    require_non_null(index, "index");
    require_non_null(out, "out");
    write_coefficients(ss::apply_projector(index->index, read_coefficients(coeffs, count), bin), out);
  });
}

ss_status ss_entire_part_deviation(const ss_eigensystem* eig, double* out) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    require_non_null(out, "out");
    *out = ss::entire_part_deviation(eig->eig);
  });
}

ss_status ss_weighted_decay(const ss_eigensystem* eig, const double* psi, size_t len,
                            const ss_projector_index* index, double* norms_out, double* bin_norms_out) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    require_non_null(index, "index");
    const auto report = ss::weighted_decay(eig->eig, weight_span(eig, psi, len), index->index);
    if (norms_out) {
      for (std::size_t n = 0; n < report.modes.size(); ++n) norms_out[n] = report.modes[n].weighted_norm;
    }
    if (bin_norms_out) {
      for (std::size_t b = 0; b < report.bins.size(); ++b) bin_norms_out[b] = report.bins[b].operator_norm;
    }
  });
}

ss_status ss_fit_decay_exponent(const double* lambdas, const double* norms, size_t count, size_t n_lo,
                                size_t n_hi, ss_decay_fit* out) {
  return guarded([&] {
    require_non_null(lambdas, "lambdas");
    require_non_null(norms, "norms");
    require_non_null(out, "out");
    ss::DecayReport report;
    for (std::size_t n = 0; n < count; ++n) report.modes.push_back({n + 1, lambdas[n], norms[n]});
    const auto fit = ss::fit_decay_exponent(report, n_lo, n_hi);
    *out = {fit.gamma, fit.c2, fit.residual, fit.n_lo, fit.n_hi, fit.excluded_zero_norms};
  });
}

ss_status ss_gap_profile(const ss_eigensystem* eig, double m, ss_gap_summary* summary, double* gaps_out,
                         double* ratios_out, int* distinct_out) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    const auto profile = ss::gap_profile(eig->eig, m);
    if (summary) {
      summary->inf_ratio = profile.inf_ratio;
      summary->has_singleton_from = profile.singleton_from.has_value();
      summary->singleton_from = profile.singleton_from.value_or(0);
    }
    for (std::size_t i = 0; i < profile.records.size(); ++i) {
      if (gaps_out) gaps_out[i] = profile.records[i].gap;
      if (ratios_out) ratios_out[i] = profile.records[i].ratio;
      if (distinct_out) distinct_out[i] = profile.records[i].distinct_bins;
    }
  });
}

// ---- smoothing -------------------------------------------------------------------

ss_status ss_time_integral(double mu, double* re, double* im) {
  return guarded([&] {
    const auto v = ss::time_integral(mu);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

ss_status ss_evolve(const ss_eigensystem* eig, const double* coeffs, double t, ss_dynamics dynamics,
                    double* out) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    require_non_null(out, "out");
    write_coefficients(ss::evolve(eig->eig, read_coefficients(coeffs, eig->eig.count()), t, to_core(dynamics)),
                       out);
  });
}

ss_status ss_smoothing_quadrature(const ss_eigensystem* eig, const double* psi, size_t len, double gamma,
                                  const double* coeffs, ss_dynamics dynamics, ss_bracket bracket, size_t panels,
                                  double* out) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    require_non_null(out, "out");
    *out = ss::smoothing_quadrature(eig->eig, weight_span(eig, psi, len), gamma,
                                    read_coefficients(coeffs, eig->eig.count()), to_core(dynamics), panels,
                                    to_core(bracket));
  });
}

ss_status ss_smoothing_closed_form(const ss_eigensystem* eig, const double* psi, size_t len, double gamma,
                                   const double* coeffs, ss_dynamics dynamics, ss_bracket bracket, double* out) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    require_non_null(out, "out");
    *out = ss::smoothing_closed_form(eig->eig, weight_span(eig, psi, len), gamma,
                                     read_coefficients(coeffs, eig->eig.count()), to_core(dynamics),
                                     to_core(bracket));
  });
}

ss_status ss_parseval_identity_a(const ss_eigensystem* eig, const double* psi, size_t len, double gamma,
                                 const double* coeffs, const ss_projector_index* index, double* lhs, double* rhs) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    require_non_null(index, "index");
    const auto r = ss::parseval_identity_A(eig->eig, weight_span(eig, psi, len), gamma,
                                           read_coefficients(coeffs, eig->eig.count()), index->index);
    if (lhs) *lhs = r.lhs;
    if (rhs) *rhs = r.rhs;
  });
}

ss_status ss_smoothing_constant_compute(const ss_eigensystem* eig, const double* psi, size_t len, double gamma,
                                        ss_dynamics dynamics, ss_bracket bracket, ss_smoothing_constant* out,
                                        double* maximizer_out) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    require_non_null(out, "out");
    const auto r = ss::smoothing_constant(eig->eig, weight_span(eig, psi, len), gamma, to_core(dynamics),
                                          to_core(bracket));
    out->c1 = r.c1;
    out->top_eigenvalue = r.top_eigenvalue;
    out->power_converged = r.power_converged;
    out->power_iterations = r.rayleigh_history.size();
    out->last_rayleigh_quotient = r.rayleigh_history.empty() ? 0.0 : r.rayleigh_history.back();
    if (maximizer_out) write_coefficients(r.maximizer, maximizer_out);
  });
}

ss_status ss_duhamel_discrepancy(const ss_eigensystem* eig, const double* psi, size_t len, double gamma,
                                 const double* coeffs, double* discrepancy, double* bound) {
  return guarded([&] {
    require_non_null(eig, "eigensystem");
    const auto r = ss::duhamel_discrepancy(eig->eig, weight_span(eig, psi, len), gamma,
                                           read_coefficients(coeffs, eig->eig.count()));
    if (discrepancy) *discrepancy = r.discrepancy;
    if (bound) *bound = r.bound;
  });
}

// ---- free Laplacian ----------------------------------------------------------------

ss_status ss_band_params(int64_t n, double* half_width, double* centre) {
  return guarded([&] {
    const auto b = ss::band_params(n);
    if (half_width) *half_width = b.half_width;
    if (centre) *centre = b.centre;
  });
}

ss_status ss_kernel_f(int64_t n, double u, ss_kernel_method method, double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = ss::kernel_F(n, u,
                        method == SS_KERNEL_QUADRATURE ? ss::KernelMethod::quadrature : ss::KernelMethod::closed_form);
  });
}

ss_status ss_ttstar_kernel(int64_t n, double x, double z, double psi_x, double psi_z, double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    ss::band_params(n);
    *out = ss::ttstar_kernel(n, x, z, psi_x, psi_z);
  });
}

ss_status ss_uniform_bound_check(const int64_t* bands, size_t n_bands, const ss_grid* grid, const double* psi,
                                 size_t len, double* per_band_sup_out, double* sup, double* variation) {
  return guarded([&] {
    require_non_null(bands, "bands");
    require_non_null(grid, "grid");
    require_non_null(psi, "psi");
    const auto r = ss::uniform_bound_check({bands, n_bands}, grid->grid, {psi, len});
    if (per_band_sup_out) std::copy(r.per_band_sup.begin(), r.per_band_sup.end(), per_band_sup_out);
    if (sup) *sup = r.sup;
    if (variation) *variation = r.variation;
  });
}

ss_status ss_theta_exponent(double q, double k, int has_eta, double eta, double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = ss::theta_exponent(q, k, has_eta ? std::optional<double>(eta) : std::nullopt);
  });
}

}  // extern "C"
