/*
 * specsmooth: spectral projectors and local smoothing for 1D Schroedinger
 * operators H = -d^2/dx^2 + V on a truncated grid.
 *
 * C interface. Objects are opaque handles created by *_create functions and
 * released by the matching *_destroy. Every fallible call returns an
 * ss_status; on failure ss_last_error() describes the problem (the message is
 * thread-local and valid until the next failing call on that thread).
 *
 * Complex coefficient vectors are passed as interleaved doubles
 * (re0, im0, re1, im1, ...), length 2 * count. Mode indices are 0-based.
 */
#ifndef SPECSMOOTH_H_
#define SPECSMOOTH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(SPECSMOOTH_BUILDING_LIBRARY)
#define SS_API __attribute__((visibility("default")))
#else
#define SS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ss_status {
  SS_OK = 0,
  SS_ERR_INVALID_ARGUMENT = 1,
  SS_ERR_INVALID_STATE = 2,
  SS_ERR_NUMERICAL_FAILURE = 3,
  SS_ERR_OUT_OF_MEMORY = 4,
  SS_ERR_INTERNAL = 5
} ss_status;

SS_API const char* ss_last_error(void);
SS_API const char* ss_status_name(ss_status status);
SS_API const char* ss_version(void);

/* Cap on worker threads (0 = hardware concurrency). Results do not depend on it. */
SS_API void ss_set_thread_count(int threads);
SS_API int ss_get_thread_count(void);

/* ---- grids, potentials, weights ------------------------------------------ */

typedef struct ss_grid ss_grid;

SS_API ss_status ss_grid_create(double half_width, size_t n_points, ss_grid** out);
/* Grid with spacing h on (-L, L); h must divide 2L. */
SS_API ss_status ss_grid_create_spacing(double half_width, double spacing, ss_grid** out);
SS_API void ss_grid_destroy(ss_grid* grid);
SS_API size_t ss_grid_size(const ss_grid* grid);
SS_API double ss_grid_spacing(const ss_grid* grid);
SS_API ss_status ss_grid_points(const ss_grid* grid, double* out, size_t len);

typedef enum ss_potential_kind {
  SS_POTENTIAL_HARMONIC = 0,      /* V = x^2 */
  SS_POTENTIAL_BRACKET_POWER = 1, /* V = (1 + x^2)^{k/2} */
  SS_POTENTIAL_ZERO = 2,          /* V = 0 (Dirichlet box) */
  SS_POTENTIAL_CUSTOM = 3         /* one sample per grid point */
} ss_potential_kind;

typedef struct ss_potential_spec {
  ss_potential_kind kind;
  double k; /* growth exponent (bracket_power, custom) */
  double m; /* convexity exponent for assumption and gap checks */
  const double* samples;
  size_t n_samples;
} ss_potential_spec;

typedef enum ss_weight_kind {
  SS_WEIGHT_CONSTANT_ONE = 0,
  SS_WEIGHT_INDICATOR = 1,    /* 1 on [a, b], endpoints included */
  SS_WEIGHT_INVERSE_POWER = 2, /* (1 + x^2)^{-(1/2 + nu)/2} */
  SS_WEIGHT_CUSTOM = 3
} ss_weight_kind;

typedef struct ss_weight_spec {
  ss_weight_kind kind;
  double a;
  double b;
  double nu;
  const double* samples;
  size_t n_samples;
} ss_weight_spec;

SS_API ss_status ss_sample_potential(const ss_potential_spec* spec, const ss_grid* grid, double* out, size_t len);
SS_API ss_status ss_sample_weight(const ss_weight_spec* spec, const ss_grid* grid, double* out, size_t len);

typedef struct ss_assumption_report {
  double x0;
  size_t points_checked;
  double inf_log_derivative_ratio; /* inf x V'/V over |x| >= x0 */
  double min_second_derivative;
  double min_sandwich_ratio; /* V / <x>^k */
  double max_sandwich_ratio;
  double max_first_symbol_ratio;  /* |V'| / <x>^{k-1} */
  double max_second_symbol_ratio; /* |V''| / <x>^{k-2} */
  int analytic_derivatives;
  int growth_condition;
  int convexity_condition;
  int passes;
} ss_assumption_report;

SS_API ss_status ss_check_assumption(const ss_potential_spec* spec, double x0, const ss_grid* grid,
                                     ss_assumption_report* out);

/* ---- Hamiltonian and eigensystems ---------------------------------------- */

typedef struct ss_hamiltonian ss_hamiltonian;
typedef struct ss_eigensystem ss_eigensystem;

SS_API ss_status ss_hamiltonian_create(const ss_potential_spec* spec, const ss_grid* grid, ss_hamiltonian** out);
SS_API void ss_hamiltonian_destroy(ss_hamiltonian* h);
SS_API ss_status ss_hamiltonian_diagonal(const ss_hamiltonian* h, double* out, size_t len);
SS_API double ss_hamiltonian_off_diagonal(const ss_hamiltonian* h);
SS_API size_t ss_hamiltonian_count_below(const ss_hamiltonian* h, double sigma);

SS_API ss_status ss_eigen_lowest(const ss_hamiltonian* h, size_t count, ss_eigensystem** out);
/* Exact harmonic-oscillator eigenpairs (Hermite functions, lambda^2 = 2n + 1) sampled on the grid. */
SS_API ss_status ss_eigen_harmonic_reference(const ss_grid* grid, size_t count, ss_eigensystem** out);
/* First `count` modes of an existing eigensystem. */
SS_API ss_status ss_eigen_truncate(const ss_eigensystem* eig, size_t count, ss_eigensystem** out);
SS_API void ss_eigen_destroy(ss_eigensystem* eig);
SS_API size_t ss_eigen_count(const ss_eigensystem* eig);
SS_API size_t ss_eigen_grid_size(const ss_eigensystem* eig);
SS_API ss_status ss_eigen_values(const ss_eigensystem* eig, double* out, size_t len);
SS_API ss_status ss_eigen_vector(const ss_eigensystem* eig, size_t n, double* out, size_t len);
SS_API ss_status ss_eigen_residuals(const ss_eigensystem* eig, double* out, size_t len);
SS_API size_t ss_eigen_warning_count(const ss_eigensystem* eig);
SS_API const char* ss_eigen_warning(const ss_eigensystem* eig, size_t i);
SS_API ss_status ss_residual_check(const ss_hamiltonian* h, const ss_eigensystem* eig, double* out);

/* values_out: n_spacings * count row-major; order_out: count (Richardson order per mode). */
SS_API ss_status ss_convergence_table(const ss_potential_spec* spec, double half_width, const double* spacings,
                                      size_t n_spacings, size_t count, double* values_out, double* order_out);

/* ---- spectral projectors -------------------------------------------------- */

typedef struct ss_projector_index ss_projector_index;

SS_API ss_status ss_projector_index_create(const ss_eigensystem* eig, ss_projector_index** out);
SS_API ss_status ss_projector_index_from_values(const double* lambdas_sq, size_t count, ss_projector_index** out);
SS_API void ss_projector_index_destroy(ss_projector_index* index);
SS_API size_t ss_projector_bin_count(const ss_projector_index* index);
/* label and member list of the i-th non-empty bin in ascending order */
SS_API ss_status ss_projector_bin(const ss_projector_index* index, size_t i, int64_t* label, size_t* members,
                                  size_t capacity, size_t* size);
SS_API size_t ss_projector_warning_count(const ss_projector_index* index);
SS_API const char* ss_projector_warning(const ss_projector_index* index, size_t i);

SS_API ss_status ss_apply_projector(const ss_projector_index* index, const double* coeffs, size_t count,
                                    int64_t bin, double* out);
SS_API ss_status ss_entire_part_deviation(const ss_eigensystem* eig, double* out);

/* norms_out: count entries ||psi phi_n||; bin_norms_out: ss_projector_bin_count entries. */
SS_API ss_status ss_weighted_decay(const ss_eigensystem* eig, const double* psi, size_t len,
                                   const ss_projector_index* index, double* norms_out, double* bin_norms_out);

typedef struct ss_decay_fit {
  double gamma;
  double c2;
  double residual;
  size_t n_lo;
  size_t n_hi;
  size_t excluded_zero_norms;
} ss_decay_fit;

/* Fit over 1-based modes [n_lo, n_hi] of (lambdas[n-1], norms[n-1]). */
SS_API ss_status ss_fit_decay_exponent(const double* lambdas, const double* norms, size_t count, size_t n_lo,
                                       size_t n_hi, ss_decay_fit* out);

typedef struct ss_gap_summary {
  double inf_ratio;
  int has_singleton_from;
  size_t singleton_from; /* 1-based */
} ss_gap_summary;

/* gaps_out, ratios_out, distinct_out: count - 1 entries each (may be NULL). */
SS_API ss_status ss_gap_profile(const ss_eigensystem* eig, double m, ss_gap_summary* summary, double* gaps_out,
                                double* ratios_out, int* distinct_out);

/* ---- smoothing functional ------------------------------------------------- */

typedef enum ss_dynamics { SS_DYNAMICS_H = 0, SS_DYNAMICS_A = 1 } ss_dynamics;
typedef enum ss_bracket { SS_BRACKET_H = 0, SS_BRACKET_A = 1 } ss_bracket;

SS_API ss_status ss_time_integral(double mu, double* re, double* im);
SS_API ss_status ss_evolve(const ss_eigensystem* eig, const double* coeffs, double t, ss_dynamics dynamics,
                           double* out);
SS_API ss_status ss_smoothing_quadrature(const ss_eigensystem* eig, const double* psi, size_t len, double gamma,
                                         const double* coeffs, ss_dynamics dynamics, ss_bracket bracket,
                                         size_t panels, double* out);
SS_API ss_status ss_smoothing_closed_form(const ss_eigensystem* eig, const double* psi, size_t len, double gamma,
                                          const double* coeffs, ss_dynamics dynamics, ss_bracket bracket,
                                          double* out);
SS_API ss_status ss_parseval_identity_a(const ss_eigensystem* eig, const double* psi, size_t len, double gamma,
                                        const double* coeffs, const ss_projector_index* index, double* lhs,
                                        double* rhs);

typedef struct ss_smoothing_constant {
  double c1;
  double top_eigenvalue;
  int power_converged;
  size_t power_iterations;
  double last_rayleigh_quotient;
} ss_smoothing_constant;

/* maximizer_out (2 * count doubles) may be NULL. */
SS_API ss_status ss_smoothing_constant_compute(const ss_eigensystem* eig, const double* psi, size_t len,
                                               double gamma, ss_dynamics dynamics, ss_bracket bracket,
                                               ss_smoothing_constant* out, double* maximizer_out);
SS_API ss_status ss_duhamel_discrepancy(const ss_eigensystem* eig, const double* psi, size_t len, double gamma,
                                        const double* coeffs, double* discrepancy, double* bound);

/* ---- free Laplacian ------------------------------------------------------- */

typedef enum ss_kernel_method { SS_KERNEL_CLOSED_FORM = 0, SS_KERNEL_QUADRATURE = 1 } ss_kernel_method;

SS_API ss_status ss_band_params(int64_t n, double* half_width, double* centre);
SS_API ss_status ss_kernel_f(int64_t n, double u, ss_kernel_method method, double* out);
SS_API ss_status ss_ttstar_kernel(int64_t n, double x, double z, double psi_x, double psi_z, double* out);
/* per_band_sup_out: n_bands entries. */
SS_API ss_status ss_uniform_bound_check(const int64_t* bands, size_t n_bands, const ss_grid* grid,
                                        const double* psi, size_t len, double* per_band_sup_out, double* sup,
                                        double* variation);
/* q may be +INFINITY; has_eta selects whether eta is supplied. */
SS_API ss_status ss_theta_exponent(double q, double k, int has_eta, double eta, double* out);

#ifdef __cplusplus
}
#endif

#endif /* SPECSMOOTH_H_ */
