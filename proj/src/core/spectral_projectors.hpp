#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/dense_hermitian.hpp"
#include "core/tridiag_eig.hpp"

namespace specsmooth {

/// Eigencoefficients c_n of a function f = sum_n c_n phi_n (0-based n).
using Coefficients = std::vector<Complex>;

/// Unit spectral bins: N -> { n : N <= lambda_n^2 < N + 1 }. The bin labels
/// are the eigenvalues of the entire-part operator A = [H].
struct ProjectorIndex {
  std::map<std::int64_t, std::vector<std::size_t>> bins;  // 0-based mode indices
  std::vector<std::int64_t> label_of_mode;                // [lambda_n^2] per mode
  std::int64_t max_bin = 0;
  std::vector<std::string> warnings;

  std::size_t mode_count() const noexcept { return label_of_mode.size(); }
};

ProjectorIndex bin_spectrum(std::span<const double> lambdas_sq);
ProjectorIndex bin_spectrum(const EigenSystem& eig);

/// P_N f on coefficients: keeps bin N, zeroes the rest. Empty bins give 0.
Coefficients apply_projector(const ProjectorIndex& index, const Coefficients& f, std::int64_t bin);

/// max_n (lambda_n^2 - [lambda_n^2]) = ||H - A|| on the computed span.
double entire_part_deviation(std::span<const double> lambdas_sq);
double entire_part_deviation(const EigenSystem& eig);

/// G_mn = h * sum_i psi_i^2 phi_m(x_i) phi_n(x_i).
RealMatrix weighted_gram(const EigenSystem& eig, std::span<const double> psi);

struct ModeRecord {
  std::size_t n;  // 1-based
  double lambda;
  double weighted_norm;  // ||psi phi_n||
};

struct BinRecord {
  std::int64_t bin;
  std::size_t size;
  double operator_norm;  // ||psi P_N|| restricted to the bin
};

struct DecayFit {
  double gamma = 0.0;
  double c2 = 0.0;
  double residual = 0.0;  // RMS residual of the log-log fit
  std::size_t n_lo = 0;   // 1-based, inclusive
  std::size_t n_hi = 0;
  std::size_t excluded_zero_norms = 0;
};

struct GapRecord {
  std::size_t n;  // 1-based
  double gap;     // lambda_{n+1}^2 - lambda_n^2
  double ratio;   // gap / lambda_n^{1 - 2/m}
  bool distinct_bins;
};

struct GapProfile {
  std::vector<GapRecord> records;
  double inf_ratio = 0.0;
  /// Smallest 1-based n from which every mode sits alone in its bin.
  std::optional<std::size_t> singleton_from;
};

struct DecayReport {
  std::vector<ModeRecord> modes;
  std::vector<BinRecord> bins;
  std::optional<DecayFit> fit;
  std::optional<GapProfile> gaps;
};

DecayReport weighted_decay(const EigenSystem& eig, std::span<const double> psi, const ProjectorIndex& index);

/// Least-squares fit of log ||psi phi_n|| against log lambda_n over
/// n in [n_lo, n_hi] (1-based, inclusive). gamma = -slope; C2 is the sup of
/// ||psi phi_n|| lambda_n^gamma over the range. Zero norms are skipped.
DecayFit fit_decay_exponent(const DecayReport& report, std::size_t n_lo, std::size_t n_hi);

/// Default fit range: the lowest quartile of modes is dropped.
std::pair<std::size_t, std::size_t> default_fit_range(std::size_t count);

GapProfile gap_profile(std::span<const double> lambdas_sq, double m);
GapProfile gap_profile(const EigenSystem& eig, double m);

}  // namespace specsmooth
