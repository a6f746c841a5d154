#include "core/spectral_projectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace specsmooth {

namespace {

// distance to an integer bin edge below which a boundary warning is raised
double boundary_tolerance(double lambda_sq) {
  return 1e-9 * std::max(1.0, std::abs(lambda_sq));
}

void require_grid_match(const EigenSystem& eig, std::span<const double> psi) {
  if (psi.size() != eig.grid_size()) {
    throw InvalidArgument("weight has " + std::to_string(psi.size()) + " samples, grid has " +
                          std::to_string(eig.grid_size()));
  }
}

}  // namespace

ProjectorIndex bin_spectrum(std::span<const double> lambdas_sq) {
  ProjectorIndex index;
  index.label_of_mode.reserve(lambdas_sq.size());
  for (std::size_t n = 0; n < lambdas_sq.size(); ++n) {
    const double l = lambdas_sq[n];
    if (!std::isfinite(l)) throw InvalidState("non-finite eigenvalue at mode " + std::to_string(n + 1));
    if (l < 0.0) {
      throw InvalidState("negative eigenvalue " + std::to_string(l) + " at mode " + std::to_string(n + 1) +
                         "; spectral bins assume H >= 0");
    }
    const auto bin = static_cast<std::int64_t>(std::floor(l));
    index.bins[bin].push_back(n);
    index.label_of_mode.push_back(bin);
    index.max_bin = std::max(index.max_bin, bin);
    const double nearest = std::round(l);
    if (std::abs(l - nearest) < boundary_tolerance(l) && l != nearest) {
      std::ostringstream os;
      os.precision(17);
      os << "mode " << n + 1 << ": lambda^2 = " << l << " lies within solver tolerance of the bin edge "
         << nearest;
      index.warnings.push_back(os.str());
    }
  }
  return index;
}

ProjectorIndex bin_spectrum(const EigenSystem& eig) { return bin_spectrum(eig.lambdas_sq()); }

Coefficients apply_projector(const ProjectorIndex& index, const Coefficients& f, std::int64_t bin) {
  if (f.size() != index.mode_count()) throw InvalidArgument("coefficient vector length mismatch");
  Coefficients out(f.size(), Complex(0.0, 0.0));
  const auto it = index.bins.find(bin);
  if (it == index.bins.end()) return out;
  for (std::size_t n : it->second) out[n] = f[n];
  return out;
}

double entire_part_deviation(std::span<const double> lambdas_sq) {
  double worst = 0.0;
  for (double l : lambdas_sq) worst = std::max(worst, l - std::floor(l));
  return worst;
}

double entire_part_deviation(const EigenSystem& eig) { return entire_part_deviation(eig.lambdas_sq()); }

RealMatrix weighted_gram(const EigenSystem& eig, std::span<const double> psi) {
  require_grid_match(eig, psi);
  const std::size_t count = eig.count();
  const std::size_t n = eig.grid_size();
  const double h = eig.grid().spacing();

  std::vector<double> weighted(count * n);
  for (std::size_t m = 0; m < count; ++m) {
    const auto v = eig.vector(m);
    for (std::size_t i = 0; i < n; ++i) weighted[m * n + i] = psi[i] * v[i];
  }
  RealMatrix g(count);
  parallel_for(count, [&](std::size_t a) {
    const double* wa = weighted.data() + a * n;
    for (std::size_t b = 0; b <= a; ++b) {
      const double* wb = weighted.data() + b * n;
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += wa[i] * wb[i];
      g(a, b) = h * s;
    }
  });
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) g(a, b) = g(b, a);
  }
  return g;
}

DecayReport weighted_decay(const EigenSystem& eig, std::span<const double> psi, const ProjectorIndex& index) {
  require_grid_match(eig, psi);
  if (index.mode_count() != eig.count()) throw InvalidArgument("projector index does not match eigensystem");
  const std::size_t n = eig.grid_size();
  const double h = eig.grid().spacing();

  DecayReport report;
  report.modes.resize(eig.count());
  parallel_for(eig.count(), [&](std::size_t m) {
    const auto v = eig.vector(m);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += psi[i] * psi[i] * v[i] * v[i];
    report.modes[m] = {m + 1, std::sqrt(eig.lambda_sq(m)), std::sqrt(h * s)};
  });

  for (const auto& [bin, members] : index.bins) {
    double norm;
    if (members.size() == 1) {
      norm = report.modes[members.front()].weighted_norm;
    } else {
      RealMatrix block(members.size());
      for (std::size_t a = 0; a < members.size(); ++a) {
        const auto va = eig.vector(members[a]);
        for (std::size_t b = 0; b <= a; ++b) {
          const auto vb = eig.vector(members[b]);
          double s = 0.0;
          for (std::size_t i = 0; i < n; ++i) s += psi[i] * psi[i] * va[i] * vb[i];
          block(a, b) = block(b, a) = h * s;
        }
      }
      norm = std::sqrt(std::max(0.0, symmetric_top_eigenpair(block).value));
    }
    report.bins.push_back({bin, members.size(), norm});
  }
  return report;
}

DecayFit fit_decay_exponent(const DecayReport& report, std::size_t n_lo, std::size_t n_hi) {
  if (n_lo < 1 || n_hi > report.modes.size() || n_hi < n_lo || n_hi - n_lo < 10) {
    throw InvalidArgument("fit range [" + std::to_string(n_lo) + ", " + std::to_string(n_hi) +
                          "] must satisfy 1 <= n_lo, n_hi - n_lo >= 10, n_hi <= " +
                          std::to_string(report.modes.size()));
  }
  DecayFit fit;
  fit.n_lo = n_lo;
  fit.n_hi = n_hi;
  std::vector<double> xs, ys;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const auto& rec = report.modes[n - 1];
    if (!(rec.weighted_norm > 0.0) || !(rec.lambda > 0.0)) {
      ++fit.excluded_zero_norms;
      continue;
    }
    xs.push_back(std::log(rec.lambda));
    ys.push_back(std::log(rec.weighted_norm));
  }
  if (xs.size() < 2) throw InvalidArgument("every weighted norm in the fit range is zero");

  const double count = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("fit range has no spread in lambda");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  fit.gamma = -slope;

  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / count);

  fit.c2 = 0.0;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const auto& rec = report.modes[n - 1];
    if (rec.weighted_norm > 0.0 && rec.lambda > 0.0) {
      fit.c2 = std::max(fit.c2, rec.weighted_norm * std::pow(rec.lambda, fit.gamma));
    }
  }
  return fit;
}

std::pair<std::size_t, std::size_t> default_fit_range(std::size_t count) {
  return {count / 4 + 1, count};
}

GapProfile gap_profile(std::span<const double> lambdas_sq, double m) {
  GapProfile profile;
  profile.inf_ratio = std::numeric_limits<double>::infinity();
  if (lambdas_sq.size() < 2) {
    profile.inf_ratio = 0.0;
    return profile;
  }
  const double exponent = 1.0 - 2.0 / m;
  for (std::size_t k = 0; k + 1 < lambdas_sq.size(); ++k) {
    const double gap = lambdas_sq[k + 1] - lambdas_sq[k];
    const double lambda = std::sqrt(lambdas_sq[k]);
    const double ratio = gap / std::pow(lambda, exponent);
    const bool distinct = std::floor(lambdas_sq[k]) < std::floor(lambdas_sq[k + 1]);
    profile.records.push_back({k + 1, gap, ratio, distinct});
    if (std::isfinite(ratio)) profile.inf_ratio = std::min(profile.inf_ratio, ratio);
  }
  // mode k is alone in its bin iff it differs from both neighbours' bins
  const std::size_t count = lambdas_sq.size();
  std::size_t from = count;
  for (std::size_t k = count; k-- > 0;) {
    const bool left = k == 0 || profile.records[k - 1].distinct_bins;
    const bool right = k + 1 == count || profile.records[k].distinct_bins;
    if (!(left && right)) break;
    from = k;
  }
  if (from < count) profile.singleton_from = from + 1;
  return profile;
}

GapProfile gap_profile(const EigenSystem& eig, double m) { return gap_profile(eig.lambdas_sq(), m); }

}  // namespace specsmooth
