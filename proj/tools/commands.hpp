#pragma once

#include <optional>

#include "cli_config.hpp"
#include "cli_output.hpp"

namespace specsmooth::cli {

void cmd_eigen(Section& s, Report& r);
void cmd_decay(Section& s, Report& r);
void cmd_smoothing(Section& s, Report& r);
void cmd_equivalence(Section& s, Report& r);
void cmd_free(Section& s, Report& r);

struct ThetaArgs {
  double q = 0.0;
  double k = 0.0;
  std::optional<double> eta;
};
ThetaArgs read_theta(Section& s);
double cmd_theta(const ThetaArgs& args);

}  // namespace specsmooth::cli
