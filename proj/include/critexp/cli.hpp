#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "critexp/optimizer.hpp"
#include "critexp/quadrature.hpp"

namespace critexp {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitPrecondition = 2,
  kExitNotConverged = 3,
};

struct SweepRow {
  double alpha = 0.0;
  double optimizer_value = 0.0;
  double candidate_value = 0.0;  ///< pi eps (total - 1)
  double bound = 0.0;            ///< 2 pi e/(alpha+2)
  double identity_gap = 0.0;     ///< relative gap, disk re-evaluation
  double concentration = 0.0;
  bool converged = false;
  std::string error;  ///< empty unless the row failed
};

/// One row per alpha, computed independently (concurrently when threads allow)
/// and returned in input order. gamma_factor = gamma/4pi.
std::vector<SweepRow> sweep(std::span<const double> alphas, double gamma_factor,
                            const OptimizerConfig& cfg = {}, const QuadratureSpec& q = {});

/// Command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace critexp
