#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fractrend {

using Objective = std::function<double(std::span<const double>)>;

struct SimplexOptions {
  int max_iterations = 20000;  // per restart
  double f_tolerance = 1e-15;  // absolute spread of vertex values
  double x_tolerance = 1e-12;  // per-coordinate spread, relative to 1 + |x|
  int restarts = 4;            // fresh simplices around the incumbent after convergence
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

// Nelder-Mead with the standard coefficients (reflect 1, expand 2, contract
// 1/2, shrink 1/2). The initial simplex is `start` plus one vertex per
// coordinate offset by `step[i]`. Non-finite objective values are treated
// as +infinity. Deterministic: no randomness, ties broken by vertex order.
SimplexResult nelder_mead(const Objective& f, std::vector<double> start,
                          std::span<const double> step, const SimplexOptions& options = {});

}  // namespace fractrend
