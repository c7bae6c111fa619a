#pragma once

#include <functional>
#include <span>
#include <vector>

namespace isospin {

struct SimplexOptions {
  double tolerance = 1e-10;   // stop when max f - min f over the simplex drops below this
  double initial_step = 0.25;
  int max_evaluations = 200000;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead downhill simplex with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> start, const SimplexOptions& options);

}  // namespace isospin
