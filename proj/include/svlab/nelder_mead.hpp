#pragma once

#include <functional>
#include <span>
#include <vector>

namespace svlab::optim {

struct NelderMeadOptions {
  double initial_step = 0.1;
  double x_tol = 1e-9;   // simplex extent (max-norm) at convergence
  double f_tol = 1e-15;  // spread of function values at convergence
  int max_evaluations = 20000;
  int restarts = 1;      // fresh simplexes around the converged point
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

// Deterministic downhill simplex minimizer (standard reflection, expansion,
// contraction and shrink coefficients 1, 2, 1/2, 1/2).
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& options = {});

}  // namespace svlab::optim
