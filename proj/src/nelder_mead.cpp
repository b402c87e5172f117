#include "svlab/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace svlab::optim {
namespace {

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

NelderMeadResult run_once(const Objective& f, const std::vector<double>& x0,
                          const NelderMeadOptions& opt, int budget) {
  const std::size_t dim = x0.size();
  Simplex s;
  s.points.assign(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i) {
    const double step = x0[i] != 0.0 ? std::max(opt.initial_step, 0.05 * std::abs(x0[i]))
                                     : opt.initial_step;
    s.points[i + 1][i] += step;
  }
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? INFINITY : v;
  };
  s.values.resize(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) s.values[i] = eval(s.points[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);
  auto blend = [&](double t, const std::vector<double>& far, std::vector<double>& out) {
    for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + t * (far[j] - centroid[j]);
  };

  bool converged = false;
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
    Simplex sorted;
    for (std::size_t i : order) {
      sorted.points.push_back(std::move(s.points[i]));
      sorted.values.push_back(s.values[i]);
    }
    s = std::move(sorted);

    double extent = 0.0;
    for (std::size_t i = 1; i <= dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        extent = std::max(extent, std::abs(s.points[i][j] - s.points[0][j]));
      }
    }
    const double spread = s.values[dim] - s.values[0];
    if (extent <= opt.x_tol && spread <= opt.f_tol * std::max(1.0, std::abs(s.values[0]))) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += s.points[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    const auto& worst = s.points[dim];
    blend(-1.0, worst, trial);
    const double fr = eval(trial);
    if (fr < s.values[0]) {
      blend(-2.0, worst, trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        s.points[dim] = trial2;
        s.values[dim] = fe;
      } else {
        s.points[dim] = trial;
        s.values[dim] = fr;
      }
      continue;
    }
    if (fr < s.values[dim - 1]) {
      s.points[dim] = trial;
      s.values[dim] = fr;
      continue;
    }
    const bool outside = fr < s.values[dim];
    blend(outside ? -0.5 : 0.5, worst, trial2);
    const double fc = eval(trial2);
    if (fc <= (outside ? fr : s.values[dim])) {
      s.points[dim] = trial2;
      s.values[dim] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        s.points[i][j] = s.points[0][j] + 0.5 * (s.points[i][j] - s.points[0][j]);
      }
      s.values[i] = eval(s.points[i]);
    }
  }
  const auto best = std::min_element(s.values.begin(), s.values.end()) - s.values.begin();
  return {s.points[static_cast<std::size_t>(best)], s.values[static_cast<std::size_t>(best)], evals,
          converged};
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& options) {
  NelderMeadResult best = run_once(f, x0, options, options.max_evaluations);
  for (int k = 0; k < options.restarts && best.evaluations < options.max_evaluations; ++k) {
    NelderMeadOptions local = options;
    local.initial_step = std::max(10.0 * options.x_tol, 1e-3 * options.initial_step);
    auto again = run_once(f, best.x, local, options.max_evaluations - best.evaluations);
    again.evaluations += best.evaluations;
    if (again.value < best.value) {
      best = std::move(again);
    } else {
      best.evaluations = again.evaluations;
      best.converged = best.converged && again.converged;
    }
  }
  return best;
}

}  // namespace svlab::optim
