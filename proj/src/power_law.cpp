#include "svlab/power_law.hpp"

#include <cmath>
#include <vector>

#include "svlab/error.hpp"

namespace svlab {

PowerLawFit fit_power_law(std::span<const double> ns, std::span<const double> fs,
                          std::optional<FitWindow> window) {
  if (ns.size() != fs.size()) throw DimensionError("ns and fs differ in length");
  if (ns.size() < 3) throw DegenerateInputError("a power-law fit needs at least 3 points");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(fs[i] > 0.0)) throw DomainError("power-law fit needs f > 0");
    if (i > 0 && !(ns[i] > ns[i - 1])) throw DomainError("power-law fit needs increasing n");
  }
  const FitWindow w = window.value_or(FitWindow{ns.back() / 2.0, ns.back()});

  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < w.lo || ns[i] > w.hi) continue;
    if (!(ns[i] > 0.0)) throw DomainError("power-law fit needs n > 0 inside the window");
    x.push_back(std::log(ns[i]));
    y.push_back(std::log(fs[i]));
  }
  if (x.size() < 3) throw DegenerateInputError("fewer than 3 points inside the fit window");

  const double m = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DegenerateInputError("all n inside the fit window coincide");
  const double slope = sxy / sxx;
  return {std::exp(my - slope * mx), slope, static_cast<int>(x.size())};
}

}  // namespace svlab
