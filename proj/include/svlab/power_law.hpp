#pragma once

#include <optional>
#include <span>

namespace svlab {

struct PowerLawFit {
  double prefactor = 0.0;
  double exponent = 0.0;
  int points = 0;
};

struct FitWindow {
  double lo;
  double hi;
};

// Least-squares line through (ln n, ln f) for the points with n inside the
// window (default: the upper half, n >= n_max / 2). Requires f > 0 and
// increasing n; throws DegenerateInputError with fewer than 3 points.
PowerLawFit fit_power_law(std::span<const double> ns, std::span<const double> fs,
                          std::optional<FitWindow> window = std::nullopt);

}  // namespace svlab
