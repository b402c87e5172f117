#pragma once

// Svetlichny analysis with displaced-parity measurements on the symmetric
// Gaussian family. Every mode uses the same two displacement settings
// xi_0 = (q0, p0) and xi_1 = (q1, p1).

#include <optional>
#include <span>
#include <vector>

#include "svlab/gaussian.hpp"
#include "svlab/kernels.hpp"
#include "svlab/svetlichny.hpp"

namespace svlab::parity {

using gaussian::SymmetricGaussianState;

struct ParitySettings {
  double q0 = 0.0;
  double q1 = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;
};

// Seed labels reported in ParityOptimum::seed besides lattice indices.
inline constexpr int kOriginSeed = -1;
inline constexpr int kAntisymmetricSeed = -2;
inline constexpr int kWarmStartSeed = -3;

struct ParityOptimum {
  double s_opt = 1.0;
  ParitySettings settings;
  bool converged = false;
  double residual = 0.0;  // max |stationarity residual| at the reported p0, p1
  int seed = kOriginSeed;
  bool q_improved = false;  // the 4-D pass found a better point off q = 0
};

// E^m_n: product of displaced parities with m modes at xi_1 and n - m at xi_0.
double correlation(const SymmetricGaussianState& state, const ParitySettings& s, int m);

svetlichny::SymmetricCorrelations correlations(const SymmetricGaussianState& state,
                                               const ParitySettings& s);

double svetlichny_parity(const SymmetricGaussianState& state, const ParitySettings& s);

// Left-hand sides of the two stationarity conditions at q0 = q1 = 0.
// g0 collects the terms proportional to dS/dp1 and g1 those of dS/dp0:
//   dS/dp1 = -2^(1 - ceil(n/2)) g0,   dS/dp0 = -2^(1 - ceil(n/2)) g1.
struct Stationarity {
  double g0 = 0.0;
  double g1 = 0.0;
  double max_abs() const;
};

Stationarity stationarity_residuals(const SymmetricGaussianState& state, double p0, double p1);

// Closed-form antisymmetric optimum p0 = -p1 for three modes. Throws
// DomainError for a <= sqrt(3/2).
double optimal_p3(double a);

// Quadratic-form coefficients of S at q = 0 for the batch kernels.
kernels::ParityForm parity_form(const SymmetricGaussianState& state);

struct ParityOptions {
  int lattice_side = 5;             // seeds per axis for even n
  double lattice_half_width = 2.0;  // in units of 1/sqrt(a)
  double x_tol = 1e-9;
  double residual_tol = 1e-7;
  bool confirm_4d = true;
  int threads = 1;
  std::optional<ParitySettings> warm_start;
};

// Maximizes S_n over (q0, q1, p0, p1). Never throws on non-convergence; the
// best point found is returned with converged = false.
ParityOptimum optimize_settings(const SymmetricGaussianState& state,
                                const ParityOptions& options = {});

// Largest violation margin along p0 = -p1 = p, q = 0, scaled so that it is
// well conditioned near p = 0: max over t = p^2 > 0 of (S - 1) 2^ceil(n/2) / t.
// Positive iff some antisymmetric setting violates the inequality.
double antisymmetric_margin(int n, double a);

// Threshold a~_n for odd n >= 3 by bisection over (1, 2] to `tol`.
// Throws DomainError for even or small n and BracketError without a sign change.
double threshold(int n, double tol = 1e-8);

struct ScanRow {
  double a = 1.0;
  ParityOptimum optimum;
};

// One optimization per grid value, each warm-started from the previous row.
std::vector<ScanRow> scan_vs_a(int n, std::span<const double> a_grid,
                               const ParityOptions& options = {});

struct Landscape {
  std::vector<double> p0;
  std::vector<double> p1;
  std::vector<double> values;  // values[i * p1.size() + j] = S(p0[i], p1[j])

  double at(std::size_t i, std::size_t j) const { return values[i * p1.size() + j]; }
};

Landscape landscape(int n, double a, std::span<const double> p0_grid,
                    std::span<const double> p1_grid, int threads = 1,
                    kernels::Isa isa = kernels::active_isa());

}  // namespace svlab::parity
