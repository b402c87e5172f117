#include "svlab/parity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "svlab/error.hpp"
#include "svlab/nelder_mead.hpp"
#include "svlab/parallel.hpp"

namespace svlab::parity {
namespace {

int half_up(int n) { return (n + 1) / 2; }

void check_m(int n, int m) {
  if (m < 0 || m > n) {
    throw DomainError("parity correlation: m=" + std::to_string(m) + " outside [0, " +
                      std::to_string(n) + "]");
  }
}

// S at q = 0 and its analytic gradient from the stationarity sums.
struct PlaneEval {
  const SymmetricGaussianState& state;

  double value(double p0, double p1) const {
    return svetlichny_parity(state, {0.0, 0.0, p0, p1});
  }
  std::array<double, 2> gradient(double p0, double p1) const {
    const auto g = stationarity_residuals(state, p0, p1);
    const double k = -std::ldexp(1.0, 1 - half_up(state.n_modes()));
    return {k * g.g1, k * g.g0};
  }
};

struct Candidate {
  double s = -std::numeric_limits<double>::infinity();
  ParitySettings settings;
  int seed = kOriginSeed;
};

// Newton iterations on grad S = 0 with a central-difference Hessian of the
// analytic gradient. Steps are kept only while S does not decrease.
void newton_polish(const PlaneEval& ev, double scale, double& p0, double& p1) {
  double s = ev.value(p0, p1);
  double res = stationarity_residuals(ev.state, p0, p1).max_abs();
  for (int iter = 0; iter < 30 && res > 1e-13; ++iter) {
    const auto g = ev.gradient(p0, p1);
    const double h = 1e-6 * scale;
    const auto gx1 = ev.gradient(p0 + h, p1), gx0 = ev.gradient(p0 - h, p1);
    const auto gy1 = ev.gradient(p0, p1 + h), gy0 = ev.gradient(p0, p1 - h);
    const double h00 = (gx1[0] - gx0[0]) / (2 * h);
    const double h11 = (gy1[1] - gy0[1]) / (2 * h);
    const double h01 = 0.5 * ((gx1[1] - gx0[1]) + (gy1[0] - gy0[0])) / (2 * h);
    const double det = h00 * h11 - h01 * h01;
    // Only polish at a strict local maximum.
    if (!(h00 < 0.0 && det > 0.0)) break;
    const double d0 = -(h11 * g[0] - h01 * g[1]) / det;
    const double d1 = -(-h01 * g[0] + h00 * g[1]) / det;
    const double n0 = p0 + d0, n1 = p1 + d1;
    const double ns = ev.value(n0, n1);
    const double nres = stationarity_residuals(ev.state, n0, n1).max_abs();
    if (!(ns >= s - 4 * std::numeric_limits<double>::epsilon() * std::abs(s)) || !(nres < res)) {
      break;
    }
    p0 = n0;
    p1 = n1;
    s = std::max(s, ns);
    res = nres;
  }
}

Candidate local_search_2d(const SymmetricGaussianState& state, double scale, double x_tol,
                          double p0, double p1, int seed) {
  const PlaneEval ev{state};
  optim::NelderMeadOptions nm;
  nm.initial_step = 0.25;
  nm.x_tol = x_tol / scale;
  nm.f_tol = 1e-15;
  nm.max_evaluations = 4000;
  // Search in units of scale so seeds and steps are comparable for every a.
  const auto result = optim::nelder_mead(
      [&](std::span<const double> u) { return -ev.value(u[0] * scale, u[1] * scale); },
      {p0 / scale, p1 / scale}, nm);
  double b0 = result.x[0] * scale, b1 = result.x[1] * scale;
  newton_polish(ev, scale, b0, b1);
  return {ev.value(b0, b1), {0.0, 0.0, b0, b1}, seed};
}

// Best antisymmetric point p0 = -p1 = p >= 0: coarse scan then Brent.
double best_antisymmetric(const SymmetricGaussianState& state, double scale) {
  auto h = [&](double p) { return -svetlichny_parity(state, {0.0, 0.0, p, -p}); };
  constexpr int kGrid = 400;
  const double hi = 4.0 * scale;
  int best_i = 0;
  double best = h(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double v = h(hi * i / kGrid);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  if (best_i == 0) return 0.0;
  const double lo_p = hi * (best_i - 1) / kGrid;
  const double hi_p = hi * std::min(best_i + 1, kGrid + 1) / kGrid;
  const auto [p, v] = boost::math::tools::brent_find_minima(h, lo_p, hi_p, 52);
  return v <= best ? p : hi * best_i / kGrid;
}

}  // namespace

double Stationarity::max_abs() const { return std::max(std::abs(g0), std::abs(g1)); }

double correlation(const SymmetricGaussianState& state, const ParitySettings& s, int m) {
  const int n = state.n_modes();
  check_m(n, m);
  const double a = state.a();
  const auto [zp, zm] = state.couplings();
  const double nm = n - m;
  const double md = m;
  const double qs = s.q0 * nm + md * s.q1;
  const double ps = s.p0 * nm + md * s.p1;
  const double exponent = -zm * qs * qs - zp * ps * ps +
                          (zm - a) * (s.q0 * s.q0 * nm + md * s.q1 * s.q1) +
                          (zp - a) * (s.p0 * s.p0 * nm + md * s.p1 * s.p1);
  return std::exp(exponent);
}

svetlichny::SymmetricCorrelations correlations(const SymmetricGaussianState& state,
                                               const ParitySettings& s) {
  const int n = state.n_modes();
  std::vector<double> e(static_cast<std::size_t>(n + 1));
  for (int m = 0; m <= n; ++m) e[static_cast<std::size_t>(m)] = correlation(state, s, m);
  return svetlichny::SymmetricCorrelations(n, std::move(e));
}

double svetlichny_parity(const SymmetricGaussianState& state, const ParitySettings& s) {
  return svetlichny::svetlichny_symmetric(correlations(state, s));
}

Stationarity stationarity_residuals(const SymmetricGaussianState& state, double p0, double p1) {
  const int n = state.n_modes();
  const double a = state.a();
  const double zp = state.couplings().plus;
  Stationarity out;
  for (int m = 0; m <= n; ++m) {
    const double md = m, nm = n - m;
    const double b = static_cast<double>(svetlichny::coefficient(n, m));
    const double e = std::exp(-a * (md * p1 * p1 + nm * p0 * p0) -
                              zp * (2.0 * md * nm * p0 * p1 + md * (md - 1.0) * p1 * p1 +
                                    nm * (nm - 1.0) * p0 * p0));
    out.g0 += (a * md * p1 + zp * (md * nm * p0 + md * (md - 1.0) * p1)) * b * e;
    out.g1 += (a * nm * p0 + zp * (md * nm * p1 + nm * (nm - 1.0) * p0)) * b * e;
  }
  return out;
}

double optimal_p3(double a) {
  if (!(a > std::sqrt(1.5))) {
    throw DomainError("optimal_p3: need a > sqrt(3/2), got " + std::to_string(a));
  }
  const double z = gaussian::coupling_terms(3, a).plus;
  const double arg = std::log((a + 2.0 * z) / (3.0 * a - 2.0 * z)) / (8.0 * z);
  return std::sqrt(std::max(arg, 0.0));
}

kernels::ParityForm parity_form(const SymmetricGaussianState& state) {
  const int n = state.n_modes();
  const double a = state.a();
  const double zp = state.couplings().plus;
  kernels::ParityForm f;
  for (int m = 0; m <= n; ++m) {
    const double md = m, nm = n - m;
    f.weight.push_back(std::ldexp(static_cast<double>(svetlichny::coefficient(n, m)), -half_up(n)));
    f.c00.push_back(-(a * nm + zp * nm * (nm - 1.0)));
    f.c11.push_back(-(a * md + zp * md * (md - 1.0)));
    f.c01.push_back(-2.0 * zp * md * nm);
  }
  return f;
}

ParityOptimum optimize_settings(const SymmetricGaussianState& state, const ParityOptions& opt) {
  const int n = state.n_modes();
  const double scale = 1.0 / std::sqrt(state.a());

  std::vector<std::array<double, 3>> seeds;  // p0, p1, seed label
  if (n % 2 == 1) {
    const double p = best_antisymmetric(state, scale);
    seeds.push_back({p, -p, static_cast<double>(kAntisymmetricSeed)});
  } else {
    const int side = std::max(opt.lattice_side, 1);
    for (int i = 0; i < side; ++i) {
      for (int j = 0; j < side; ++j) {
        const double u0 = side == 1 ? 0.0 : -opt.lattice_half_width + 2.0 * opt.lattice_half_width * i / (side - 1);
        const double u1 = side == 1 ? 0.0 : -opt.lattice_half_width + 2.0 * opt.lattice_half_width * j / (side - 1);
        seeds.push_back({u0 * scale, u1 * scale, static_cast<double>(i * side + j)});
      }
    }
  }
  if (opt.warm_start) {
    seeds.push_back({opt.warm_start->p0, opt.warm_start->p1, static_cast<double>(kWarmStartSeed)});
  }

  std::vector<Candidate> found(seeds.size());
  parallel_for(seeds.size(), opt.threads, [&](std::size_t i) {
    found[i] = local_search_2d(state, scale, opt.x_tol, seeds[i][0], seeds[i][1],
                               static_cast<int>(seeds[i][2]));
  });

  // The product-like origin always gives S = 1; keep it unless beaten.
  Candidate best{1.0, {}, kOriginSeed};
  for (const auto& c : found) {
    if (c.s > best.s) best = c;
  }

  ParityOptimum out;
  out.s_opt = best.s;
  out.settings = best.settings;
  out.seed = best.seed;
  out.residual = stationarity_residuals(state, best.settings.p0, best.settings.p1).max_abs();
  out.converged = out.residual < opt.residual_tol;

  if (opt.confirm_4d) {
    optim::NelderMeadOptions nm;
    nm.initial_step = 0.1;
    nm.x_tol = opt.x_tol / scale;
    nm.max_evaluations = 8000;
    const auto& b = best.settings;
    const auto r = optim::nelder_mead(
        [&](std::span<const double> u) {
          return -svetlichny_parity(state, {u[0] * scale, u[1] * scale, u[2] * scale, u[3] * scale});
        },
        {0.0, 0.0, b.p0 / scale, b.p1 / scale}, nm);
    const double s4 = -r.value;
    if (s4 > out.s_opt + 1e-9 * std::max(1.0, out.s_opt)) {
      out.s_opt = s4;
      out.settings = {r.x[0] * scale, r.x[1] * scale, r.x[2] * scale, r.x[3] * scale};
      out.q_improved = true;
      out.converged = false;
    }
  }
  return out;
}

double antisymmetric_margin(int n, double a) {
  const double zp = gaussian::coupling_terms(n, a).plus;
  std::vector<double> b, c;
  double c_min = std::numeric_limits<double>::infinity();
  double slope0 = 0.0;  // limit t -> 0 of the scaled margin
  for (int m = 0; m <= n; ++m) {
    const double d = n - 2.0 * m;
    b.push_back(static_cast<double>(svetlichny::coefficient(n, m)));
    c.push_back(a * n + zp * (d * d - n));
    c_min = std::min(c_min, c.back());
    slope0 -= b.back() * c.back();
  }
  // A non-decaying Gaussian along the ray means unbounded correlations.
  if (!(c_min > 0.0)) return std::numeric_limits<double>::infinity();
  double best = slope0;
  constexpr int kGrid = 600;
  const double t_lo = 1e-9 / c_min, t_hi = 40.0 / c_min;
  for (int i = 0; i <= kGrid; ++i) {
    const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / kGrid);
    double g = 0.0;
    for (std::size_t m = 0; m < b.size(); ++m) g += b[m] * std::expm1(-c[m] * t);
    best = std::max(best, g / t);
  }
  return best;
}

double threshold(int n, double tol) {
  if (n < 3 || n % 2 == 0) {
    throw DomainError("threshold: defined for odd n >= 3 only, got n=" + std::to_string(n));
  }
  double lo = 1.0, hi = 2.0;
  if (antisymmetric_margin(n, lo) > 0.0 || !(antisymmetric_margin(n, hi) > 0.0)) {
    throw BracketError("threshold: no sign change of the violation margin on (1, 2] for n=" +
                       std::to_string(n));
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (antisymmetric_margin(n, mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<ScanRow> scan_vs_a(int n, std::span<const double> a_grid, const ParityOptions& options) {
  std::vector<ScanRow> rows;
  rows.reserve(a_grid.size());
  ParityOptions opt = options;
  for (double a : a_grid) {
    const SymmetricGaussianState state(n, a);
    ScanRow row{a, optimize_settings(state, opt)};
    opt.warm_start = row.optimum.settings;
    rows.push_back(row);
  }
  return rows;
}

Landscape landscape(int n, double a, std::span<const double> p0_grid,
                    std::span<const double> p1_grid, int threads, kernels::Isa isa) {
  const SymmetricGaussianState state(n, a);
  const auto form = parity_form(state);
  Landscape out;
  out.p0.assign(p0_grid.begin(), p0_grid.end());
  out.p1.assign(p1_grid.begin(), p1_grid.end());
  out.values.resize(out.p0.size() * out.p1.size());
  parallel_for(out.p0.size(), threads, [&](std::size_t i) {
    std::vector<double> row_p0(out.p1.size(), out.p0[i]);
    kernels::parity_batch(isa, form, row_p0, out.p1,
                          std::span<double>(out.values).subspan(i * out.p1.size(), out.p1.size()));
  });
  return out;
}

}  // namespace svlab::parity
