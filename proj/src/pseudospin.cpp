#include "svlab/pseudospin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "svlab/error.hpp"
#include "svlab/nelder_mead.hpp"
#include "svlab/parallel.hpp"
#include "svlab/svetlichny.hpp"

namespace svlab::pseudospin {
namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

double wrap_angle(double x) {
  double w = std::remainder(x, 2.0 * pi);  // [-pi, pi]
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

// Coefficients of Z(theta, phi) on {1, Z_z, Z_+, Z_-}.
std::array<cplx, 4> op_coefficients(Setting s) {
  const double st = std::sin(s.theta);
  return {cplx{0.0, 0.0}, cplx{std::cos(s.theta), 0.0}, std::polar(st, -s.phi),
          std::polar(st, s.phi)};
}

// Single-mode action of {1, Z_z, Z_+, Z_-} on |k>: target level and sign,
// or target -1 when the operator annihilates |k>.
struct Move {
  int target;
  double sign;
};

Move single_mode(int op, int k) {
  const bool even = k % 2 == 0;
  switch (op) {
    case CorrelationTensor::identity:
      return {k, 1.0};
    case CorrelationTensor::z:
      return {k, even ? -1.0 : 1.0};
    case CorrelationTensor::raise:
      return {even ? k + 1 : -1, 1.0};
    default:
      return {even ? -1 : k - 1, 1.0};
  }
}

}  // namespace

Setting Setting::canonical() const {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw DomainError("angles must be finite");
  double t = wrap_angle(theta);
  double p = phi;
  if (t < 0.0) {
    t = -t;
    p += pi;
  }
  return {t, wrap_angle(p)};
}

PseudospinSettingSet PseudospinSettingSet::canonical() const {
  PseudospinSettingSet out;
  for (int j = 0; j < 3; ++j)
    for (int x = 0; x < 2; ++x) out.angles[j][x] = angles[j][x].canonical();
  return out;
}

PseudospinSettingSet PseudospinSettingSet::from_vector(const std::vector<double>& v) {
  if (v.size() != 12) throw DimensionError("a pseudospin setting set has 12 angles");
  PseudospinSettingSet out;
  for (int j = 0; j < 3; ++j)
    for (int x = 0; x < 2; ++x) out.angles[j][x] = {v[4 * j + 2 * x], v[4 * j + 2 * x + 1]};
  return out;
}

std::vector<double> PseudospinSettingSet::to_vector() const {
  std::vector<double> v(12);
  for (int j = 0; j < 3; ++j)
    for (int x = 0; x < 2; ++x) {
      v[4 * j + 2 * x] = angles[j][x].theta;
      v[4 * j + 2 * x + 1] = angles[j][x].phi;
    }
  return v;
}

PseudospinSettingSet fixed_settings() {
  PseudospinSettingSet s;
  s.angles[0] = {Setting{0.0, pi / 2}, Setting{pi / 2, pi / 2}};
  s.angles[1] = {Setting{pi / 4, pi / 2}, Setting{3 * pi / 4, pi / 2}};
  s.angles[2] = {Setting{0.0, -pi / 2}, Setting{-pi / 2, -pi / 2}};
  return s;
}

FockTensor apply_pseudospin(const FockTensor& psi, Mode mode, Setting setting) {
  const int cap = psi.capacity();
  const auto coef = op_coefficients(setting);
  FockTensor out(cap);
  out.add_leakage(psi.leakage() * psi.leakage());
  const int m = static_cast<int>(mode);
  double dropped = 0.0;
  for (int k1 = 0; k1 <= cap; ++k1)
    for (int k2 = 0; k1 + k2 <= cap; ++k2)
      for (int k3 = 0; k1 + k2 + k3 <= cap; ++k3) {
        const cplx c = psi.at(k1, k2, k3);
        if (c == cplx{0.0, 0.0}) continue;
        std::array<int, 3> k{k1, k2, k3};
        const bool even = k[m] % 2 == 0;
        out.at(k1, k2, k3) += coef[1] * (even ? -1.0 : 1.0) * c;
        if (even) {
          if (k1 + k2 + k3 + 1 > cap) {
            dropped += std::norm(coef[2] * c);
            continue;
          }
          k[m] += 1;
          out.at(k[0], k[1], k[2]) += coef[2] * c;
        } else {
          k[m] -= 1;
          out.at(k[0], k[1], k[2]) += coef[3] * c;
        }
      }
  out.add_leakage(dropped);
  return out;
}

cplx correlation_dense(const FockTensor& psi, const std::array<Setting, 3>& s, double* leakage) {
  FockTensor phi = apply_pseudospin(psi, Mode::c, s[2]);
  phi = apply_pseudospin(phi, Mode::b, s[1]);
  phi = apply_pseudospin(phi, Mode::a, s[0]);
  if (leakage) *leakage = phi.leakage();
  return psi.inner(phi) / psi.norm_sq();
}

CorrelationTensor::CorrelationTensor(const TruncatedTripartiteState& state) {
  const int n_max = state.cutoff();
  const auto width = static_cast<std::size_t>(n_max) + 1;

  // h[op][s][d + 2] = sum_k1 sign * u(k1, s) u(op(k1), s + d)
  std::vector<double> h(4 * width * 5, 0.0);
  auto h_at = [&](int op, int s, int d) -> double& {
    return h[(static_cast<std::size_t>(op) * width + static_cast<std::size_t>(s)) * 5 +
             static_cast<std::size_t>(d + 2)];
  };
  for (int s = 0; s <= n_max; ++s)
    for (int d = -2; d <= 2; ++d) {
      const int s2 = s + d;
      if (s2 < 0 || s2 > n_max) continue;
      for (int op = 0; op < 4; ++op) {
        double acc = 0.0;
        for (int k1 = s % 2; k1 + s <= n_max; k1 += 2) {
          const Move mv = single_mode(op, k1);
          if (mv.target < 0) continue;
          acc += mv.sign * state.pair_factor(k1, s) * state.pair_factor(mv.target, s2);
        }
        h_at(op, s, d) = acc;
      }
    }

  for (int s = 0; s <= n_max; ++s)
    for (int k2 = 0; k2 <= s; ++k2) {
      const int k3 = s - k2;
      const double v = state.split_factor(s, k2);
      if (v == 0.0) continue;
      for (int beta = 0; beta < 4; ++beta) {
        const Move mb = single_mode(beta, k2);
        if (mb.target < 0) continue;
        for (int gamma = 0; gamma < 4; ++gamma) {
          const Move mc = single_mode(gamma, k3);
          if (mc.target < 0) continue;
          const int s2 = mb.target + mc.target;
          if (s2 > n_max) continue;
          const double w = mb.sign * mc.sign * v * state.split_factor(s2, mb.target);
          if (w == 0.0) continue;
          for (int alpha = 0; alpha < 4; ++alpha)
            t_[(alpha * 4 + beta) * 4 + gamma] += w * h_at(alpha, s, s2 - s);
        }
      }
    }

  norm_sq_ = t_[0];
  if (!(norm_sq_ > 0.0)) throw PrecisionError("truncated state has zero norm");
  for (double& x : t_) x /= norm_sq_;
  odd_weight_ = std::max(0.0, 0.5 * (1.0 + entry(z, z, z)));
}

double CorrelationTensor::correlation(const std::array<Setting, 3>& s) const {
  const auto ca = op_coefficients(s[0]);
  const auto cb = op_coefficients(s[1]);
  const auto cc = op_coefficients(s[2]);
  cplx acc{0.0, 0.0};
  for (int a = 1; a < 4; ++a)
    for (int b = 1; b < 4; ++b)
      for (int c = 1; c < 4; ++c) acc += ca[a] * cb[b] * cc[c] * entry(a, b, c);
  if (std::abs(acc.imag()) > 1e-10)
    throw PrecisionError("pseudospin correlator has imaginary part " + std::to_string(acc.imag()));
  return acc.real();
}

double CorrelationTensor::xx() const {
  return entry(identity, raise, raise) + entry(identity, raise, lower) +
         entry(identity, lower, raise) + entry(identity, lower, lower);
}

double correlation(const TruncatedTripartiteState& state, const std::array<Setting, 3>& s) {
  return CorrelationTensor(state).correlation(s);
}

double svetlichny_pseudospin(const CorrelationTensor& t, const PseudospinSettingSet& settings) {
  std::vector<double> values(8);
  for (int idx = 0; idx < 8; ++idx) {
    values[idx] = t.correlation({settings.at(Mode::a, idx & 1), settings.at(Mode::b, (idx >> 1) & 1),
                                 settings.at(Mode::c, (idx >> 2) & 1)});
  }
  return svetlichny::svetlichny_general(svetlichny::FullCorrelationTable(3, std::move(values)));
}

double svetlichny_pseudospin(const TruncatedTripartiteState& state,
                             const PseudospinSettingSet& settings) {
  return svetlichny_pseudospin(CorrelationTensor(state), settings);
}

double svetlichny_fixed_settings(const CorrelationTensor& t) {
  if (t.odd_parity_weight() > 1e-10)
    throw ParityViolationError("state has odd-parity weight " + std::to_string(t.odd_parity_weight()));
  return std::numbers::sqrt2 / 4.0 * (1.0 + 3.0 * t.xx());
}

double svetlichny_fixed_settings(const TruncatedTripartiteState& state) {
  return svetlichny_fixed_settings(CorrelationTensor(state));
}

double svetlichny_fixed_settings(const FockTensor& psi) {
  const int cap = psi.capacity();
  double odd = 0.0;
  for (int k1 = 0; k1 <= cap; ++k1)
    for (int k2 = 0; k1 + k2 <= cap; ++k2)
      for (int k3 = 0; k1 + k2 + k3 <= cap; ++k3)
        if ((k1 + k2 + k3) % 2 == 1) odd = std::max(odd, std::abs(psi.at(k1, k2, k3)));
  if (odd > 1e-10)
    throw ParityViolationError("state has odd-parity amplitude " + std::to_string(odd));
  const Setting x{pi / 2, 0.0};
  FockTensor phi = apply_pseudospin(psi, Mode::c, x);
  phi = apply_pseudospin(phi, Mode::b, x);
  const double xx = (psi.inner(phi) / psi.norm_sq()).real();
  return std::numbers::sqrt2 / 4.0 * (1.0 + 3.0 * xx);
}

PseudospinOptimum optimize_pseudospin_settings(const TruncatedTripartiteState& state,
                                               const PseudospinOptions& options) {
  return optimize_pseudospin_settings(CorrelationTensor(state), options);
}

PseudospinOptimum optimize_pseudospin_settings(const CorrelationTensor& t,
                                               const PseudospinOptions& options) {
  if (options.starts < 0) throw DomainError("start count must be >= 0");
  std::vector<std::vector<double>> seeds;
  seeds.push_back(fixed_settings().to_vector());
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> theta(0.0, pi);
  std::uniform_real_distribution<double> phi(-pi, pi);
  for (int i = 0; i < options.starts; ++i) {
    std::vector<double> v(12);
    for (int j = 0; j < 12; j += 2) {
      v[j] = theta(rng);
      v[j + 1] = phi(rng);
    }
    seeds.push_back(std::move(v));
  }

  const optim::Objective objective = [&t](std::span<const double> x) {
    return -svetlichny_pseudospin(t, PseudospinSettingSet::from_vector({x.begin(), x.end()}));
  };
  optim::NelderMeadOptions nm;
  nm.initial_step = 0.3;
  nm.x_tol = options.x_tol;
  nm.max_evaluations = options.max_evaluations;
  nm.restarts = 2;

  std::vector<optim::NelderMeadResult> results(seeds.size());
  parallel_for(seeds.size(), options.threads,
               [&](std::size_t i) { results[i] = optim::nelder_mead(objective, seeds[i], nm); });

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].value < results[best].value) best = i;

  PseudospinOptimum out;
  out.settings = PseudospinSettingSet::from_vector(results[best].x).canonical();
  out.s_opt = svetlichny_pseudospin(t, out.settings);
  out.converged = results[best].converged;
  out.start = static_cast<int>(best) - 1;
  return out;
}

}  // namespace svlab::pseudospin
