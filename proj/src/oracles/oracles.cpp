#include "svlab/oracles.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "svlab/gaussian.hpp"

namespace svlab::oracles {
namespace {

using Eigen::MatrixXcd;
using cplx = std::complex<double>;

MatrixXcd single_mode_operator(int dim, pseudospin::Setting s) {
  MatrixXcd z = MatrixXcd::Zero(dim, dim);
  const cplx up = std::polar(std::sin(s.theta), -s.phi);
  for (int k = 0; k < dim; ++k) {
    z(k, k) = (k % 2 == 0 ? -1.0 : 1.0) * std::cos(s.theta);
    if (k % 2 == 0 && k + 1 < dim) {
      z(k + 1, k) = up;
      z(k, k + 1) = std::conj(up);
    }
  }
  return z;
}

}  // namespace

double parity_correlation_wigner(const parity::SymmetricGaussianState& state,
                                 const parity::ParitySettings& s, int m) {
  const int n = state.n_modes();
  Eigen::VectorXd xi(2 * n);
  for (int j = 0; j < n; ++j) {
    const bool second = j < m;
    xi(2 * j) = second ? s.q1 : s.q0;
    xi(2 * j + 1) = second ? s.p1 : s.p0;
  }
  const auto cov = gaussian::build_covariance(state);
  return std::pow(std::numbers::pi, n) * gaussian::wigner(cov, gaussian::PhasePoint(xi));
}

std::array<double, 2> dense_pseudospin_correlation(const pseudospin::TruncatedTripartiteState& state,
                                                   const std::array<pseudospin::Setting, 3>& s) {
  const int dim = state.cutoff() + 2;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim * dim * dim);
  for (int k1 = 0; k1 < dim; ++k1)
    for (int k2 = 0; k2 < dim; ++k2)
      for (int k3 = 0; k3 < dim; ++k3) psi((k1 * dim + k2) * dim + k3) = state.amplitude(k1, k2, k3);
  const MatrixXcd bc = Eigen::kroneckerProduct(single_mode_operator(dim, s[1]),
                                               single_mode_operator(dim, s[2]));
  const MatrixXcd abc = Eigen::kroneckerProduct(single_mode_operator(dim, s[0]), bc);
  const cplx v = psi.dot(abc * psi) / psi.squaredNorm();
  return {v.real(), v.imag()};
}

double brute_force_residual(const pseudospin::TruncatedTripartiteState& state) {
  const int top = state.cutoff() + 2;
  double norm_sq = 0.0;
  double res_sq = 0.0;
  for (int k1 = 0; k1 <= top; ++k1)
    for (int k2 = 0; k1 + k2 <= top; ++k2)
      for (int k3 = 0; k1 + k2 + k3 <= top; ++k3) {
        const int j2 = k2 % 2 == 0 ? k2 + 1 : k2 - 1;
        const int j3 = k3 % 2 == 0 ? k3 + 1 : k3 - 1;
        const double x = state.amplitude(k1, k2, k3);
        const double y = state.amplitude(k1, j2, j3);
        norm_sq += x * x;
        res_sq += (x - y) * (x - y);
      }
  return std::sqrt(res_sq / norm_sq);
}

double shell_residual_terms(double r, int n) {
  const double t = std::isinf(r) ? 1.0 : std::tanh(r);
  const double lead = 2.0 * (std::lgamma(2.0 * n + 1.0) - std::lgamma(n + 1.0));
  const double scale = n == 0 ? 1.0 : std::exp(lead + 2.0 * n * std::log(t / 6.0));
  auto inv_sqrt_fact = [](int k1, int k2, int k3) {
    return std::exp(-0.5 * (std::lgamma(k1 + 1.0) + std::lgamma(k2 + 1.0) + std::lgamma(k3 + 1.0)));
  };
  double sum = 0.0;
  for (int k1 = 0; k1 <= 2 * n; ++k1)
    for (int k2 = 0; k1 + k2 <= 2 * n; ++k2) {
      const int k3 = 2 * n - k1 - k2;
      const double own = inv_sqrt_fact(k1, k2, k3);
      double other;
      if (k2 % 2 == 0 && k3 % 2 == 0)
        other = t / 3.0 * (2.0 * n + 1.0) * inv_sqrt_fact(k1, k2 + 1, k3 + 1);
      else if (k2 % 2 == 1 && k3 % 2 == 1)
        other = 3.0 / t / (2.0 * n - 1.0) * inv_sqrt_fact(k1, k2 - 1, k3 - 1);
      else if (k2 % 2 == 0)
        other = inv_sqrt_fact(k1, k2 + 1, k3 - 1);
      else
        other = inv_sqrt_fact(k1, k2 - 1, k3 + 1);
      sum += (own - other) * (own - other);
    }
  return scale * sum;
}

}  // namespace svlab::oracles
