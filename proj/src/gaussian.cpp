#include "svlab/gaussian.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "svlab/error.hpp"

namespace svlab::gaussian {

Couplings coupling_terms(int n, double a) {
  if (n < 2) throw DomainError("coupling_terms: need n >= 2, got " + std::to_string(n));
  if (!(a >= 1.0)) throw DomainError("coupling_terms: need a >= 1, got " + std::to_string(a));
  const double nd = n;
  const double a2m1 = a * a - 1.0;
  // Radicand is non-negative for a >= 1 since a*n >= n - 2.
  const double radicand = a2m1 * (a * a * nd * nd - (nd - 2.0) * (nd - 2.0));
  const double root = std::sqrt(std::max(radicand, 0.0));
  const double base = a2m1 * (nd - 2.0);
  const double denom = 2.0 * a * (nd - 1.0);
  return {(base + root) / denom, (base - root) / denom};
}

SymmetricGaussianState::SymmetricGaussianState(int n_modes, double a)
    : n_modes_(n_modes), a_(a), couplings_(coupling_terms(n_modes, a)) {}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0 || m_.rows() % 2 != 0) {
    throw DimensionError("covariance matrix must be square with even positive dimension");
  }
  if (!m_.allFinite()) throw DimensionError("covariance matrix has non-finite entries");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DimensionError("covariance matrix is not symmetric");
  }
}

CovarianceMatrix CovarianceMatrix::identity(int n_modes) {
  return CovarianceMatrix(Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

PhasePoint::PhasePoint(Eigen::VectorXd coords) : v_(std::move(coords)) {
  if (v_.size() == 0 || v_.size() % 2 != 0) {
    throw DimensionError("phase point must have even positive length");
  }
}

CovarianceMatrix build_covariance(const SymmetricGaussianState& state) {
  const int n = state.n_modes();
  const auto [zp, zm] = state.couplings();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(2 * i, 2 * j) = i == j ? state.a() : zp;
      m(2 * i + 1, 2 * j + 1) = i == j ? state.a() : zm;
    }
  }
  return CovarianceMatrix(std::move(m));
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    omega(2 * j, 2 * j + 1) = 1.0;
    omega(2 * j + 1, 2 * j) = -1.0;
  }
  return omega;
}

bool check_physical(const CovarianceMatrix& cov) {
  const Eigen::MatrixXcd h =
      cov.matrix().cast<std::complex<double>>() +
      std::complex<double>(0.0, 1.0) * symplectic_form(cov.n_modes()).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return false;
  return es.eigenvalues().minCoeff() >= -kPhysicalitySlack;
}

double purity(const CovarianceMatrix& cov) {
  const double det = cov.matrix().determinant();
  if (!(det > 0.0)) throw DomainError("purity: det sigma must be positive");
  return 1.0 / std::sqrt(det);
}

double wigner(const CovarianceMatrix& cov, const PhasePoint& point) {
  if (point.dim() != cov.dim()) {
    throw DimensionError("wigner: phase point length " + std::to_string(point.dim()) +
                         " does not match covariance dimension " + std::to_string(cov.dim()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.matrix());
  const auto& ev = es.eigenvalues();
  if (es.info() != Eigen::Success || !(ev.minCoeff() > 0.0) ||
      ev.maxCoeff() / ev.minCoeff() > kMaxCondition) {
    throw SingularMatrixError("wigner: covariance matrix is numerically singular");
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(cov.matrix());
  const double quad = point.coords().dot(ldlt.solve(point.coords()));
  const double log_det = ev.array().log().sum();
  const double n = cov.n_modes();
  return std::exp(-quad - 0.5 * log_det - n * std::log(std::numbers::pi));
}

double a_from_squeezing(double r) {
  if (!(r >= 0.0)) throw DomainError("a_from_squeezing: need r >= 0");
  return std::sqrt(5.0 + 4.0 * std::cosh(2.0 * r)) / 3.0;
}

}  // namespace svlab::gaussian
