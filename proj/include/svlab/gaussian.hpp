#pragma once

// Pure permutationally invariant n-mode Gaussian states in covariance-matrix
// form. Quadratures are ordered (q1, p1, ..., qn, pn); the vacuum has
// covariance equal to the identity.

#include <Eigen/Dense>

namespace svlab::gaussian {

struct Couplings {
  double plus = 0.0;   // q-q correlation between distinct modes
  double minus = 0.0;  // p-p correlation between distinct modes
};

// Off-diagonal block entries z+ and z- for the n-mode family with local
// mixedness a. Throws DomainError for n < 2 or a < 1.
Couplings coupling_terms(int n, double a);

class SymmetricGaussianState {
 public:
  SymmetricGaussianState(int n_modes, double a);

  int n_modes() const noexcept { return n_modes_; }
  double a() const noexcept { return a_; }
  const Couplings& couplings() const noexcept { return couplings_; }

 private:
  int n_modes_;
  double a_;
  Couplings couplings_;
};

// Real symmetric 2n x 2n matrix. Construction rejects non-square, odd-sized,
// or asymmetric (beyond 1e-12 relative) input with DimensionError.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Eigen::MatrixXd m);

  static CovarianceMatrix identity(int n_modes);

  int n_modes() const noexcept { return static_cast<int>(m_.rows() / 2); }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

 private:
  Eigen::MatrixXd m_;
};

class PhasePoint {
 public:
  explicit PhasePoint(Eigen::VectorXd coords);

  int dim() const noexcept { return static_cast<int>(v_.size()); }
  const Eigen::VectorXd& coords() const noexcept { return v_; }

 private:
  Eigen::VectorXd v_;
};

CovarianceMatrix build_covariance(const SymmetricGaussianState& state);

// Direct sum of n single-mode symplectic forms [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int n_modes);

inline constexpr double kPhysicalitySlack = 1e-9;

// sigma + i Omega >= 0, tested on the eigenvalues of the Hermitian matrix
// with absolute slack kPhysicalitySlack.
bool check_physical(const CovarianceMatrix& cov);

// (det sigma)^(-1/2). Throws DomainError if det sigma <= 0.
double purity(const CovarianceMatrix& cov);

inline constexpr double kMaxCondition = 1e12;

// Zero-mean Gaussian Wigner function exp(-x^T sigma^-1 x) / (pi^n sqrt(det)).
// Throws SingularMatrixError when cond(sigma) exceeds kMaxCondition and
// DimensionError on a point of the wrong length.
double wigner(const CovarianceMatrix& cov, const PhasePoint& point);

// Local mixedness of the three-mode squeezed family with squeezing r:
// a = sqrt(5 + 4 cosh 2r) / 3.
double a_from_squeezing(double r);

}  // namespace svlab::gaussian
