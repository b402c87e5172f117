#pragma once

// Fock-basis representation of the three-mode squeezed state
//   |psi> = cosh(r)^(-1/2) exp(tanh(r)/2 * ((a+ + b+ + c+)/sqrt 3)^2) |000>
// truncated to total photon number <= cutoff.
//
// Amplitudes are real, fully symmetric, vanish on odd total photon number,
// and factor as psi(k1, k2, k3) = pair_factor(k1, s) * split_factor(s, k2)
// with s = k2 + k3, where pair_factor^2 is the joint probability of k1
// photons in mode a and s photons in modes b and c, and split_factor^2 is
// the binomial(s, 1/2) probability of the split between b and c.

#include <complex>
#include <span>
#include <vector>

namespace svlab::pseudospin {

inline constexpr double kDefaultTailTolerance = 1e-8;

// Probability discarded by truncating at total photon number `cutoff`.
double tail_weight(double r, int cutoff);

// Smallest even cutoff whose tail weight is below `tail_tolerance`.
int choose_cutoff(double r, double tail_tolerance = kDefaultTailTolerance);

class TruncatedTripartiteState {
 public:
  double r() const noexcept { return r_; }
  int cutoff() const noexcept { return cutoff_; }
  double norm_deficit() const noexcept { return norm_deficit_; }

  // c[k1, k2, k3]; zero for odd total or total above the cutoff.
  double amplitude(int k1, int k2, int k3) const;

  double pair_factor(int k1, int s) const;
  double split_factor(int s, int k2) const;

  // ln C_n for shell n (total 2n): -ln cosh(r)/2 + n ln(tanh(r)/6) + ln (2n)! - ln n!
  double log_shell_coefficient(int n) const;

  std::span<const double> log_factorial() const noexcept { return lf_; }

 private:
  friend TruncatedTripartiteState ghz_state_fock(double r, int cutoff, double tail_tolerance);

  double r_ = 0.0;
  int cutoff_ = 0;
  double norm_deficit_ = 0.0;
  std::vector<double> lf_;              // ln k!, k <= cutoff + 2
  std::vector<std::size_t> offset_;     // start of column s in pair_
  std::vector<double> pair_;            // pair_factor, parity-compatible k1 only
};

// Throws DomainError for r < 0 or an odd/negative cutoff, and
// TailToleranceError when the discarded probability exceeds tail_tolerance.
TruncatedTripartiteState ghz_state_fock(double r, int cutoff,
                                        double tail_tolerance = kDefaultTailTolerance);

// ghz_state_fock with the cutoff picked by choose_cutoff.
TruncatedTripartiteState ghz_state(double r, double tail_tolerance = kDefaultTailTolerance);

// Dense complex amplitudes over k1 + k2 + k3 <= capacity, for small
// truncations and direct operator application.
class FockTensor {
 public:
  explicit FockTensor(int capacity);

  static FockTensor from_state(const TruncatedTripartiteState& state, int capacity);

  int capacity() const noexcept { return capacity_; }
  std::complex<double>& at(int k1, int k2, int k3) { return data_[index(k1, k2, k3)]; }
  const std::complex<double>& at(int k1, int k2, int k3) const { return data_[index(k1, k2, k3)]; }

  // Norm of the amplitude dropped at the capacity boundary so far.
  double leakage() const noexcept { return leakage_; }
  void add_leakage(double dropped_norm_sq);

  double norm_sq() const;
  // <this|other>
  std::complex<double> inner(const FockTensor& other) const;

 private:
  std::size_t index(int k1, int k2, int k3) const {
    const auto side = static_cast<std::size_t>(capacity_ + 1);
    return (static_cast<std::size_t>(k1) * side + static_cast<std::size_t>(k2)) * side +
           static_cast<std::size_t>(k3);
  }

  int capacity_;
  double leakage_ = 0.0;
  std::vector<std::complex<double>> data_;
};

}  // namespace svlab::pseudospin
