#include "svlab/fock_state.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "svlab/error.hpp"

namespace svlab::pseudospin {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> log_factorials(int max_k) {
  std::vector<double> lf(static_cast<std::size_t>(max_k) + 1, 0.0);
  for (int k = 1; k <= max_k; ++k) lf[k] = std::lgamma(k + 1.0);
  return lf;
}

void check_r(double r) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("squeezing r must be finite and >= 0");
}

// Probability of shell n, tanh^{2n} C(2n, n) 4^{-n} / cosh r, by recurrence.
// Calls visit(n, w_n) until the remaining geometric tail is below `floor`
// relative to what has been seen, or visit returns false.
template <typename Visit>
void for_each_shell_weight(double r, double floor, Visit&& visit) {
  const double q = std::tanh(r) * std::tanh(r);
  double w = 1.0 / std::cosh(r);
  for (int n = 0;; ++n) {
    if (!visit(n, w)) return;
    if (q == 0.0) return;
    w *= q * (2.0 * n + 1.0) / (2.0 * n + 2.0);
    if (w / (1.0 - q) < floor) return;
  }
}

}  // namespace

double tail_weight(double r, int cutoff) {
  check_r(r);
  if (cutoff < 0) throw DomainError("cutoff must be >= 0");
  const int last_kept = cutoff / 2;
  double tail = 0.0;
  for_each_shell_weight(r, 1e-300, [&](int n, double w) {
    if (n > last_kept) {
      tail += w;
      return w > 1e-19 * tail;
    }
    return true;
  });
  return tail;
}

int choose_cutoff(double r, double tail_tolerance) {
  check_r(r);
  if (!(tail_tolerance > 0.0)) throw DomainError("tail tolerance must be positive");
  std::vector<double> w;
  for_each_shell_weight(r, tail_tolerance * 1e-6, [&](int, double wn) {
    w.push_back(wn);
    return true;
  });
  double tail = 0.0;
  for (int n = static_cast<int>(w.size()) - 1; n >= 0; --n) {
    tail += w[n];
    if (tail >= tail_tolerance) return 2 * n;
  }
  return 0;
}

double TruncatedTripartiteState::log_shell_coefficient(int n) const {
  const double base = -0.5 * std::log(std::cosh(r_));
  if (n == 0) return base;
  if (r_ == 0.0) return kNegInf;
  return base + n * std::log(std::tanh(r_) / 6.0) + lf_[2 * n] - lf_[n];
}

double TruncatedTripartiteState::pair_factor(int k1, int s) const {
  if (k1 < 0 || s < 0 || k1 + s > cutoff_ || (k1 + s) % 2 != 0) return 0.0;
  return pair_[offset_[s] + static_cast<std::size_t>(k1 / 2)];
}

double TruncatedTripartiteState::split_factor(int s, int k2) const {
  if (k2 < 0 || k2 > s || s > cutoff_) return 0.0;
  return std::exp(0.5 * (lf_[s] - lf_[k2] - lf_[s - k2] - s * std::numbers::ln2));
}

double TruncatedTripartiteState::amplitude(int k1, int k2, int k3) const {
  if (k1 < 0 || k2 < 0 || k3 < 0) return 0.0;
  const int total = k1 + k2 + k3;
  if (total > cutoff_ || total % 2 != 0) return 0.0;
  const double log_c = log_shell_coefficient(total / 2);
  return std::exp(log_c - 0.5 * (lf_[k1] + lf_[k2] + lf_[k3]));
}

TruncatedTripartiteState ghz_state_fock(double r, int cutoff, double tail_tolerance) {
  check_r(r);
  if (cutoff < 0 || cutoff % 2 != 0) throw DomainError("cutoff must be even and >= 0");

  TruncatedTripartiteState st;
  st.r_ = r;
  st.cutoff_ = cutoff;
  st.lf_ = log_factorials(cutoff + 2);

  const double deficit = tail_weight(r, cutoff);
  st.norm_deficit_ = deficit;
  if (deficit > tail_tolerance) {
    throw TailToleranceError("cutoff " + std::to_string(cutoff) + " discards probability " +
                             std::to_string(deficit) + " at r = " + std::to_string(r));
  }

  // pair_factor(k1, s) = C_n sqrt(2^s / (k1! s!)) with k1 + s = 2n; only k1
  // with the parity of s is stored, at position k1 / 2 within column s.
  st.offset_.assign(static_cast<std::size_t>(cutoff) + 2, 0);
  for (int s = 0; s <= cutoff; ++s) {
    const int count = (cutoff - s) / 2 + 1;
    st.offset_[s + 1] = st.offset_[s] + static_cast<std::size_t>(count);
  }
  st.pair_.assign(st.offset_.back(), 0.0);
  std::vector<double> log_c(static_cast<std::size_t>(cutoff / 2) + 1);
  for (int n = 0; n <= cutoff / 2; ++n) log_c[n] = st.log_shell_coefficient(n);
  for (int s = 0; s <= cutoff; ++s) {
    const double col = -0.5 * st.lf_[s] + 0.5 * s * std::numbers::ln2;
    for (int k1 = s % 2; k1 + s <= cutoff; k1 += 2) {
      const double lc = log_c[(k1 + s) / 2];
      st.pair_[st.offset_[s] + static_cast<std::size_t>(k1 / 2)] =
          lc == kNegInf ? 0.0 : std::exp(lc + col - 0.5 * st.lf_[k1]);
    }
  }
  return st;
}

TruncatedTripartiteState ghz_state(double r, double tail_tolerance) {
  return ghz_state_fock(r, choose_cutoff(r, tail_tolerance), tail_tolerance);
}

FockTensor::FockTensor(int capacity) : capacity_(capacity) {
  if (capacity < 0) throw DomainError("capacity must be >= 0");
  const auto side = static_cast<std::size_t>(capacity) + 1;
  data_.assign(side * side * side, {0.0, 0.0});
}

FockTensor FockTensor::from_state(const TruncatedTripartiteState& state, int capacity) {
  FockTensor t(capacity);
  for (int k1 = 0; k1 <= capacity; ++k1)
    for (int k2 = 0; k1 + k2 <= capacity; ++k2)
      for (int k3 = 0; k1 + k2 + k3 <= capacity; ++k3) t.at(k1, k2, k3) = state.amplitude(k1, k2, k3);
  return t;
}

void FockTensor::add_leakage(double dropped_norm_sq) {
  leakage_ = std::sqrt(leakage_ * leakage_ + dropped_norm_sq);
}

double FockTensor::norm_sq() const {
  double s = 0.0;
  for (const auto& c : data_) s += std::norm(c);
  return s;
}

std::complex<double> FockTensor::inner(const FockTensor& other) const {
  if (other.capacity_ != capacity_) throw DimensionError("tensor capacities differ");
  std::complex<double> s{0.0, 0.0};
  for (std::size_t i = 0; i < data_.size(); ++i) s += std::conj(data_[i]) * other.data_[i];
  return s;
}

}  // namespace svlab::pseudospin
