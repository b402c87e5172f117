#pragma once

// Svetlichny / Mermin-Klyshko combinatorics, independent of the measurement
// that produces the correlators.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace svlab::svetlichny {

// Signed weight of E^m_n in the permutation-invariant Svetlichny sum:
// (-1)^ceil((n - 2(m+1)) / 4) * C(n, m). Throws DomainError unless 0 <= m <= n.
std::int64_t coefficient(int n, int m);

using CoefficientFn = std::function<std::int64_t(int, int)>;

// E[m] is the correlator with m parties at setting 1 and n - m at setting 0.
class SymmetricCorrelations {
 public:
  SymmetricCorrelations(int n, std::vector<double> e);

  int n() const noexcept { return n_; }
  std::span<const double> values() const noexcept { return e_; }
  double operator[](int m) const { return e_[static_cast<std::size_t>(m)]; }

 private:
  int n_;
  std::vector<double> e_;
};

// Correlators for every setting string; bit j of the index is the setting of
// party j + 1.
class FullCorrelationTable {
 public:
  FullCorrelationTable(int n, std::vector<double> values);

  int n() const noexcept { return n_; }
  std::span<const double> values() const noexcept { return v_; }
  double operator[](std::size_t idx) const { return v_[idx]; }

 private:
  int n_;
  std::vector<double> v_;
};

inline constexpr double kCorrelatorSlack = 1e-9;

double svetlichny_symmetric(const SymmetricCorrelations& corr);
double svetlichny_symmetric(const SymmetricCorrelations& corr, const CoefficientFn& coeff);

double svetlichny_general(const FullCorrelationTable& table);

// Expands permutation-invariant correlators to the full 2^n table.
FullCorrelationTable expand(const SymmetricCorrelations& corr);

// Coefficients of the Mermin-Klyshko polynomial M_n over the 2^n setting
// strings, built recursively with the outermost split at `split`
// (1 <= split <= n-1) and unit splits below. `barred` gives M-bar.
std::vector<double> mermin_polynomial(int n, int split = 1, bool barred = false);

// Coefficients of S_n: M_n for even n, (M_n + M-bar_n) / 2 for odd n.
std::vector<double> svetlichny_polynomial(int n, int split = 1);

// Largest quantum value 2^((n - 1 - n mod 2) / 2).
double quantum_bound(int n);

}  // namespace svlab::svetlichny
