#include "svlab/svetlichny.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "svlab/error.hpp"

namespace svlab::svetlichny {
namespace {

std::int64_t binomial(int n, int m) {
  if (m < 0 || m > n) return 0;
  m = std::min(m, n - m);
  std::int64_t c = 1;
  for (int i = 1; i <= m; ++i) c = c * (n - m + i) / i;
  return c;
}

// Exact ceil(num / den) for den > 0.
std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  const std::int64_t q = num / den;
  return (num % den != 0 && num > 0) ? q + 1 : q;
}

void check_n(int n, const char* what) {
  if (n < 2) throw DomainError(std::string(what) + ": need n >= 2");
  if (n > 30) throw DomainError(std::string(what) + ": n > 30 exceeds table capacity");
}

void check_magnitudes(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x) || std::abs(x) > 1.0 + kCorrelatorSlack) {
      throw DomainError(std::string(what) + ": correlator outside [-1, 1]");
    }
  }
}

std::vector<double> complement(const std::vector<double>& p) {
  const std::size_t mask = p.size() - 1;
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[~i & mask];
  return out;
}

// Parties of `low` occupy the low bits of the joint index.
std::vector<double> tensor(const std::vector<double>& low, const std::vector<double>& high) {
  std::vector<double> out(low.size() * high.size(), 0.0);
  for (std::size_t h = 0; h < high.size(); ++h) {
    if (high[h] == 0.0) continue;
    for (std::size_t l = 0; l < low.size(); ++l) out[h * low.size() + l] = low[l] * high[h];
  }
  return out;
}

}  // namespace

std::int64_t coefficient(int n, int m) {
  if (n < 0 || m < 0 || m > n) {
    throw DomainError("coefficient: need 0 <= m <= n, got n=" + std::to_string(n) +
                      " m=" + std::to_string(m));
  }
  const std::int64_t exponent = ceil_div(n - 2 * (m + 1), 4);
  const std::int64_t sign = (exponent % 2 == 0) ? 1 : -1;
  return sign * binomial(n, m);
}

SymmetricCorrelations::SymmetricCorrelations(int n, std::vector<double> e)
    : n_(n), e_(std::move(e)) {
  check_n(n_, "SymmetricCorrelations");
  if (e_.size() != static_cast<std::size_t>(n_ + 1)) {
    throw DimensionError("SymmetricCorrelations: expected n + 1 correlators");
  }
  check_magnitudes(e_, "SymmetricCorrelations");
}

FullCorrelationTable::FullCorrelationTable(int n, std::vector<double> values)
    : n_(n), v_(std::move(values)) {
  check_n(n_, "FullCorrelationTable");
  if (v_.size() != (std::size_t{1} << n_)) {
    throw DimensionError("FullCorrelationTable: expected 2^n entries, got " +
                         std::to_string(v_.size()));
  }
  check_magnitudes(v_, "FullCorrelationTable");
}

double svetlichny_symmetric(const SymmetricCorrelations& corr, const CoefficientFn& coeff) {
  const int n = corr.n();
  double sum = 0.0;
  for (int m = 0; m <= n; ++m) sum += static_cast<double>(coeff(n, m)) * corr[m];
  return std::ldexp(sum, -((n + 1) / 2));
}

double svetlichny_symmetric(const SymmetricCorrelations& corr) {
  return svetlichny_symmetric(corr, coefficient);
}

FullCorrelationTable expand(const SymmetricCorrelations& corr) {
  const int n = corr.n();
  std::vector<double> v(std::size_t{1} << n);
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    v[idx] = corr[std::popcount(idx)];
  }
  return FullCorrelationTable(n, std::move(v));
}

std::vector<double> mermin_polynomial(int n, int split, bool barred) {
  if (n < 1) throw DomainError("mermin_polynomial: need n >= 1");
  if (n == 1) {
    return barred ? std::vector<double>{0.0, 1.0} : std::vector<double>{1.0, 0.0};
  }
  if (split < 1 || split > n - 1) throw DomainError("mermin_polynomial: split out of range");
  const auto head = mermin_polynomial(n - split, 1, false);
  const auto head_bar = complement(head);
  const auto tail = mermin_polynomial(split, 1, false);
  const auto tail_bar = complement(tail);

  std::vector<double> sum(tail.size()), diff(tail.size());
  for (std::size_t i = 0; i < tail.size(); ++i) {
    sum[i] = 0.5 * (tail[i] + tail_bar[i]);
    diff[i] = 0.5 * (tail[i] - tail_bar[i]);
  }
  auto out = tensor(head, sum);
  const auto second = tensor(head_bar, diff);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += second[i];
  return barred ? complement(out) : out;
}

std::vector<double> svetlichny_polynomial(int n, int split) {
  auto m = mermin_polynomial(n, split, false);
  if (n % 2 == 0) return m;
  const auto mbar = complement(m);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (m[i] + mbar[i]);
  return m;
}

double svetlichny_general(const FullCorrelationTable& table) {
  const auto poly = svetlichny_polynomial(table.n());
  double sum = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) sum += poly[i] * table[i];
  return sum;
}

double quantum_bound(int n) {
  if (n < 2) throw DomainError("quantum_bound: need n >= 2");
  // n - 1 - (n mod 2) is always odd: 2j + 1.
  const int j = (n - 1 - n % 2 - 1) / 2;
  return std::ldexp(std::numbers::sqrt2, j);
}

}  // namespace svlab::svetlichny
