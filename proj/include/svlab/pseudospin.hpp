#pragma once

// Pseudospin observables on the three-mode squeezed state:
//   Z(theta, phi) = cos(theta) Z_z + sin(theta) (e^{-i phi} Z_+ + e^{i phi} Z_-)
// with Z_z = sum_m (|2m+1><2m+1| - |2m><2m|) and Z_+ = sum_m |2m+1><2m|.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "svlab/fock_state.hpp"

namespace svlab::pseudospin {

enum class Mode { a = 0, b = 1, c = 2 };

struct Setting {
  double theta = 0.0;
  double phi = 0.0;

  // Same operator with theta in [0, pi] and phi in (-pi, pi].
  Setting canonical() const;
};

struct PseudospinSettingSet {
  // angles[mode][choice]
  std::array<std::array<Setting, 2>, 3> angles{};

  Setting at(Mode mode, int choice) const { return angles[static_cast<int>(mode)][choice]; }
  PseudospinSettingSet canonical() const;

  static PseudospinSettingSet from_vector(const std::vector<double>& v);  // 12 angles
  std::vector<double> to_vector() const;
};

// Settings under which S_3 reduces to (sqrt 2 / 4)(1 + 3 <Z_x^b Z_x^c>):
// mode a (0, pi/2) and (pi/2, pi/2), mode b (pi/4, pi/2) and (3pi/4, pi/2),
// mode c (0, -pi/2) and (-pi/2, -pi/2).
PseudospinSettingSet fixed_settings();

// Applies Z(setting) to one mode. Components pushed past the capacity are
// dropped and their weight is added to the result's leakage.
FockTensor apply_pseudospin(const FockTensor& psi, Mode mode, Setting setting);

// <psi| Z^a Z^b Z^c |psi> / <psi|psi> by explicit application on a dense
// tensor. Returns the complex value; leakage is reported through `leakage`.
std::complex<double> correlation_dense(const FockTensor& psi, const std::array<Setting, 3>& s,
                                       double* leakage = nullptr);

// Expectation values <O_alpha^a O_beta^b O_gamma^c> of the normalized
// truncated state for O in {1, Z_z, Z_+, Z_-}. The operators act on the
// untruncated Fock ladder, so no weight leaks at the cutoff.
class CorrelationTensor {
 public:
  enum Op { identity = 0, z = 1, raise = 2, lower = 3 };

  explicit CorrelationTensor(const TruncatedTripartiteState& state);

  double entry(int alpha, int beta, int gamma) const { return t_[(alpha * 4 + beta) * 4 + gamma]; }
  double norm_sq() const noexcept { return norm_sq_; }

  // Throws PrecisionError if the imaginary part exceeds 1e-10.
  double correlation(const std::array<Setting, 3>& s) const;

  // <Z_x^b Z_x^c> with Z_x = Z_+ + Z_-.
  double xx() const;

  // Largest amplitude on odd total photon number seen while building.
  double odd_parity_weight() const noexcept { return odd_weight_; }

 private:
  std::array<double, 64> t_{};
  double norm_sq_ = 0.0;
  double odd_weight_ = 0.0;
};

double correlation(const TruncatedTripartiteState& state, const std::array<Setting, 3>& s);

double svetlichny_pseudospin(const CorrelationTensor& t, const PseudospinSettingSet& settings);
double svetlichny_pseudospin(const TruncatedTripartiteState& state,
                             const PseudospinSettingSet& settings);

// (sqrt 2 / 4)(1 + 3 <Z_x^b Z_x^c>). Throws ParityViolationError if the
// state has odd-parity components above 1e-10.
double svetlichny_fixed_settings(const CorrelationTensor& t);
double svetlichny_fixed_settings(const TruncatedTripartiteState& state);
// Same quantity for an arbitrary dense tensor, by explicit application.
double svetlichny_fixed_settings(const FockTensor& psi);

struct PseudospinOptions {
  int starts = 20;  // random starts besides the fixed-settings seed
  std::uint64_t seed = 20240101;
  int threads = 1;
  double x_tol = 1e-8;
  int max_evaluations = 20000;
};

struct PseudospinOptimum {
  double s_opt = 0.0;
  PseudospinSettingSet settings;
  bool converged = false;
  int start = -1;  // -1 for the fixed-settings seed, else the random start index
};

PseudospinOptimum optimize_pseudospin_settings(const TruncatedTripartiteState& state,
                                               const PseudospinOptions& options = {});
PseudospinOptimum optimize_pseudospin_settings(const CorrelationTensor& t,
                                               const PseudospinOptions& options = {});

}  // namespace svlab::pseudospin
