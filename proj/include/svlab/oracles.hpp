#pragma once

// Slow, independent reference computations used by the test suite and by
// `svlab validate`. Nothing here is on a production code path.

#include <array>

#include "svlab/fock_state.hpp"
#include "svlab/parity.hpp"
#include "svlab/pseudospin.hpp"

namespace svlab::oracles {

// pi^n W(xi) at the phase point with m modes at (q1, p1) and the remaining
// modes at (q0, p0), from the full covariance matrix.
double parity_correlation_wigner(const parity::SymmetricGaussianState& state,
                                 const parity::ParitySettings& s, int m);

// <Z^a Z^b Z^c> of the normalized truncated state using explicit
// (cutoff + 2)^3-dimensional Kronecker products. Intended for cutoff <= 8.
std::array<double, 2> dense_pseudospin_correlation(const pseudospin::TruncatedTripartiteState& state,
                                                   const std::array<pseudospin::Setting, 3>& s);

// || psi - Z_x^b Z_x^c psi || of the normalized truncated state by visiting
// every basis vector with total photon number <= cutoff + 2.
double brute_force_residual(const pseudospin::TruncatedTripartiteState& state);

// Sum of the four-case residual terms over the shell k1 + k2 + k3 = 2n for
// the untruncated state at squeezing r (the 1/cosh r factor excluded).
// Pass r = infinity for the tanh r = 1 limit. Plain term-by-term evaluation,
// usable for n up to about 40.
double shell_residual_terms(double r, int n);

}  // namespace svlab::oracles
