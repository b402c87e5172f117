#pragma once

// Distance between the three-mode squeezed state and its image under
// Z_x^b Z_x^c, and the per-shell contributions to it at infinite squeezing.

#include <span>
#include <vector>

#include "svlab/fock_state.hpp"
#include "svlab/kernels.hpp"

namespace svlab::pseudospin {

// || psi - Z_x^b Z_x^c psi || for the normalized truncated state, summed from
// the closed-form amplitudes. Equals sqrt(2 - 2 <Z_x^b Z_x^c>).
double residual_norm(const TruncatedTripartiteState& state);
double residual_norm(double r, int cutoff, double tail_tolerance = kDefaultTailTolerance);

// Shell-2n contribution to the squared residual in the limit r -> infinity,
// without the overall 1/cosh r factor. Throws DomainError for n < 0 and
// PrecisionError when the log-magnitudes become too large to resolve.
double shell_term_f(int n, kernels::Isa isa = kernels::active_isa());

// shell_term_f for each entry of ns; shells are spread over `threads`
// workers and each value is computed by exactly one of them.
std::vector<double> shell_terms(std::span<const int> ns, int threads = 1,
                                kernels::Isa isa = kernels::active_isa());

}  // namespace svlab::pseudospin
