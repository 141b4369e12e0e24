#pragma once

#include "conclab/config.hpp"
#include "conclab/report.hpp"

namespace conclab::exp {

/// Poincare, modified log-Sobolev, spectral-gap, deviation and Dirichlet
/// consistency checks on one slice. Throws BudgetError when the slice is too
/// large to enumerate.
ExperimentReport run_graph_check(const cfg::GraphCheckConfig& c);

/// DP versus brute-force sigma_k, the 6(k-1)/(n-1) sweep, and the sigma_2
/// and leave-one-out identities.
ExperimentReport run_sympoly_check(const cfg::SympolyCheckConfig& c);

}  // namespace conclab::exp
