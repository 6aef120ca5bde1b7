#pragma once

// Test-only brute-force oracle. Evaluates the variance definitions directly
// on small discrete instances by materializing g (the conditional mean of
// the top-gamma' indicator given the extended (regime, value) coordinate)
// and taking variances over the top-gamma subset. Shares nothing with the
// estimator code paths it is used to check.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cped/bench.hpp"
#include "cped/space.hpp"

namespace cped::testing {

struct DiscreteInstance {
    EvaluationSet evalset;
    double gamma_prime = 0.0;
    double gamma = 1.0;
    std::size_t a = 0;  // |top-gamma'| by construction
    std::size_t b = 0;  // |top-gamma| by construction

    // Regime of each parameter in each trial, recorded at generation time
    // (independent of assign_regime).
    std::map<std::string, std::vector<int>> regimes_by_trial;

    // Set for gating instances only.
    std::string gate;
    std::string child;
};

// Random conditional space (2-3 parameters, 2-4 values each), exhaustive or
// near-exhaustive enumeration with distinct objectives. The trial count is
// reduced to a power of two so gamma'/gamma equals |D_gamma'|/|D_gamma|
// exactly in floating point.
DiscreteInstance make_random_instance(SplitMix64& rng);

// Instance satisfying the gating assumptions: the child's regime is a
// function of the gate and the objective depends on the gate only through
// that regime. Quantiles fall on objective tie-group boundaries so the top
// subsets contain whole groups.
DiscreteInstance make_gating_instance(SplitMix64& rng);

struct OracleBreakdown {
    double v_within = 0.0;             // E_I[ Var_Z( g | I ) ]
    double v_inter = 0.0;              // Var_I( E_Z[ g | I ] )
    double v_total = 0.0;              // Var( g )
    double extended_divergence = 0.0;  // D_PE of the extended-marginal PMFs
    double empirical_kappa = 0.0;      // |D_gamma'| / |D_gamma|
};

OracleBreakdown brute_force_variances(const DiscreteInstance& inst, const std::string& param);

}  // namespace cped::testing
