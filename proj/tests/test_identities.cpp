// Property tests of the closed-form estimators against the brute-force
// oracle on random discrete instances. The acceptance suite re-runs these
// checks at full instance counts; here a smaller batch keeps unit runs fast.

#include <cmath>

#include "doctest.h"

#include "cped/hpi.hpp"
#include "oracle.hpp"

using namespace cped;
using namespace cped::testing;

namespace {

AnalyzeOptions exact_pmf_options() {
    AnalyzeOptions opts;
    opts.density_mode = DensityMode::empirical_pmf;
    return opts;
}

double weighted_within_sum(const std::vector<RegimeStats>& stats) {
    double acc = 0.0;
    for (const RegimeStats& rs : stats) {
        if (rs.beta > 0.0) acc += rs.alpha * rs.alpha / rs.beta * rs.divergence;
    }
    return acc;
}

bool near_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

double inter_divergence(const std::vector<RegimeStats>& stats) {
    std::vector<double> alpha, beta;
    for (const RegimeStats& rs : stats) {
        alpha.push_back(rs.alpha);
        beta.push_back(rs.beta);
    }
    return pearson_divergence_discrete(alpha, beta);
}

}  // namespace

TEST_CASE("closed form matches the brute-force definition on random instances") {
    SplitMix64 rng(2024);
    for (int rep = 0; rep < 15; ++rep) {
        const DiscreteInstance inst = make_random_instance(rng);
        const QuantilePair q = QuantilePair::create(inst.gamma_prime, inst.gamma);
        CAPTURE(rep);
        CAPTURE(inst.evalset.trials.size());
        CAPTURE(inst.a);
        CAPTURE(inst.b);

        for (const ParameterSpec& p : inst.evalset.space.parameters()) {
            const OracleBreakdown oracle = brute_force_variances(inst, p.name);
            // The instances are built so gamma'/gamma is exact.
            CHECK(q.kappa() == oracle.empirical_kappa);

            const auto stats = regime_stats(inst.evalset, p.name, q, exact_pmf_options());

            // Closed form == definition-level within-regime variance.
            const double within = cped_within_variance(stats, q);
            CAPTURE(within);
            CAPTURE(oracle.v_within);
            CHECK(near_abs(within, oracle.v_within, 1e-10));

            // Regime-wise divergence decomposition.
            const double lhs = oracle.extended_divergence;
            const double rhs = weighted_within_sum(stats) + inter_divergence(stats);
            CAPTURE(lhs);
            CAPTURE(rhs);
            CHECK(near_abs(lhs, rhs, 1e-10));

            // The standard local variance equals the full definition-level variance.
            const VarianceBreakdown bd = standard_local_variance(stats, q);
            CHECK(near_abs(bd.total, oracle.v_total, 1e-10));
            CHECK(near_abs(bd.inter, oracle.v_inter, 1e-10));

            // Nesting is never violated.
            for (const RegimeStats& rs : stats) {
                CHECK((rs.alpha == 0.0 || rs.beta > 0.0));
                CHECK(rs.divergence >= 0.0);
            }

            // The recorded generation-time regimes agree with assign_regime.
            const auto& recorded = inst.regimes_by_trial.at(p.name);
            for (std::size_t i = 0; i < inst.evalset.trials.size(); ++i) {
                CHECK(assign_regime(inst.evalset.space, p.name, inst.evalset.trials[i]) ==
                      recorded[i]);
            }
        }
    }
}

TEST_CASE("gating leakage identity on instances satisfying its assumptions") {
    SplitMix64 rng(555);
    for (int rep = 0; rep < 12; ++rep) {
        const DiscreteInstance inst = make_gating_instance(rng);
        const QuantilePair q = QuantilePair::create(inst.gamma_prime, inst.gamma);
        CAPTURE(rep);
        CAPTURE(inst.evalset.trials.size());

        const auto child_stats = regime_stats(inst.evalset, inst.child, q, exact_pmf_options());
        const auto gate_stats = regime_stats(inst.evalset, inst.gate, q, exact_pmf_options());
        const VarianceBreakdown child_bd = standard_local_variance(child_stats, q);
        const VarianceBreakdown gate_bd = standard_local_variance(gate_stats, q);

        // total(child) = within(child) + total(gate).
        CAPTURE(child_bd.total);
        CAPTURE(child_bd.within);
        CAPTURE(gate_bd.total);
        CHECK(near_abs(child_bd.total, child_bd.within + gate_bd.total, 1e-10));
        // Corollary: the gate never out-scores the conditioned child.
        CHECK(gate_bd.total <= child_bd.total + 1e-10);

        // On tie-grouped instances kappa may differ from the empirical ratio;
        // the definition-level identity then holds after rescaling.
        const OracleBreakdown oracle = brute_force_variances(inst, inst.child);
        const double scale = (q.kappa() / oracle.empirical_kappa) *
                             (q.kappa() / oracle.empirical_kappa);
        CHECK(near_abs(child_bd.within, oracle.v_within * scale, 1e-10));
    }
}
