#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cped/space.hpp"

namespace cped {

// ---------------------------------------------------------------------------
// Densities
// ---------------------------------------------------------------------------

// One-dimensional distribution over a regime's domain. Masses sum to 1.
struct GriddedDensity {
    ContinuousInterval domain;
    std::vector<double> points;  // uniform grid from domain.lo to domain.hi
    std::vector<double> masses;
};

struct PmfDensity {
    std::vector<std::string> labels;
    std::vector<double> masses;
};

// Point mass at the inactive value.
struct DegenerateDensity {
    friend bool operator==(const DegenerateDensity&, const DegenerateDensity&) = default;
};

using Density = std::variant<GriddedDensity, PmfDensity, DegenerateDensity>;

const std::vector<double>& density_masses(const Density& d);  // throws on Degenerate

// ---------------------------------------------------------------------------
// Quantile pair
// ---------------------------------------------------------------------------

struct QuantilePair {
    double gamma_prime = 0.1;
    double gamma = 1.0;

    // Enforces 0 < gamma_prime < gamma <= 1; throws UsageError otherwise.
    static QuantilePair create(double gamma_prime, double gamma);

    double kappa() const { return gamma_prime / gamma; }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// The floor(gamma*N)-th smallest value. The subset {v <= threshold} has at
// least floor(gamma*N) elements (more only under ties). Throws NumericError
// when floor(gamma*N) == 0, reporting the minimal feasible gamma.
double quantile_threshold(const std::vector<double>& values, double gamma);

// Trials with objective <= threshold, original order preserved.
EvaluationSet top_subset(const EvaluationSet& evalset, double gamma);

// Gaussian-kernel KDE on a uniform grid over the domain, truncated to the
// domain and renormalized. Bandwidth h = sigma_hat * n^(-1/5) with sigma_hat
// the sample standard deviation, floored at (hi-lo)*1e-3. Samples are summed
// in sorted order so the result is permutation-invariant.
Density fit_continuous_density(const std::vector<double>& samples, ContinuousInterval domain,
                               int grid_size);

// Laplace-smoothed frequencies: mass_j = (count_j + 1) / (n + L).
Density fit_categorical_density(const std::vector<std::string>& samples,
                                const std::vector<std::string>& labels);

// Unsmoothed empirical frequencies over a fixed atom set; every sample must
// be one of the atoms. Used by the exact-PMF estimator mode.
Density empirical_pmf(const std::vector<std::string>& samples,
                      const std::vector<std::string>& atoms);

// Pearson (chi^2) divergence sum_j (p_j/q_j - 1)^2 q_j over grid/label
// masses. Cells with q_j < 1e-12 contribute 0 when p_j < 1e-12 and raise the
// absolute-continuity error otherwise. Degenerate||Degenerate is 0.
double pearson_divergence_density(const Density& p, const Density& q);

// Discrete divergence between probability vectors; requires alpha_i > 0 =>
// beta_i > 0 (absolute continuity) and both summing to 1 within 1e-9.
double pearson_divergence_discrete(const std::vector<double>& alpha,
                                   const std::vector<double>& beta);

}  // namespace cped
