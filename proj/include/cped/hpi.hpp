#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cped/baselines.hpp"
#include "cped/space.hpp"
#include "cped/stats.hpp"

namespace cped {

enum class Method { cped, ped, standard, naive_within };

Method parse_method(const std::string& name);  // throws UsageError
std::string to_string(Method m);

// How per-regime one-dimensional distributions are estimated. `kde` is the
// production path (Gaussian KDE for continuous domains, Laplace-smoothed
// frequencies for categorical). `empirical_pmf` uses exact unsmoothed
// frequencies over observed values, which makes the variance identities
// exact on discrete evaluation sets.
enum class DensityMode { kde, empirical_pmf };

struct AnalyzeOptions {
    int grid_size = 128;
    DensityMode density_mode = DensityMode::kde;
    // Minimum active samples per regime per subset for a KDE fit; below this
    // the regime's divergence is set to 0 with a warning flag. Ignored in
    // empirical_pmf mode (exact frequencies are stable at any sample size).
    int min_samples = 2;
};

// Per-regime statistics of one parameter over the top-gamma' / top-gamma
// subsets: occupancy shares, sample counts, and the within-regime Pearson
// divergence between the two subset densities.
struct RegimeStats {
    int index = 1;
    bool inactive_domain = false;
    double alpha = 0.0;  // share of top-gamma' trials in this regime
    double beta = 0.0;   // share of top-gamma trials in this regime
    std::size_t count_top_prime = 0;  // for bot regimes this is the bot count
    std::size_t count_top = 0;
    // Active values per subset (empty for bot regimes; see the counts).
    std::vector<ParamValue> samples_top_prime;
    std::vector<ParamValue> samples_top;
    double divergence = 0.0;
    bool low_sample_warning = false;
};

struct VarianceBreakdown {
    std::string param;
    double within = 0.0;
    double inter = 0.0;
    double total = 0.0;  // within + inter
    double kappa = 0.0;  // gamma'/gamma
    std::vector<RegimeStats> regimes;
};

struct HpiReport {
    std::string method;
    QuantilePair quantiles;
    std::map<std::string, double> raw;
    std::map<std::string, double> normalized;
    bool degenerate_flag = false;

    // Diagnostics (not part of the serialized report).
    std::vector<VarianceBreakdown> breakdowns;
    double kappa = 0.0;            // gamma'/gamma as used by the estimators
    double empirical_kappa = 0.0;  // |D_gamma'| / |D_gamma| (differs under ties)
    double laplace_smoothing = 1.0;
};

// Computes alpha/beta occupancy and within-regime divergences for one
// parameter (the per-regime loop of the closed-form estimator).
std::vector<RegimeStats> regime_stats(const EvaluationSet& evalset, const std::string& param,
                                      const QuantilePair& q, const AnalyzeOptions& opts = {});

// (gamma'/gamma)^2 * sum_{i: beta_i>0} (alpha_i^2 / beta_i) * divergence_i.
double cped_within_variance(const std::vector<RegimeStats>& stats, const QuantilePair& q);

// Within-regime term plus the inter-regime term
// (gamma'/gamma)^2 * D_PE(alpha || beta).
VarianceBreakdown standard_local_variance(const std::vector<RegimeStats>& stats,
                                          const QuantilePair& q);

// Unweighted aggregation (gamma'/gamma)^2 * sum_i divergence_i.
double naive_within_variance(const std::vector<RegimeStats>& stats, const QuantilePair& q);

// The single-domain estimator. Requires `param` to be unconditional in the
// evalset's space (apply a baselines transform first otherwise); throws
// NumericError directing the caller to `baselines` or method cped.
double ped_variance(const EvaluationSet& evalset, const std::string& param,
                    const QuantilePair& q, int grid_size = 128);
double ped_variance(const EvaluationSet& evalset, const std::string& param,
                    const QuantilePair& q, const AnalyzeOptions& opts);

struct NormalizedHpi {
    std::map<std::string, double> normalized;
    bool degenerate_flag = false;
};

// Divides every raw variance by their sum; all zeros (with the flag set)
// when the sum is zero. Throws NumericError on a negative raw value.
NormalizedHpi normalize_hpi(const std::map<std::string, double>& raw);

// Per-parameter raw variance by the selected method, then normalization.
// For method ped on a conditional space an extension must be named.
HpiReport analyze(const EvaluationSet& evalset, const QuantilePair& q, Method method,
                  const AnalyzeOptions& opts = {}, std::optional<Extension> extension = {});

}  // namespace cped
