#include "cped/hpi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cped {

Method parse_method(const std::string& name) {
    if (name == "cped") return Method::cped;
    if (name == "ped") return Method::ped;
    if (name == "standard") return Method::standard;
    if (name == "naive-within") return Method::naive_within;
    throw UsageError("method", "unknown method '" + name +
                                   "' (expected cped | ped | standard | naive-within)");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::cped: return "cped";
        case Method::ped: return "ped";
        case Method::standard: return "standard";
        case Method::naive_within: return "naive-within";
    }
    return "?";
}

namespace {

std::string value_key(const ParamValue& v) {
    if (v.is_category()) return v.category();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v.number());
    return buf;
}

struct Subsets {
    std::vector<std::size_t> top_prime;  // indices into evalset.trials
    std::vector<std::size_t> top;
};

Subsets make_subsets(const EvaluationSet& evalset, const QuantilePair& q) {
    std::vector<double> objectives;
    objectives.reserve(evalset.trials.size());
    for (const Trial& t : evalset.trials) objectives.push_back(t.objective);
    const double t_prime = quantile_threshold(objectives, q.gamma_prime);
    const double t_full = quantile_threshold(objectives, q.gamma);

    Subsets out;
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        if (objectives[i] <= t_full) out.top.push_back(i);
        if (objectives[i] <= t_prime) out.top_prime.push_back(i);
    }
    return out;
}

// The per-regime loop shared by all estimators: occupancy shares and
// within-regime divergences for one parameter.
std::vector<RegimeStats> regime_stats_from_subsets(const EvaluationSet& evalset,
                                                   const std::string& param, const Subsets& sub,
                                                   const AnalyzeOptions& opts) {
    const ParameterSpec& p = evalset.space.parameter(param);
    const std::size_t k = p.regimes.size();

    std::vector<int> regime_of(evalset.trials.size(), 0);
    for (std::size_t idx : sub.top) {
        regime_of[idx] = assign_regime(evalset.space, param, evalset.trials[idx]);
    }

    std::vector<RegimeStats> stats(k);
    std::vector<std::vector<std::size_t>> in_top(k), in_top_prime(k);
    for (std::size_t idx : sub.top) {
        in_top[static_cast<std::size_t>(regime_of[idx] - 1)].push_back(idx);
    }
    for (std::size_t idx : sub.top_prime) {
        in_top_prime[static_cast<std::size_t>(regime_of[idx] - 1)].push_back(idx);
    }

    for (std::size_t ri = 0; ri < k; ++ri) {
        RegimeStats& rs = stats[ri];
        rs.index = static_cast<int>(ri) + 1;
        rs.inactive_domain = domain_is_inactive(p.regimes[ri].domain);
        rs.count_top = in_top[ri].size();
        rs.count_top_prime = in_top_prime[ri].size();
        rs.beta = static_cast<double>(rs.count_top) / static_cast<double>(sub.top.size());
        rs.alpha =
            static_cast<double>(rs.count_top_prime) / static_cast<double>(sub.top_prime.size());

        if (rs.alpha > 0.0 && rs.beta == 0.0) {
            throw NumericError("nesting", "regime " + std::to_string(rs.index) + " of '" + param +
                                              "' present in top-gamma' but absent from top-gamma "
                                              "(internal bug)");
        }
        if (!rs.inactive_domain) {
            for (std::size_t idx : in_top[ri]) {
                rs.samples_top.push_back(evalset.trials[idx].assignments.at(param));
            }
            for (std::size_t idx : in_top_prime[ri]) {
                rs.samples_top_prime.push_back(evalset.trials[idx].assignments.at(param));
            }
        }
        // Inactive regimes have degenerate densities; regimes absent from
        // either subset contribute nothing through the alpha^2 weight.
        if (rs.inactive_domain || rs.count_top == 0 || rs.count_top_prime == 0) {
            rs.divergence = 0.0;
            continue;
        }

        if (opts.density_mode == DensityMode::empirical_pmf) {
            std::vector<std::string> atoms;
            for (const ParamValue& v : rs.samples_top) atoms.push_back(value_key(v));
            std::sort(atoms.begin(), atoms.end());
            atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());

            std::vector<std::string> keys_top, keys_prime;
            for (const ParamValue& v : rs.samples_top) keys_top.push_back(value_key(v));
            for (const ParamValue& v : rs.samples_top_prime) keys_prime.push_back(value_key(v));
            const Density q_top = empirical_pmf(keys_top, atoms);
            const Density p_prime = empirical_pmf(keys_prime, atoms);
            rs.divergence = pearson_divergence_density(p_prime, q_top);
            continue;
        }

        if (rs.count_top < static_cast<std::size_t>(opts.min_samples) ||
            rs.count_top_prime < static_cast<std::size_t>(opts.min_samples)) {
            rs.divergence = 0.0;
            rs.low_sample_warning = true;
            continue;
        }

        if (const auto* ci = std::get_if<ContinuousInterval>(&p.regimes[ri].domain)) {
            std::vector<double> samples_top, samples_prime;
            for (const ParamValue& v : rs.samples_top) samples_top.push_back(v.number());
            for (const ParamValue& v : rs.samples_top_prime) samples_prime.push_back(v.number());
            const Density q_top = fit_continuous_density(samples_top, *ci, opts.grid_size);
            const Density p_prime = fit_continuous_density(samples_prime, *ci, opts.grid_size);
            rs.divergence = pearson_divergence_density(p_prime, q_top);
        } else {
            const auto& cs = std::get<CategoricalSet>(p.regimes[ri].domain);
            std::vector<std::string> samples_top, samples_prime;
            for (const ParamValue& v : rs.samples_top) samples_top.push_back(v.category());
            for (const ParamValue& v : rs.samples_top_prime) samples_prime.push_back(v.category());
            const Density q_top = fit_categorical_density(samples_top, cs.labels);
            const Density p_prime = fit_categorical_density(samples_prime, cs.labels);
            rs.divergence = pearson_divergence_density(p_prime, q_top);
        }
    }
    return stats;
}

}  // namespace

std::vector<RegimeStats> regime_stats(const EvaluationSet& evalset, const std::string& param,
                                      const QuantilePair& q, const AnalyzeOptions& opts) {
    return regime_stats_from_subsets(evalset, param, make_subsets(evalset, q), opts);
}

double cped_within_variance(const std::vector<RegimeStats>& stats, const QuantilePair& q) {
    const double kappa = q.kappa();
    double acc = 0.0;
    for (const RegimeStats& rs : stats) {
        if (rs.beta > 0.0) {
            acc += (rs.alpha * rs.alpha / rs.beta) * rs.divergence;
        }
    }
    return kappa * kappa * acc;
}

VarianceBreakdown standard_local_variance(const std::vector<RegimeStats>& stats,
                                          const QuantilePair& q) {
    VarianceBreakdown out;
    out.kappa = q.kappa();
    out.regimes = stats;
    out.within = cped_within_variance(stats, q);

    std::vector<double> alpha, beta;
    alpha.reserve(stats.size());
    beta.reserve(stats.size());
    for (const RegimeStats& rs : stats) {
        alpha.push_back(rs.alpha);
        beta.push_back(rs.beta);
    }
    out.inter = out.kappa * out.kappa * pearson_divergence_discrete(alpha, beta);
    out.total = out.within + out.inter;
    return out;
}

double naive_within_variance(const std::vector<RegimeStats>& stats, const QuantilePair& q) {
    const double kappa = q.kappa();
    double acc = 0.0;
    for (const RegimeStats& rs : stats) acc += rs.divergence;
    return kappa * kappa * acc;
}

double ped_variance(const EvaluationSet& evalset, const std::string& param, const QuantilePair& q,
                    const AnalyzeOptions& opts) {
    const ParameterSpec& p = evalset.space.parameter(param);
    if (!p.is_unconditional()) {
        throw NumericError("conditional-parameter",
                           "'" + param + "' is conditional (" + std::to_string(p.regimes.size()) +
                               " regimes); ped applies to unconditional parameters only. Apply a "
                               "baselines transform (--extension filtering|imputation|expansion) "
                               "or use method cped.");
    }
    return cped_within_variance(regime_stats(evalset, param, q, opts), q);
}

double ped_variance(const EvaluationSet& evalset, const std::string& param, const QuantilePair& q,
                    int grid_size) {
    AnalyzeOptions opts;
    opts.grid_size = grid_size;
    return ped_variance(evalset, param, q, opts);
}

NormalizedHpi normalize_hpi(const std::map<std::string, double>& raw) {
    double sum = 0.0;
    for (const auto& [name, v] : raw) {
        if (v < 0.0) {
            throw NumericError("negative-variance",
                               "raw variance for '" + name + "' is negative (internal bug)");
        }
        sum += v;
    }
    NormalizedHpi out;
    if (sum == 0.0) {
        out.degenerate_flag = true;
        for (const auto& [name, v] : raw) out.normalized[name] = 0.0;
        return out;
    }
    for (const auto& [name, v] : raw) out.normalized[name] = v / sum;
    return out;
}

HpiReport analyze(const EvaluationSet& evalset, const QuantilePair& q, Method method,
                  const AnalyzeOptions& opts, std::optional<Extension> extension) {
    if (evalset.trials.empty()) {
        throw DataError("empty-input", "empty evaluation set");
    }
    if (extension && method != Method::ped) {
        throw UsageError("extension", "--extension is only valid with method ped");
    }

    HpiReport rep;
    rep.method = to_string(method);
    rep.quantiles = q;
    rep.kappa = q.kappa();

    const Subsets sub = make_subsets(evalset, q);
    rep.empirical_kappa =
        static_cast<double>(sub.top_prime.size()) / static_cast<double>(sub.top.size());

    if (method == Method::ped) {
        if (!extension) {
            for (const ParameterSpec& p : evalset.space.parameters()) {
                if (!p.is_unconditional()) {
                    throw NumericError(
                        "conditional-parameter",
                        "'" + p.name +
                            "' is conditional; method ped requires an unconditional space. Name "
                            "a transform with --extension "
                            "(filtering|imputation|expansion) or use method cped.");
                }
            }
            for (const ParameterSpec& p : evalset.space.parameters()) {
                rep.raw[p.name] = ped_variance(evalset, p.name, q, opts);
            }
        } else if (*extension == Extension::filtering) {
            for (const ParameterSpec& p : evalset.space.parameters()) {
                TransformedSet ts = apply_filtering(evalset, p.name);
                rep.raw[p.name] = ts.evalset.trials.empty()
                                      ? 0.0
                                      : ped_variance(ts.evalset, p.name, q, opts);
            }
        } else {
            TransformedSet ts = *extension == Extension::imputation ? apply_imputation(evalset)
                                                                    : apply_expansion(evalset);
            for (const ParameterSpec& p : ts.evalset.space.parameters()) {
                rep.raw[p.name] = ped_variance(ts.evalset, p.name, q, opts);
            }
        }
    } else {
        for (const ParameterSpec& p : evalset.space.parameters()) {
            const auto stats = regime_stats_from_subsets(evalset, p.name, sub, opts);
            switch (method) {
                case Method::cped: {
                    VarianceBreakdown bd = standard_local_variance(stats, q);
                    bd.param = p.name;
                    rep.raw[p.name] = bd.within;
                    rep.breakdowns.push_back(std::move(bd));
                    break;
                }
                case Method::standard: {
                    VarianceBreakdown bd = standard_local_variance(stats, q);
                    bd.param = p.name;
                    rep.raw[p.name] = bd.total;
                    rep.breakdowns.push_back(std::move(bd));
                    break;
                }
                case Method::naive_within:
                    rep.raw[p.name] = naive_within_variance(stats, q);
                    break;
                case Method::ped:
                    break;  // handled above
            }
        }
    }

    NormalizedHpi norm = normalize_hpi(rep.raw);
    rep.normalized = std::move(norm.normalized);
    rep.degenerate_flag = norm.degenerate_flag;
    return rep;
}

}  // namespace cped
