#include "cped/baselines.hpp"

#include <algorithm>

namespace cped {

Extension parse_extension(const std::string& name) {
    if (name == "filtering") return Extension::filtering;
    if (name == "imputation") return Extension::imputation;
    if (name == "expansion") return Extension::expansion;
    throw UsageError("extension", "unknown extension '" + name +
                                      "' (expected filtering | imputation | expansion)");
}

std::string to_string(Extension e) {
    switch (e) {
        case Extension::filtering: return "filtering";
        case Extension::imputation: return "imputation";
        case Extension::expansion: return "expansion";
    }
    return "?";
}

namespace {

// Hull of a parameter's active regime domains. Continuous: the covering
// interval; categorical: union of labels in declaration order.
Domain active_domain_hull(const ParameterSpec& p) {
    std::optional<ContinuousInterval> interval;
    std::vector<std::string> labels;
    for (const RegimeSpec& r : p.regimes) {
        if (const auto* ci = std::get_if<ContinuousInterval>(&r.domain)) {
            if (!interval) {
                interval = *ci;
            } else {
                interval->lo = std::min(interval->lo, ci->lo);
                interval->hi = std::max(interval->hi, ci->hi);
            }
        } else if (const auto* cs = std::get_if<CategoricalSet>(&r.domain)) {
            for (const std::string& l : cs->labels) {
                if (std::find(labels.begin(), labels.end(), l) == labels.end()) {
                    labels.push_back(l);
                }
            }
        }
    }
    if (interval) return *interval;
    if (!labels.empty()) return CategoricalSet{std::move(labels)};
    return InactiveDomain{};
}

ParameterSpec unconditional_param(std::string name, Domain domain) {
    ParameterSpec p;
    p.name = std::move(name);
    p.regimes.push_back(RegimeSpec{1, {}, std::move(domain)});
    return p;
}

}  // namespace

TransformedSet apply_filtering(const EvaluationSet& evalset, const std::string& param) {
    const ParameterSpec& p = evalset.space.parameter(param);
    Domain hull = active_domain_hull(p);
    if (domain_is_inactive(hull)) {
        // A parameter with no active regime keeps all trials dropped; its
        // HPI is defined as zero downstream.
        TransformedSet out{EvaluationSet{SearchSpace::create({}), {}}, Extension::filtering,
                           param, {}, {}, evalset.trials.size()};
        return out;
    }

    SearchSpace filtered_space = SearchSpace::create({unconditional_param(param, std::move(hull))});

    TransformedSet out{EvaluationSet{std::move(filtered_space), {}}, Extension::filtering, param,
                       {}, {}, 0};
    for (const Trial& t : evalset.trials) {
        const ParamValue& v = t.assignments.at(param);
        if (v.is_inactive()) {
            ++out.dropped_trials;
            continue;
        }
        Trial kept;
        kept.objective = t.objective;
        kept.assignments.emplace(param, v);
        out.evalset.trials.push_back(std::move(kept));
    }
    return out;
}

TransformedSet apply_imputation(const EvaluationSet& evalset) {
    std::vector<ParameterSpec> params;
    std::map<std::string, ParamValue> fill;
    for (const ParameterSpec& p : evalset.space.parameters()) {
        Domain hull = active_domain_hull(p);
        if (domain_is_inactive(hull)) {
            throw DataError("degenerate-parameter",
                            "'" + p.name + "' is active in no regime; imputation undefined");
        }
        if (const auto* ci = std::get_if<ContinuousInterval>(&hull)) {
            fill.emplace(p.name, ParamValue::number(ci->midpoint()));
        } else {
            fill.emplace(p.name, ParamValue::category(std::get<CategoricalSet>(hull).labels.front()));
        }
        params.push_back(unconditional_param(p.name, std::move(hull)));
    }

    TransformedSet out{EvaluationSet{SearchSpace::create(std::move(params)), {}},
                       Extension::imputation, std::nullopt, {}, {}, 0};
    for (std::size_t ti = 0; ti < evalset.trials.size(); ++ti) {
        Trial t = evalset.trials[ti];
        for (auto& [name, value] : t.assignments) {
            if (value.is_inactive()) {
                value = fill.at(name);
                out.modified_rows[name].push_back(ti);
            }
        }
        out.evalset.trials.push_back(std::move(t));
    }
    out.imputed_values = std::move(fill);
    return out;
}

TransformedSet apply_expansion(const EvaluationSet& evalset) {
    std::vector<ParameterSpec> params;
    for (const ParameterSpec& p : evalset.space.parameters()) {
        for (const RegimeSpec& r : p.regimes) {
            if (domain_is_inactive(r.domain)) {
                throw NumericError("inactive-regime",
                                   "'" + p.name +
                                       "' has an inactive regime; expansion targets "
                                       "regime-dependent ranges only (use filtering or "
                                       "imputation)");
            }
        }
        params.push_back(unconditional_param(p.name, active_domain_hull(p)));
    }

    TransformedSet out{EvaluationSet{SearchSpace::create(std::move(params)), evalset.trials},
                       Extension::expansion, std::nullopt, {}, {}, 0};
    return out;
}

}  // namespace cped
