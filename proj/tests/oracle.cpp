#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cped::testing {

namespace {

std::size_t rand_index(SplitMix64& rng, std::size_t n) {
    return std::min(static_cast<std::size_t>(rng.next_double() * static_cast<double>(n)), n - 1);
}

int rand_int(SplitMix64& rng, int lo, int hi) {
    return lo + static_cast<int>(rand_index(rng, static_cast<std::size_t>(hi - lo + 1)));
}

bool rand_bool(SplitMix64& rng, double p_true) { return rng.next_double() < p_true; }

std::string oracle_key(const ParamValue& v) {
    if (v.is_inactive()) return "<bot>";
    if (v.is_category()) return "cat:" + v.category();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "num:%.17g", v.number());
    return buf;
}

// A regime as the generator sees it: declared domain plus the finite value
// set trials enumerate over (a single inactive value for bot regimes).
struct GenRegime {
    Domain domain;
    std::vector<ParamValue> values;
};

struct GenParam {
    ParameterSpec spec;
    std::vector<GenRegime> regimes;
    // Gate value index -> 0-based regime index of this parameter.
    std::vector<int> regime_of_gate_value;
};

struct GenGate {
    ParameterSpec spec;
    std::vector<ParamValue> values;
    bool categorical = false;
    int m = 0;
};

GenRegime make_active_regime(SplitMix64& rng, const std::string& tag, bool categorical) {
    GenRegime out;
    const int z = rand_int(rng, 2, 4);
    if (categorical) {
        CategoricalSet cs;
        for (int j = 0; j < z; ++j) cs.labels.push_back(tag + std::to_string(j));
        for (const std::string& l : cs.labels) out.values.push_back(ParamValue::category(l));
        out.domain = cs;
    } else {
        const ContinuousInterval ci{-1.0, 1.0};
        for (int j = 0; j < z; ++j) {
            const double v =
                ci.lo + ci.width() * (static_cast<double>(j) + 0.5) / static_cast<double>(z);
            out.values.push_back(ParamValue::number(v));
        }
        out.domain = ci;
    }
    return out;
}

GenGate make_gate(SplitMix64& rng, bool force_continuous) {
    GenGate out;
    out.m = rand_int(rng, 2, 4);
    out.categorical = !force_continuous && rand_bool(rng, 0.5);
    out.spec.name = "c";
    if (out.categorical) {
        static const char* kLabels[] = {"a", "b", "c", "d"};
        CategoricalSet cs;
        for (int j = 0; j < out.m; ++j) cs.labels.push_back(kLabels[j]);
        for (const std::string& l : cs.labels) out.values.push_back(ParamValue::category(l));
        out.spec.regimes.push_back(RegimeSpec{1, {}, cs});
    } else {
        for (int j = 0; j < out.m; ++j) {
            out.values.push_back(
                ParamValue::number((static_cast<double>(j) + 0.5) / static_cast<double>(out.m)));
        }
        out.spec.regimes.push_back(RegimeSpec{1, {}, ContinuousInterval{0.0, 1.0}});
    }
    return out;
}

GenParam make_unconditional_param(SplitMix64& rng, const GenGate& gate, const std::string& name,
                                  const std::string& tag) {
    GenParam out;
    out.spec.name = name;
    GenRegime r = make_active_regime(rng, tag, rand_bool(rng, 0.5));
    out.spec.regimes.push_back(RegimeSpec{1, {}, r.domain});
    out.regimes.push_back(std::move(r));
    out.regime_of_gate_value.assign(static_cast<std::size_t>(gate.m), 0);
    return out;
}

// For a categorical gate each label gets its own regime; for a continuous
// gate the value grid is cut into interval groups.
GenParam make_conditional_param(SplitMix64& rng, const GenGate& gate, const std::string& name,
                                const std::string& tag) {
    GenParam out;
    out.spec.name = name;
    out.regime_of_gate_value.assign(static_cast<std::size_t>(gate.m), 0);

    std::vector<std::vector<int>> groups;  // gate value indices per regime
    if (gate.categorical) {
        for (int j = 0; j < gate.m; ++j) groups.push_back({j});
    } else {
        const int k = rand_int(rng, 2, std::min(3, gate.m));
        std::vector<int> cuts;  // distinct cut positions in 1..m-1
        while (static_cast<int>(cuts.size()) < k - 1) {
            const int c = rand_int(rng, 1, gate.m - 1);
            if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.push_back(gate.m);
        int start = 0;
        for (int cut : cuts) {
            std::vector<int> group;
            for (int j = start; j < cut; ++j) group.push_back(j);
            groups.push_back(std::move(group));
            start = cut;
        }
    }

    const bool categorical_domains = rand_bool(rng, 0.5);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        GenRegime regime =
            (gi > 0 && rand_bool(rng, 0.25))
                ? GenRegime{InactiveDomain{}, {ParamValue::inactive()}}
                : make_active_regime(rng, tag + std::to_string(gi), categorical_domains);
        RegimeSpec spec;
        spec.index = static_cast<int>(gi) + 1;
        if (gate.categorical) {
            spec.conditions.push_back(
                {gate.spec.name,
                 EqualsTest{gate.values[static_cast<std::size_t>(groups[gi].front())].category()}});
        } else {
            const double lo =
                static_cast<double>(groups[gi].front()) / static_cast<double>(gate.m);
            const double hi =
                static_cast<double>(groups[gi].back() + 1) / static_cast<double>(gate.m);
            spec.conditions.push_back({gate.spec.name, IntervalTest{lo, hi, false}});
        }
        spec.domain = regime.domain;
        out.spec.regimes.push_back(std::move(spec));
        out.regimes.push_back(std::move(regime));
        for (int j : groups[gi]) {
            out.regime_of_gate_value[static_cast<std::size_t>(j)] = static_cast<int>(gi);
        }
    }
    return out;
}

// Exhaustive enumeration over the gate grid and each child's regime value
// set. Objectives are left at zero; regimes are recorded per trial.
void enumerate_trials(const GenGate& gate, const std::vector<GenParam>& children,
                      DiscreteInstance& inst) {
    for (int gi = 0; gi < gate.m; ++gi) {
        std::vector<const std::vector<ParamValue>*> value_sets;
        std::vector<int> child_regimes;
        for (const GenParam& child : children) {
            const int r = child.regime_of_gate_value[static_cast<std::size_t>(gi)];
            child_regimes.push_back(r);
            value_sets.push_back(&child.regimes[static_cast<std::size_t>(r)].values);
        }
        std::vector<std::size_t> cursor(children.size(), 0);
        for (;;) {
            Trial t;
            t.assignments.emplace(gate.spec.name, gate.values[static_cast<std::size_t>(gi)]);
            for (std::size_t ci = 0; ci < children.size(); ++ci) {
                t.assignments.emplace(children[ci].spec.name, (*value_sets[ci])[cursor[ci]]);
            }
            inst.evalset.trials.push_back(std::move(t));
            inst.regimes_by_trial[gate.spec.name].push_back(1);
            for (std::size_t ci = 0; ci < children.size(); ++ci) {
                inst.regimes_by_trial[children[ci].spec.name].push_back(child_regimes[ci] + 1);
            }
            // Advance the mixed-radix cursor.
            std::size_t pos = 0;
            while (pos < children.size()) {
                if (++cursor[pos] < value_sets[pos]->size()) break;
                cursor[pos] = 0;
                ++pos;
            }
            if (pos == children.size()) break;
        }
    }
}

std::vector<double> shuffled_distinct_objectives(SplitMix64& rng, std::size_t n) {
    std::vector<double> values;
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) values.push_back(static_cast<double>(i + 1));
    for (std::size_t i = n; i > 1; --i) {
        std::swap(values[i - 1], values[rand_index(rng, i)]);
    }
    return values;
}

}  // namespace

DiscreteInstance make_random_instance(SplitMix64& rng) {
    for (;;) {
        DiscreteInstance inst;
        GenGate gate = make_gate(rng, false);
        std::vector<GenParam> children;
        children.push_back(rand_bool(rng, 0.75)
                               ? make_conditional_param(rng, gate, "p1", "u")
                               : make_unconditional_param(rng, gate, "p1", "u"));
        if (rand_bool(rng, 0.5)) {
            children.push_back(rand_bool(rng, 0.5)
                                   ? make_conditional_param(rng, gate, "p2", "w")
                                   : make_unconditional_param(rng, gate, "p2", "w"));
        }

        enumerate_trials(gate, children, inst);
        const std::size_t n_full = inst.evalset.trials.size();
        if (n_full < 8) continue;

        const std::vector<double> objectives = shuffled_distinct_objectives(rng, n_full);
        for (std::size_t i = 0; i < n_full; ++i) {
            inst.evalset.trials[i].objective = objectives[i];
        }

        // Drop to a power of two so gamma'/gamma is exactly a/b in floating
        // point ("near-exhaustive" when anything is dropped).
        std::size_t n = 1;
        while (n * 2 <= n_full) n *= 2;
        while (inst.evalset.trials.size() > n) {
            const std::size_t victim = rand_index(rng, inst.evalset.trials.size());
            inst.evalset.trials.erase(inst.evalset.trials.begin() +
                                      static_cast<std::ptrdiff_t>(victim));
            for (auto& [param, regimes] : inst.regimes_by_trial) {
                regimes.erase(regimes.begin() + static_cast<std::ptrdiff_t>(victim));
            }
        }

        inst.a = static_cast<std::size_t>(rand_int(rng, 1, static_cast<int>(n) - 1));
        inst.b = static_cast<std::size_t>(
            rand_int(rng, static_cast<int>(inst.a) + 1, static_cast<int>(n)));
        inst.gamma_prime = static_cast<double>(inst.a) / static_cast<double>(n);
        inst.gamma = static_cast<double>(inst.b) / static_cast<double>(n);

        std::vector<ParameterSpec> specs{gate.spec};
        for (const GenParam& child : children) specs.push_back(child.spec);
        inst.evalset =
            make_evaluation_set(SearchSpace::create(std::move(specs)), std::move(inst.evalset.trials));
        return inst;
    }
}

DiscreteInstance make_gating_instance(SplitMix64& rng) {
    DiscreteInstance inst;
    GenGate gate = make_gate(rng, rand_bool(rng, 0.7));
    std::vector<GenParam> children;
    children.push_back(make_conditional_param(rng, gate, "d", "u"));
    const bool with_extra = rand_bool(rng, 0.5);
    if (with_extra) {
        children.push_back(make_unconditional_param(rng, gate, "e", "w"));
    }
    const GenParam& d = children.front();

    // Objective values distinct per (regime of d, d value, e value); trials
    // sharing a combo form a tie group of size = #gate values in the regime.
    std::vector<std::size_t> group_size(d.regimes.size(), 0);
    for (int r : d.regime_of_gate_value) ++group_size[static_cast<std::size_t>(r)];

    const std::size_t e_count = with_extra ? children[1].regimes[0].values.size() : 1;
    std::size_t combo_count = 0;
    std::vector<std::size_t> combo_base(d.regimes.size(), 0);
    for (std::size_t r = 0; r < d.regimes.size(); ++r) {
        combo_base[r] = combo_count;
        combo_count += d.regimes[r].values.size() * e_count;
    }
    const std::vector<double> f_values = shuffled_distinct_objectives(rng, combo_count);

    enumerate_trials(gate, children, inst);
    for (std::size_t ti = 0; ti < inst.evalset.trials.size(); ++ti) {
        Trial& t = inst.evalset.trials[ti];
        const auto r = static_cast<std::size_t>(inst.regimes_by_trial.at("d")[ti] - 1);
        const std::vector<ParamValue>& dvals = d.regimes[r].values;
        const ParamValue& dv = t.assignments.at("d");
        const std::size_t d_idx = static_cast<std::size_t>(
            std::find(dvals.begin(), dvals.end(), dv) - dvals.begin());
        std::size_t e_idx = 0;
        if (with_extra) {
            const std::vector<ParamValue>& evals = children[1].regimes[0].values;
            e_idx = static_cast<std::size_t>(
                std::find(evals.begin(), evals.end(), t.assignments.at("e")) - evals.begin());
        }
        t.objective = f_values[combo_base[r] + d_idx * e_count + e_idx];
    }

    // Cumulative tie-group boundaries in objective order.
    std::vector<std::pair<double, std::size_t>> combos;  // (objective, multiplicity)
    for (std::size_t r = 0; r < d.regimes.size(); ++r) {
        for (std::size_t j = 0; j < d.regimes[r].values.size() * e_count; ++j) {
            combos.emplace_back(f_values[combo_base[r] + j], group_size[r]);
        }
    }
    std::sort(combos.begin(), combos.end());
    std::vector<std::size_t> cumulative;
    std::size_t acc = 0;
    for (const auto& [f, mult] : combos) {
        acc += mult;
        cumulative.push_back(acc);
    }
    const std::size_t n = inst.evalset.trials.size();
    if (acc != n) throw std::logic_error("gating generator: group sizes disagree");

    const std::size_t j1 = rand_index(rng, cumulative.size() - 1);
    const std::size_t j2 = j1 + 1 + rand_index(rng, cumulative.size() - 1 - j1);
    inst.a = cumulative[j1];
    inst.b = cumulative[j2];
    inst.gamma_prime = (static_cast<double>(inst.a) + 0.5) / static_cast<double>(n);
    inst.gamma = j2 + 1 == cumulative.size()
                     ? 1.0
                     : (static_cast<double>(inst.b) + 0.5) / static_cast<double>(n);
    inst.gate = "c";
    inst.child = "d";

    std::vector<ParameterSpec> specs{gate.spec};
    for (const GenParam& child : children) specs.push_back(child.spec);
    inst.evalset =
        make_evaluation_set(SearchSpace::create(std::move(specs)), std::move(inst.evalset.trials));
    return inst;
}

OracleBreakdown brute_force_variances(const DiscreteInstance& inst, const std::string& param) {
    const auto& trials = inst.evalset.trials;
    const auto& regimes = inst.regimes_by_trial.at(param);

    std::vector<double> sorted;
    sorted.reserve(trials.size());
    for (const Trial& t : trials) sorted.push_back(t.objective);
    std::sort(sorted.begin(), sorted.end());
    const double t_prime = sorted[inst.a - 1];
    const double t_full = sorted[inst.b - 1];

    // Count occurrences of each extended (regime, value) coordinate in the
    // top subsets.
    struct Counts {
        std::size_t top = 0;
        std::size_t prime = 0;
    };
    std::map<std::pair<int, std::string>, Counts> by_coord;
    std::vector<std::size_t> top_indices;
    std::size_t n_prime = 0;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        if (trials[i].objective > t_full) continue;
        top_indices.push_back(i);
        Counts& c = by_coord[{regimes[i], oracle_key(trials[i].assignments.at(param))}];
        ++c.top;
        if (trials[i].objective <= t_prime) {
            ++c.prime;
            ++n_prime;
        }
    }
    if (top_indices.size() != inst.b || n_prime != inst.a) {
        throw std::logic_error("oracle: subset sizes disagree with the instance construction");
    }

    const double n_top = static_cast<double>(top_indices.size());

    // g over the top-gamma subset, plus per-regime and global means.
    std::map<std::pair<int, std::string>, double> g;
    for (const auto& [coord, c] : by_coord) {
        g[coord] = static_cast<double>(c.prime) / static_cast<double>(c.top);
    }
    std::map<int, double> regime_sum;
    std::map<int, double> regime_count;
    double mean_g = 0.0;
    for (std::size_t i : top_indices) {
        const double gi = g.at({regimes[i], oracle_key(trials[i].assignments.at(param))});
        mean_g += gi;
        regime_sum[regimes[i]] += gi;
        regime_count[regimes[i]] += 1.0;
    }
    mean_g /= n_top;

    OracleBreakdown out;
    out.empirical_kappa = static_cast<double>(n_prime) / n_top;
    for (std::size_t i : top_indices) {
        const double gi = g.at({regimes[i], oracle_key(trials[i].assignments.at(param))});
        const double regime_mean = regime_sum.at(regimes[i]) / regime_count.at(regimes[i]);
        out.v_within += (gi - regime_mean) * (gi - regime_mean);
        out.v_inter += (regime_mean - mean_g) * (regime_mean - mean_g);
        out.v_total += (gi - mean_g) * (gi - mean_g);
    }
    out.v_within /= n_top;
    out.v_inter /= n_top;
    out.v_total /= n_top;

    for (const auto& [coord, c] : by_coord) {
        const double q = static_cast<double>(c.top) / n_top;
        const double p = static_cast<double>(c.prime) / static_cast<double>(n_prime);
        const double r = p / q - 1.0;
        out.extended_divergence += r * r * q;
    }
    return out;
}

}  // namespace cped::testing
