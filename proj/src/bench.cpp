#include "cped/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

namespace cped {

std::vector<std::uint64_t> derive_seeds(std::uint64_t base_seed, std::size_t count) {
    std::vector<std::uint64_t> seeds;
    seeds.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        seeds.push_back(base_seed ^ static_cast<std::uint64_t>(i));
    }
    return seeds;
}

Objective parse_objective(const std::string& name) {
    if (name == "activation-disjoint") return Objective::activation_disjoint;
    if (name == "activation-overlap") return Objective::activation_overlap;
    if (name == "regime-domains") return Objective::regime_domains;
    throw UsageError("objective",
                     "unknown objective '" + name +
                         "' (expected activation-disjoint | activation-overlap | regime-domains)");
}

std::string to_string(Objective o) {
    switch (o) {
        case Objective::activation_disjoint: return "activation-disjoint";
        case Objective::activation_overlap: return "activation-overlap";
        case Objective::regime_domains: return "regime-domains";
    }
    return "?";
}

namespace {

RegimeCondition below_half() { return {"c", IntervalTest{0.0, 0.5, false}}; }
RegimeCondition above_half() { return {"c", IntervalTest{0.5, 1.0, false}}; }

ParameterSpec gate_param() {
    ParameterSpec c;
    c.name = "c";
    c.regimes.push_back(RegimeSpec{1, {}, ContinuousInterval{0.0, 1.0}});
    return c;
}

ParameterSpec two_regime_param(std::string name, Domain low_domain, Domain high_domain) {
    ParameterSpec p;
    p.name = std::move(name);
    p.regimes.push_back(RegimeSpec{1, {below_half()}, std::move(low_domain)});
    p.regimes.push_back(RegimeSpec{2, {above_half()}, std::move(high_domain)});
    return p;
}

}  // namespace

SearchSpace objective_space(Objective o) {
    switch (o) {
        case Objective::activation_disjoint:
            return SearchSpace::create(
                {gate_param(),
                 two_regime_param("x", ContinuousInterval{-5.0, -2.0}, InactiveDomain{}),
                 two_regime_param("y", InactiveDomain{}, ContinuousInterval{2.0, 5.0})});
        case Objective::activation_overlap:
            return SearchSpace::create(
                {gate_param(),
                 two_regime_param("x", ContinuousInterval{-5.0, 2.0}, InactiveDomain{}),
                 two_regime_param("y", InactiveDomain{}, ContinuousInterval{-2.0, 5.0})});
        case Objective::regime_domains:
            return SearchSpace::create(
                {gate_param(),
                 two_regime_param("x", ContinuousInterval{-7.0, -2.0}, ContinuousInterval{2.0, 7.0}),
                 two_regime_param("y", ContinuousInterval{-5.0, -2.0},
                                  ContinuousInterval{2.0, 5.0})});
    }
    throw std::logic_error("unreachable");
}

namespace {

double active_number(const Trial& trial, const std::string& name) {
    const ParamValue& v = trial.assignments.at(name);
    if (v.is_inactive()) {
        throw NumericError("inactive-read", "objective rule reads inactive '" + name +
                                                "' (sampler bug)");
    }
    return v.number();
}

}  // namespace

double evaluate_objective(Objective o, const Trial& trial) {
    const double c = active_number(trial, "c");
    switch (o) {
        case Objective::activation_disjoint:
        case Objective::activation_overlap:
            return c < 0.5 ? active_number(trial, "x") : active_number(trial, "y");
        case Objective::regime_domains:
            return active_number(trial, "x") + active_number(trial, "y");
    }
    throw std::logic_error("unreachable");
}

std::vector<Trial> sample_uniform(const SearchSpace& space, std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Trial> trials;
    trials.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Trial t;
        for (const ParameterSpec& p : space.parameters()) {
            const int regime = assign_regime(space, p.name, t.assignments);
            const Domain& dom = p.regimes[static_cast<std::size_t>(regime - 1)].domain;
            if (const auto* ci = std::get_if<ContinuousInterval>(&dom)) {
                t.assignments.emplace(p.name,
                                      ParamValue::number(ci->lo + ci->width() * rng.next_double()));
            } else if (const auto* cs = std::get_if<CategoricalSet>(&dom)) {
                const auto k = static_cast<std::size_t>(rng.next_double() *
                                                        static_cast<double>(cs->labels.size()));
                t.assignments.emplace(
                    p.name, ParamValue::category(cs->labels[std::min(k, cs->labels.size() - 1)]));
            } else {
                t.assignments.emplace(p.name, ParamValue::inactive());
            }
        }
        trials.push_back(std::move(t));
    }
    return trials;
}

EvaluationSet sample_objective(Objective o, std::size_t n, std::uint64_t seed) {
    SearchSpace space = objective_space(o);
    std::vector<Trial> trials = sample_uniform(space, n, seed);
    for (Trial& t : trials) {
        t.objective = evaluate_objective(o, t);
    }
    return EvaluationSet{std::move(space), std::move(trials)};
}

std::vector<double> gamma_prime_grid(double gamma, double step) {
    if (!(step > 0.0) || !(step < gamma)) {
        throw UsageError("step", "require 0 < step < gamma");
    }
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((gamma - step) / step + 1e-9));
    grid.reserve(count);
    for (std::size_t k = 1; k <= count; ++k) {
        grid.push_back(static_cast<double>(k) * step);
    }
    return grid;
}

SweepResult aggregate_seeds(const std::vector<std::vector<HpiReport>>& per_seed,
                            const std::vector<double>& gamma_prime_values,
                            const std::vector<std::string>& params, const std::string& method) {
    SweepResult result;
    for (std::size_t g = 0; g < gamma_prime_values.size(); ++g) {
        for (const std::string& param : params) {
            std::vector<double> values;
            for (const auto& reports : per_seed) {
                const HpiReport& rep = reports[g];
                if (rep.degenerate_flag) continue;  // recorded, not fatal
                values.push_back(rep.normalized.at(param));
            }
            SweepRow row;
            row.gamma_prime = gamma_prime_values[g];
            row.param = param;
            row.method = method;
            row.n_seeds = static_cast<int>(values.size());
            if (!values.empty()) {
                double mean = 0.0;
                for (double v : values) mean += v;
                mean /= static_cast<double>(values.size());
                row.mean_hpi = mean;
                if (values.size() >= 2) {
                    double ss = 0.0;
                    for (double v : values) ss += (v - mean) * (v - mean);
                    const double stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
                    row.stderr_hpi = stddev / std::sqrt(static_cast<double>(values.size()));
                }
            }
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

namespace {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Work items write
// to disjoint slots, so the merged result does not depend on scheduling.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    const unsigned n_threads = static_cast<unsigned>(
        std::min<std::size_t>(jobs, count));
    threads.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config, Method method,
                      std::optional<Extension> extension, unsigned jobs) {
    if (config.seeds.empty()) {
        throw UsageError("seeds", "at least one seed is required");
    }
    const std::vector<double> grid = gamma_prime_grid(config.gamma, config.gamma_prime_step);

    std::vector<EvaluationSet> sets;
    sets.reserve(config.seeds.size());
    for (std::uint64_t seed : config.seeds) {
        sets.push_back(sample_objective(config.objective, config.n, seed));
    }

    std::vector<std::string> params;
    for (const ParameterSpec& p : sets.front().space.parameters()) params.push_back(p.name);

    AnalyzeOptions opts;
    opts.grid_size = config.grid_size;

    std::vector<std::vector<HpiReport>> per_seed(config.seeds.size(),
                                                 std::vector<HpiReport>(grid.size()));
    parallel_for(config.seeds.size() * grid.size(), jobs, [&](std::size_t item) {
        const std::size_t s = item / grid.size();
        const std::size_t g = item % grid.size();
        const QuantilePair q = QuantilePair::create(grid[g], config.gamma);
        per_seed[s][g] = analyze(sets[s], q, method, opts, extension);
        per_seed[s][g].breakdowns.clear();  // aggregation needs the normalized map only
    });

    return aggregate_seeds(per_seed, grid, params, to_string(method));
}

SweepResult sweep_evalset(const EvaluationSet& evalset, double gamma, double step, Method method,
                          std::optional<Extension> extension, int grid_size, unsigned jobs) {
    const std::vector<double> grid = gamma_prime_grid(gamma, step);

    std::vector<std::string> params;
    for (const ParameterSpec& p : evalset.space.parameters()) params.push_back(p.name);

    AnalyzeOptions opts;
    opts.grid_size = grid_size;

    std::vector<std::vector<HpiReport>> per_seed(1, std::vector<HpiReport>(grid.size()));
    parallel_for(grid.size(), jobs, [&](std::size_t g) {
        const QuantilePair q = QuantilePair::create(grid[g], gamma);
        per_seed[0][g] = analyze(evalset, q, method, opts, extension);
        per_seed[0][g].breakdowns.clear();
    });

    return aggregate_seeds(per_seed, grid, params, to_string(method));
}

}  // namespace cped
