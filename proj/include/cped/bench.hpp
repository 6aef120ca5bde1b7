#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cped/hpi.hpp"
#include "cped/space.hpp"

namespace cped {

// ---------------------------------------------------------------------------
// Portable random source
// ---------------------------------------------------------------------------

// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, identical output on
// every platform. Used for all benchmark sampling so runs reproduce exactly.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Per-run streams are derived as base_seed XOR run_index.
std::vector<std::uint64_t> derive_seeds(std::uint64_t base_seed, std::size_t count);

// ---------------------------------------------------------------------------
// Synthetic objectives
// ---------------------------------------------------------------------------

enum class Objective { activation_disjoint, activation_overlap, regime_domains };

Objective parse_objective(const std::string& name);  // throws UsageError
std::string to_string(Objective o);

// The conditional search space bundled with each objective.
SearchSpace objective_space(Objective o);

// Objective value of a valid trial. Throws NumericError if a rule reads an
// inactive value (signals a sampler bug).
double evaluate_objective(Objective o, const Trial& trial);

// Parents are sampled uniformly over their domains in declaration order;
// children uniformly over the regime selected by their parents (inactive
// regimes assign the inactive value and consume no randomness). Objectives
// are left at zero.
std::vector<Trial> sample_uniform(const SearchSpace& space, std::size_t n, std::uint64_t seed);

// sample_uniform plus objective evaluation.
EvaluationSet sample_objective(Objective o, std::size_t n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepConfig {
    Objective objective = Objective::activation_disjoint;
    std::size_t n = 1000;
    double gamma = 1.0;
    double gamma_prime_step = 0.01;
    std::vector<std::uint64_t> seeds = derive_seeds(42, 10);
    int grid_size = 128;
};

struct SweepRow {
    double gamma_prime = 0.0;
    std::string param;
    std::string method;
    double mean_hpi = 0.0;
    double stderr_hpi = 0.0;
    int n_seeds = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

// {step, 2*step, ..., gamma - step}.
std::vector<double> gamma_prime_grid(double gamma, double step);

// One analysis per (seed, gamma') work item, aggregated across seeds into
// mean and standard error (sample stddev / sqrt(#seeds)). Degenerate
// analyses are excluded from aggregation; n_seeds counts contributors.
// Execution may use up to `jobs` worker threads; the result is deterministic
// regardless of job count.
SweepResult run_sweep(const SweepConfig& config, Method method,
                      std::optional<Extension> extension = {}, unsigned jobs = 1);

// Sweeps gamma' over a fixed evaluation set (no seeds; stderr is 0).
SweepResult sweep_evalset(const EvaluationSet& evalset, double gamma, double step, Method method,
                          std::optional<Extension> extension = {}, int grid_size = 128,
                          unsigned jobs = 1);

// Mean and standard error per (gamma', param) from per-seed reports.
// per_seed[s][g] is the report of seed s at gamma_prime_values[g].
SweepResult aggregate_seeds(const std::vector<std::vector<HpiReport>>& per_seed,
                            const std::vector<double>& gamma_prime_values,
                            const std::vector<std::string>& params, const std::string& method);

}  // namespace cped
