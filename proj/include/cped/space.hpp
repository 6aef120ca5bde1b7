#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cped/errors.hpp"

namespace cped {

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

struct ContinuousInterval {
    double lo = 0.0;
    double hi = 1.0;

    double width() const { return hi - lo; }
    double midpoint() const { return (lo + hi) / 2.0; }
    bool contains(double v) const { return v >= lo && v <= hi; }

    friend bool operator==(const ContinuousInterval&, const ContinuousInterval&) = default;
};

struct CategoricalSet {
    std::vector<std::string> labels;

    bool contains(const std::string& label) const;

    friend bool operator==(const CategoricalSet&, const CategoricalSet&) = default;
};

// The singleton "this parameter is absent" domain.
struct InactiveDomain {
    friend bool operator==(const InactiveDomain&, const InactiveDomain&) = default;
};

using Domain = std::variant<ContinuousInterval, CategoricalSet, InactiveDomain>;

inline bool domain_is_inactive(const Domain& d) {
    return std::holds_alternative<InactiveDomain>(d);
}
inline bool domain_is_continuous(const Domain& d) {
    return std::holds_alternative<ContinuousInterval>(d);
}
inline bool domain_is_categorical(const Domain& d) {
    return std::holds_alternative<CategoricalSet>(d);
}

// ---------------------------------------------------------------------------
// Regime conditions
// ---------------------------------------------------------------------------

struct EqualsTest {
    std::string label;
    friend bool operator==(const EqualsTest&, const EqualsTest&) = default;
};

// Half-open [lo, hi); `closed_hi` is set during space validation on the final
// covering interval so a real-valued parent always matches exactly one regime.
struct IntervalTest {
    double lo = 0.0;
    double hi = 1.0;
    bool closed_hi = false;
    friend bool operator==(const IntervalTest&, const IntervalTest&) = default;
};

struct RegimeCondition {
    std::string parent;
    std::variant<EqualsTest, IntervalTest> test;
    friend bool operator==(const RegimeCondition&, const RegimeCondition&) = default;
};

struct RegimeSpec {
    int index = 1;                            // 1-based, assigned by declaration order
    std::vector<RegimeCondition> conditions;  // conjunction; empty means "always"
    Domain domain;
    friend bool operator==(const RegimeSpec&, const RegimeSpec&) = default;
};

struct ParameterSpec {
    std::string name;
    std::vector<RegimeSpec> regimes;

    bool is_unconditional() const {
        return regimes.size() == 1 && regimes.front().conditions.empty();
    }
    friend bool operator==(const ParameterSpec&, const ParameterSpec&) = default;
};

// ---------------------------------------------------------------------------
// SearchSpace
// ---------------------------------------------------------------------------

// Immutable after construction; safe for concurrent read access.
class SearchSpace {
public:
    SearchSpace() = default;  // the empty space

    // Validates every invariant (unique names, parents precede children,
    // regime exhaustiveness/disjointness over each parent's domain,
    // consistent domain kinds). Throws DataError on violation.
    static SearchSpace create(std::vector<ParameterSpec> parameters);

    const std::vector<ParameterSpec>& parameters() const { return parameters_; }
    std::size_t size() const { return parameters_.size(); }

    const ParameterSpec* find(const std::string& name) const;
    const ParameterSpec& parameter(const std::string& name) const;  // throws DataError

    friend bool operator==(const SearchSpace&, const SearchSpace&) = default;

private:
    std::vector<ParameterSpec> parameters_;
    std::map<std::string, std::size_t> by_name_;
};

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

struct InactiveValue {
    friend bool operator==(const InactiveValue&, const InactiveValue&) = default;
};

class ParamValue {
public:
    static ParamValue number(double v);  // throws DataError on non-finite v
    static ParamValue category(std::string label);
    static ParamValue inactive();

    bool is_number() const { return std::holds_alternative<double>(value_); }
    bool is_category() const { return std::holds_alternative<std::string>(value_); }
    bool is_inactive() const { return std::holds_alternative<InactiveValue>(value_); }

    double number() const;                 // throws std::logic_error on misuse
    const std::string& category() const;   // throws std::logic_error on misuse

    friend bool operator==(const ParamValue&, const ParamValue&) = default;

private:
    std::variant<InactiveValue, double, std::string> value_;
};

struct Trial {
    std::map<std::string, ParamValue> assignments;
    double objective = 0.0;
    friend bool operator==(const Trial&, const Trial&) = default;
};

struct EvaluationSet {
    SearchSpace space;
    std::vector<Trial> trials;
};

struct Violation {
    std::string param;
    std::string reason;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Parses and validates a search-space document. Errors carry field paths,
// e.g. `parameters[1].regimes[0].domain.lo`.
SearchSpace parse_space(const std::string& document);
SearchSpace parse_space_file(const std::filesystem::path& path);

// Emits the structured representation parse_space accepts (round-trips).
std::string serialize_space(const SearchSpace& space);

// Returns the unique 1-based regime index whose conditions hold under the
// trial's parent assignments. Throws DataError if the parent value is
// inactive or no/multiple regimes match.
int assign_regime(const SearchSpace& space, const std::string& param, const Trial& trial);
int assign_regime(const SearchSpace& space, const std::string& param,
                  const std::map<std::string, ParamValue>& assignments);

// Empty result means the trial satisfies every invariant.
std::vector<Violation> validate_trial(const SearchSpace& space, const Trial& trial);

// Loads a JSON Lines trials file and validates every line against the space.
// Errors report 1-based line numbers. Throws DataError (including empty file).
EvaluationSet load_trials(const std::filesystem::path& path, SearchSpace space);

// Validates all trials; throws DataError naming the first offending trial.
EvaluationSet make_evaluation_set(SearchSpace space, std::vector<Trial> trials);

}  // namespace cped
