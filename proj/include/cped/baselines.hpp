#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cped/space.hpp"

namespace cped {

// Naive transforms that adapt an unconditional HPI evaluator to conditional
// spaces. Selected via the CLI flag --extension; only meaningful with
// --method ped.
enum class Extension { filtering, imputation, expansion };

Extension parse_extension(const std::string& name);  // throws UsageError
std::string to_string(Extension e);

struct TransformedSet {
    EvaluationSet evalset;  // over a synthesized unconditional space
    Extension transform;
    std::optional<std::string> target_param;  // filtering only

    // Provenance: which trial rows were modified, and the substitute value.
    std::map<std::string, std::vector<std::size_t>> modified_rows;
    std::map<std::string, ParamValue> imputed_values;
    std::size_t dropped_trials = 0;  // filtering only
};

// Drops trials where `param` is inactive and synthesizes an unconditional
// single-parameter space whose domain is the hull of the active regime
// domains. The result may contain zero trials (downstream HPI is 0 then).
TransformedSet apply_filtering(const EvaluationSet& evalset, const std::string& param);

// Replaces inactive values by the midpoint of the hull of active domains
// (categorical: the first declared label). Throws DataError for a parameter
// with no active regime.
TransformedSet apply_imputation(const EvaluationSet& evalset);

// Widens each parameter's domain to [min_i lo_i, max_i hi_i] over its
// regimes; values are unchanged. Throws NumericError if any parameter has an
// inactive regime (use filtering or imputation instead).
TransformedSet apply_expansion(const EvaluationSet& evalset);

}  // namespace cped
