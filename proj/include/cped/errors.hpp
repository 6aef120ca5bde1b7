#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cped {

// Error taxonomy mirrors the CLI exit codes:
//   UsageError -> 1, DataError -> 2, NumericError -> 3.
// `code` is a short machine-parsable tag printed as `error: <code>: <message>`.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Bad flags, invalid quantile combinations, unsupported method/extension pairs.
class UsageError : public Error {
public:
    using Error::Error;
};

// Malformed input files, schema violations, trial validation failures.
class DataError : public Error {
public:
    using Error::Error;
};

// Infeasible quantiles, absolute-continuity violations, estimator preconditions.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace cped
