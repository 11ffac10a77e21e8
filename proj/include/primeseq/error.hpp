#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace primeseq {

enum class ErrorKind {
    InvalidLimit,
    OutOfRange,
    NotAPrime,
    InvalidArgument,
    UnsupportedCombination,
    Domain,
    StrategyLimit,
};

/// Stable snake_case identifier used in machine-readable error lines.
std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace primeseq
