#pragma once

#include <stdexcept>
#include <string>

namespace memolab {

/// Rejected input: bad shapes, malformed files, violated preconditions.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical failure at runtime: NaN loss, non-convergence where required.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace memolab
