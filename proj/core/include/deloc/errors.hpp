#ifndef DELOC_ERRORS_HPP
#define DELOC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include "deloc/common.hpp"

namespace deloc {

/// Malformed or inconsistent input data. `path()` carries a JSON-pointer-like
/// location when the error originates from a parsed document.
class SchemaError : public std::invalid_argument {
public:
    explicit SchemaError(const std::string& what, std::string path = {})
        : std::invalid_argument(path.empty() ? what : path + ": " + what),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// An iterative numerical routine exhausted its refinement budget. Carries the
/// best partial value and the estimated size of what was left on the table.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, Complex partial, double tail)
        : std::runtime_error(what), partial_(partial), tail_(tail) {}

    Complex partial_value() const noexcept { return partial_; }
    double tail_estimate() const noexcept { return tail_; }

private:
    Complex partial_;
    double tail_;
};

/// Two independent evaluation routes of the same quantity disagreed.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested evaluation sits on a zero or pole of a rational function.
class PoleError : public std::runtime_error {
public:
    PoleError(const std::string& what, int order)
        : std::runtime_error(what), order_(order) {}

    /// Net order at the requested point: positive = zero, negative = pole.
    int order() const noexcept { return order_; }

private:
    int order_;
};

/// A structural invariant the library itself maintains was found broken.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace deloc

#endif
