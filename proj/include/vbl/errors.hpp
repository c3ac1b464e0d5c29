#pragma once

#include <stdexcept>
#include <string>

namespace vbl {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series or iteration hit its term cap before meeting the tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Angular triple that lies in none of the integration regions.
class RegionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Zero-distance evaluation point or a duplicate seed.
class DegenerateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive integration stopped without meeting the requested tolerance.
/// The best estimate is kept so callers can still report it.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double value, double err_estimate)
        : std::runtime_error(what), value_(value), err_estimate_(err_estimate) {}

    double value() const noexcept { return value_; }
    double err_estimate() const noexcept { return err_estimate_; }

private:
    double value_;
    double err_estimate_;
};

}  // namespace vbl
