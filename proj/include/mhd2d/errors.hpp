#pragma once

#include <stdexcept>
#include <string>

namespace mhd2d {

/// Invalid parameters, malformed config, unknown names. Maps to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a field carries a nonzero mean (k = 0) mode where the
/// operation requires a mean-free input.
class MeanModeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A field sample or coefficient is NaN or infinite.
class NonFiniteError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Filesystem, checkpoint or series-file failure. Maps to exit code 5.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AbortCause { NonFinite, CflCollapse };

inline const char* to_string(AbortCause c) {
    return c == AbortCause::NonFinite ? "non_finite" : "cfl_collapse";
}

/// Numerical abort of the time integration. Maps to exit code 3.
class NumericalAbort : public std::runtime_error {
public:
    NumericalAbort(AbortCause cause, double t, double max_speed, const std::string& what)
        : std::runtime_error(what), cause_(cause), t_(t), max_speed_(max_speed) {}

    AbortCause cause() const { return cause_; }
    double time() const { return t_; }
    /// max over the grid of |u| at the time of failure (may be non-finite)
    double max_speed() const { return max_speed_; }

private:
    AbortCause cause_;
    double t_;
    double max_speed_;
};

}  // namespace mhd2d
