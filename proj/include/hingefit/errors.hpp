// Error types shared across the hingefit library.
#pragma once

#include <stdexcept>
#include <string>

namespace hingefit {

// Time integration produced a non-finite state.
class divergence_error : public std::runtime_error {
public:
    divergence_error(double t, const std::string& what_arg)
        : std::runtime_error(what_arg), time_(t) {}

    // Time of the first non-finite sample.
    double time() const noexcept { return time_; }

private:
    double time_;
};

// A bracketed root search found no sign change.
class no_root_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed data file (CSV, model file).
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid run-configuration key or value.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hingefit
