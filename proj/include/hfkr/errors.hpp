#pragma once

#include <stdexcept>
#include <string>

namespace hfkr {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter set violates its documented invariants. `field()` names the
/// offending parameter so front ends can report it.
class config_error : public error {
public:
    config_error(std::string field, const std::string& what)
        : error("invalid " + field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A walk coordinate left the analytic bound [-B, B].
class bounds_exceeded : public error {
public:
    using error::error;
};

/// A perturbation index is not strictly interior to the trajectory.
class invalid_position : public error {
public:
    using error::error;
};

/// Statistical input carries no information (e.g. a bit matrix with no flips).
class degenerate_input : public error {
public:
    using error::error;
};

/// Too few distinct abscissae for a least-squares fit.
class insufficient_data : public error {
public:
    using error::error;
};

/// Failure inside a hash backend.
class hash_error : public error {
public:
    using error::error;
};

}  // namespace hfkr
