#pragma once

#include <stdexcept>
#include <string>

namespace shishkin {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad term syntax, shape mismatch, inadmissible N.
class InputError : public Error {
public:
    using Error::Error;
};

/// The problem fails a structural condition the solver depends on.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Near-singular pivot block during block elimination.
class SingularBlockError : public Error {
public:
    SingularBlockError(std::size_t row, double condition, const std::string& what)
        : Error(what), row_(row), condition_(condition) {}

    std::size_t row() const noexcept { return row_; }
    double condition() const noexcept { return condition_; }

private:
    std::size_t row_;
    double condition_;
};

/// Registry lookup of an unknown preset or fixture.
class NotFoundError : public Error {
public:
    using Error::Error;
};

}  // namespace shishkin
