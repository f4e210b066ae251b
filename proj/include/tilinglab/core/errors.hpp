#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tilinglab {

// Base of every error raised by the library. The CLI maps these to exit code 2
// (bad input) and everything else to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// A documented precondition does not hold (e.g. det != 1 where det = 1 is required).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class SingularLatticeError : public Error {
public:
    using Error::Error;
};

class CapacityError : public Error {
public:
    CapacityError(const std::string& what, std::size_t cap)
        : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

} // namespace tilinglab
