#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arborlab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input text that does not match the map grammar. `position` is a 0-based
// byte offset into the parsed string.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A documented operation precondition was violated by the caller's data
// (non-PCF map handed to the witness pipeline, Hensel seed off the fibre, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// An explicit artifact cap was hit (iteration caps, degree caps, search
// budgets). The answer is unknown, not negative.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

}  // namespace arborlab
