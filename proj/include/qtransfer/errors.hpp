#pragma once

#include <stdexcept>
#include <string>

namespace qtransfer {

// Malformed arguments: bad index sets, wrong dimensions, out-of-range integers.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Channel parameter outside the range where a protocol is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Request exceeds the dense-matrix size limits.
class ResourceError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Root search found more than one sign change.
class AmbiguityError : public std::runtime_error {
public:
    AmbiguityError(const std::string& what, int n) : std::runtime_error(what), n_(n) {}
    int n() const noexcept { return n_; }

private:
    int n_;
};

}  // namespace qtransfer
