#pragma once

#include <stdexcept>
#include <string>

namespace sint {

/// Invalid input to an operation (bad argument, violated precondition).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numeric routine failed to certify its result at the allowed precision.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sint
