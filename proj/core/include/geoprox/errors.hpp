#pragma once

#include <stdexcept>
#include <string>

namespace geoprox {

// Caller violated a documented precondition (bad dimensions, parameters out
// of range, malformed configuration).
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what)
        : std::invalid_argument(what) {}
};

// Data-dependent failure discovered while computing: loss of positive
// definiteness, antipodal sphere pairs, iteration caps, non-finite values.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace geoprox
