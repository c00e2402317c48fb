#ifndef FOURBAND_ERRORS_HPP
#define FOURBAND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fourband {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Malformed input files, unknown presets, bad run configuration.
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

// Quadrature non-convergence, integrator step-cap overflow, contour through
// a zero, Newton divergence, internal cross-check disagreement.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

} // namespace fourband

#endif
