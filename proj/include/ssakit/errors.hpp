// errors.hpp — Exception types shared across the toolkit

#pragma once

#include <stdexcept>
#include <string>

namespace ssakit {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input (bad dims, non-density matrix, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A decomposer was asked to decompose a state whose saturation gap is
// above tolerance. Carries the offending gap in bits.
class NotSaturated : public Error {
public:
    NotSaturated(const std::string& what, double gap_bits)
        : Error(what), gap_bits(gap_bits) {}
    double gap_bits;
};

// A structure was recovered but failed its reassembly / consistency gate.
class StructureVerificationFailed : public Error {
public:
    StructureVerificationFailed(const std::string& what, double residual)
        : Error(what), residual(residual) {}
    double residual;
};

// Block refinement could not reach purity at tolerance within the depth
// bound. Carries the worst block's largest eigenvalue.
class RefinementExhausted : public Error {
public:
    RefinementExhausted(const std::string& what, double worst_purity)
        : Error(what), worst_purity(worst_purity) {}
    double worst_purity;
};

// Violated internal invariant (should not happen on valid inputs).
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace ssakit
