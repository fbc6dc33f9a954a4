#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qtoric {

/// Arbitrary-precision integer used for all matrix and polynomial
/// coefficients. Entry growth in fraction-free elimination makes fixed
/// width unsafe even at small sizes.
using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline int sign_int(const Int& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

/// Floor division (quotient rounded toward minus infinity).
inline Int fdiv(const Int& a, const Int& b) {
    Int q = a / b;  // truncated
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Base exception for library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or out-of-contract input.
struct InvalidInput : Error {
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

/// A precondition of an operation does not hold.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

/// A verified mathematical claim failed on concrete input. The message
/// names the violated identity.
struct TheoremViolation : Error {
    explicit TheoremViolation(const std::string& msg) : Error(msg) {}
};

/// Two independent computations of the same quantity disagree.
struct ConsistencyError : Error {
    explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

}  // namespace qtoric
