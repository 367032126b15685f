#pragma once

#include <stdexcept>
#include <string>

namespace cendalg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input files / string forms that do not parse.
struct ParseError : Error {
    using Error::Error;
};

// A bimodule table does not cover a (key, n) pair below its stated bound.
struct MissingTableEntry : Error {
    using Error::Error;
};

// A coefficient-family bound cannot be certified from constructor data.
struct Unbounded : Error {
    using Error::Error;
};

// Orbit closure did not stabilize within the iteration cap.  Valid bimodules
// always stabilize; hitting the cap means the input tables are inconsistent.
struct ClosureDiverged : Error {
    using Error::Error;
};

// The multiplication operator at index 1 fails to diagonalize with
// non-negative integer eigenvalues on the given space.
struct NotSemisimple : Error {
    using Error::Error;
};

struct NotACocycle : Error {
    NotACocycle(const std::string& msg, long m, long n, long k, long l, long q)
        : Error(msg), m(m), n(n), k(k), l(l), q(q) {}
    long m, n, k, l, q;  // violating differential component and basis triple
};

// Residual right actions survive after the normalization step.
struct NormalizationFailed : Error {
    using Error::Error;
};

// An exact linear solve required by the pipeline has no solution.
struct NoSolution : Error {
    using Error::Error;
};

// The candidate section of a singular extension is not closed under products.
struct NotClosed : Error {
    using Error::Error;
};

}  // namespace cendalg
