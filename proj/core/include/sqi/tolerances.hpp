#pragma once

namespace sqi {

// Numerical tolerances for the invariants enforced throughout the library.
// The underlying identities are exact; floating point is not. Every check
// that accepts a Tolerances argument defaults to these values.
struct Tolerances {
    double norm = 1e-12;   // unit-norm residual of state vectors
    double herm = 1e-10;   // entrywise hermiticity residual, max |A - A^dagger|
    double pos = 1e-10;    // spectrum slack: eigenvalues in [-pos, 1 + pos]
    double kernel = 1e-10; // kernel residual, relative: ||A psi|| <= kernel * ||A||
    double check = 1e-10;  // slack used by pass/fail verdicts in reports
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

} // namespace sqi
