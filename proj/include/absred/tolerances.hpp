#pragma once

#include <stdexcept>
#include <string>

namespace absred {

/// Thrown when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical thresholds shared by every predicate in the library.
///
/// Defaults are the library-wide values; callers pass a modified copy to
/// tighten or relax a run. No function reads a global.
struct Tolerances {
    double hermitian = 1e-12;        // |X - X*| entrywise, silent symmetrization below this
    double hermitian_reject = 1e-8;  // above this, ingestion fails instead of symmetrizing
    double trace = 1e-12;            // |Tr rho - 1| and |sum(lambda) - 1|
    double density_floor = 1e-10;    // smallest admissible eigenvalue of a density matrix
    double unitary = 1e-10;          // |U U* - I| entrywise
    double jacobi_offdiag = 1e-13;   // relative off-diagonal Frobenius norm at convergence
    double cluster = 1e-11;          // relative gap below which Schmidt values merge
    double slack = 1e-12;            // additive slack on every spectral inequality
    double psd_floor = 1e-10;        // lambda_min >= -psd_floor counts as positive (red, ppt, appt r=3)
    double ared_reject = 1e-9;       // optimizer reports Out only below -ared_reject
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace absred
