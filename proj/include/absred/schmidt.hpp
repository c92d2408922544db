#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "absred/linalg.hpp"

namespace absred {

/// Non-negative Schmidt coefficients of a pure bipartite vector.
class SchmidtVector {
public:
    /// Entries must be finite and >= 0 with at least one > 0. Normalization is
    /// not required here; callers needing a state check `is_normalized`.
    explicit SchmidtVector(std::vector<double> values);

    static SchmidtVector uniform(std::size_t rank, std::size_t length);

    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    std::size_t rank() const;
    double sum() const;
    bool is_normalized(double tol = 1e-12) const;
    /// Positive entries, descending.
    std::vector<double> positive_descending() const;

private:
    std::vector<double> values_;
};

/// Distinct Schmidt values with their multiplicities.
struct ClusteredSchmidt {
    std::vector<double> values;              // strictly decreasing, positive
    std::vector<std::size_t> multiplicities;
    bool merged_near_equal = false;          // a merge joined values that were not bit-identical

    std::size_t rank() const;
    double sum() const;
};

/// Roots of F(eta) = sum_i m_i x_i / (x_i - eta) - 1, one per cluster,
/// descending. The last root is the only non-positive one.
struct SecularRoots {
    std::vector<double> etas;
};

/// Spectrum of the reduction of a pure state, laid out as
/// (x_1 x (k-1), eta_1, ..., x_r x (k-1), 0 x (n-r)k, eta_r).
struct HatVector {
    BipartiteDims dims;
    std::vector<double> entries;
    /// eta_1 >= ... >= eta_r in the per-coefficient convention (degenerate
    /// Schmidt values contribute repeated etas equal to themselves).
    std::vector<double> etas;
    bool merged_near_equal = false;

    std::vector<double> ascending() const;
    double sum() const;
};

/// Groups positive entries whose relative gap is <= tol; zeros are dropped.
ClusteredSchmidt cluster(const SchmidtVector& x, double tol = default_tolerances().cluster);

/// Bracketed bisection on each interval (x_{i+1}, x_i) and on
/// [-(r-1)/r * sum x, 0] for the last root, followed by guarded Newton polishing.
SecularRoots secular_roots(const ClusteredSchmidt& c);

/// F(eta) for a clustered vector; exposed for tests and diagnostics.
double secular_function(const ClusteredSchmidt& c, double eta);

/// Throws ValidationError when rank(x) > min(n,k).
HatVector hat(const SchmidtVector& x, const BipartiteDims& dims, const Tolerances& tol = default_tolerances());

/// hat(x) sorted ascending, without the pattern bookkeeping. This is the hot
/// path of the ARED optimizer.
std::vector<double> hat_ascending(const SchmidtVector& x, const BipartiteDims& dims,
                                  const Tolerances& tol = default_tolerances());

/// Entanglement of disturbance: -lambda_min((psi psi*)^red) for normalized x.
double disturbance(const SchmidtVector& x, const Tolerances& tol = default_tolerances());

/// Squared singular values of the n x k reshaping of psi, descending, length min(n,k).
SchmidtVector schmidt_coefficients(std::span<const cplx> psi, const BipartiteDims& dims,
                                   const Tolerances& tol = default_tolerances());

/// psi = sum_i sqrt(x_i) e_i (x) f_i on canonical bases.
std::vector<cplx> canonical_state(const SchmidtVector& x, const BipartiteDims& dims);

}  // namespace absred
