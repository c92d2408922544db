#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "absred/tolerances.hpp"

namespace absred {

using cplx = std::complex<double>;

/// Dimensions of the two tensor factors, C^n (x) C^k. Both are at least 2.
class BipartiteDims {
public:
    BipartiteDims(std::size_t n, std::size_t k);

    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }
    std::size_t total() const { return n_ * k_; }
    std::size_t min_rank() const { return n_ < k_ ? n_ : k_; }
    BipartiteDims swapped() const { return {k_, n_}; }

    friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;

private:
    std::size_t n_;
    std::size_t k_;
};

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix outer(std::span<const cplx> v);  // v v*

    std::size_t dim() const { return dim_; }
    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    std::span<const cplx> entries() const { return data_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> apply(const ComplexMatrix& a, std::span<const cplx> v);

/// Largest |X_ij - conj(X_ji)| together with the offending (i, j).
struct HermitianDefect {
    double magnitude = 0.0;
    std::size_t row = 0;
    std::size_t col = 0;
};
HermitianDefect hermitian_defect(const ComplexMatrix& x);

/// (X + X*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& x);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column i belongs to values[i]
};

/// Cyclic complex Jacobi. Throws ValidationError naming the worst entry pair
/// when the input is not Hermitian within tol.hermitian (relative to max |H_ij|).
EigenDecomposition eig_hermitian(const ComplexMatrix& h, const Tolerances& tol = default_tolerances());

/// Eigenvalues only, ascending. Same preconditions as eig_hermitian.
std::vector<double> eigvals_hermitian(const ComplexMatrix& h, const Tolerances& tol = default_tolerances());

// Bipartite maps. Basis ordering is |i,b> -> i*k + b with i on C^n and b on C^k.
ComplexMatrix partial_trace_B(const ComplexMatrix& x, const BipartiteDims& dims);
ComplexMatrix partial_trace_A(const ComplexMatrix& x, const BipartiteDims& dims);
ComplexMatrix reduction_B(const ComplexMatrix& x, const BipartiteDims& dims);  // X_A (x) I_k - X
ComplexMatrix reduction_A(const ComplexMatrix& x, const BipartiteDims& dims);  // I_n (x) X_B - X
ComplexMatrix partial_transpose(const ComplexMatrix& x, const BipartiteDims& dims);  // transpose on C^k
ComplexMatrix partial_transpose_A(const ComplexMatrix& x, const BipartiteDims& dims);

/// Normalized non-negative eigenvalue vector of a bipartite state, stored descending.
class Spectrum {
public:
    /// Validates and sorts. Throws ValidationError on a wrong length, a negative
    /// entry below -tol.trace, or a sum off by more than tol.trace.
    Spectrum(BipartiteDims dims, std::vector<double> values, const Tolerances& tol = default_tolerances());

    static Spectrum uniform(BipartiteDims dims);

    const BipartiteDims& dims() const { return dims_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    /// 1-based access into the descending vector, matching lambda_1 >= ... >= lambda_nk.
    double at1(std::size_t i) const { return values_[i - 1]; }
    double purity() const;

private:
    BipartiteDims dims_;
    std::vector<double> values_;
};

class UnitaryMatrix {
public:
    explicit UnitaryMatrix(ComplexMatrix u, const Tolerances& tol = default_tolerances());
    const ComplexMatrix& matrix() const { return u_; }
    std::size_t dim() const { return u_.dim(); }

private:
    ComplexMatrix u_;
};

/// Hermitian, PSD, unit-trace matrix on C^n (x) C^k.
class DensityMatrix {
public:
    /// Symmetrizes on ingestion; asymmetry above tol.hermitian_reject,
    /// a trace off by more than tol.trace or an eigenvalue below
    /// -tol.density_floor throws ValidationError.
    DensityMatrix(BipartiteDims dims, const ComplexMatrix& m, const Tolerances& tol = default_tolerances());

    const BipartiteDims& dims() const { return dims_; }
    const ComplexMatrix& matrix() const { return m_; }
    /// Size of the Hermitian correction applied on ingestion.
    double hermitian_correction() const { return correction_; }
    /// True when the correction exceeded tol.hermitian and callers should warn.
    bool symmetrization_warning() const { return warn_; }

    Spectrum spectrum(const Tolerances& tol = default_tolerances()) const;

private:
    BipartiteDims dims_;
    ComplexMatrix m_;
    double correction_ = 0.0;
    bool warn_ = false;
};

/// Haar-distributed unitary: Householder QR of a complex Ginibre matrix with
/// the phases of diag(R) divided out.
UnitaryMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng);
UnitaryMatrix haar_unitary(std::size_t dim, std::uint64_t seed);

/// Counter-based stream derivation: independent seed for sample `index` of a run.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// sigma < rho: every prefix sum of sorted sigma is at most that of sorted rho.
/// Both vectors must have equal length; they are sorted internally.
bool majorizes(std::span<const double> rho, std::span<const double> sigma, double slack = 1e-12);
bool majorizes(const Spectrum& rho, const Spectrum& sigma, double slack = 1e-12);

}  // namespace absred
