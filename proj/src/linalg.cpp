#include "absred/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace absred {

BipartiteDims::BipartiteDims(std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (n < 2 || k < 2) {
        std::ostringstream msg;
        msg << "bipartite dimensions must both be >= 2, got (" << n << "," << k << ")";
        throw ValidationError(msg.str());
    }
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries) : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != dim * dim) {
        throw ValidationError("matrix of dimension " + std::to_string(dim) + " needs " + std::to_string(dim * dim) +
                              " entries, got " + std::to_string(data_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> v) {
    ComplexMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw ValidationError("matrix dimension mismatch in addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw ValidationError("matrix dimension mismatch in subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("matrix dimension mismatch in product");
    const std::size_t d = a.dim();
    ComplexMatrix c(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t l = 0; l < d; ++l) {
            const cplx ail = a(i, l);
            if (ail == cplx{}) continue;
            for (std::size_t j = 0; j < d; ++j) c(i, j) += ail * b(l, j);
        }
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    ComplexMatrix c(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t p = 0; p < db; ++p)
                for (std::size_t q = 0; q < db; ++q) c(i * db + p, j * db + q) = a(i, j) * b(p, q);
    return c;
}

std::vector<cplx> apply(const ComplexMatrix& a, std::span<const cplx> v) {
    if (v.size() != a.dim()) throw ValidationError("vector length does not match matrix dimension");
    std::vector<cplx> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

HermitianDefect hermitian_defect(const ComplexMatrix& x) {
    HermitianDefect worst;
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = i; j < x.dim(); ++j) {
            const double d = std::abs(x(i, j) - std::conj(x(j, i)));
            if (d > worst.magnitude) worst = {d, i, j};
        }
    return worst;
}

ComplexMatrix hermitian_part(const ComplexMatrix& x) {
    ComplexMatrix h(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j) h(i, j) = 0.5 * (x(i, j) + std::conj(x(j, i)));
    return h;
}

namespace {

void require_bipartite(const ComplexMatrix& x, const BipartiteDims& dims) {
    if (x.dim() != dims.total()) {
        std::ostringstream msg;
        msg << "matrix of dimension " << x.dim() << " does not match bipartite dims (" << dims.n() << ","
            << dims.k() << ")";
        throw ValidationError(msg.str());
    }
}

}  // namespace

ComplexMatrix partial_trace_B(const ComplexMatrix& x, const BipartiteDims& dims) {
    require_bipartite(x, dims);
    const std::size_t n = dims.n(), k = dims.k();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t b = 0; b < k; ++b) out(i, j) += x(i * k + b, j * k + b);
    return out;
}

ComplexMatrix partial_trace_A(const ComplexMatrix& x, const BipartiteDims& dims) {
    require_bipartite(x, dims);
    const std::size_t n = dims.n(), k = dims.k();
    ComplexMatrix out(k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t i = 0; i < n; ++i) out(a, b) += x(i * k + a, i * k + b);
    return out;
}

ComplexMatrix reduction_B(const ComplexMatrix& x, const BipartiteDims& dims) {
    return kron(partial_trace_B(x, dims), ComplexMatrix::identity(dims.k())) - x;
}

ComplexMatrix reduction_A(const ComplexMatrix& x, const BipartiteDims& dims) {
    return kron(ComplexMatrix::identity(dims.n()), partial_trace_A(x, dims)) - x;
}

ComplexMatrix partial_transpose(const ComplexMatrix& x, const BipartiteDims& dims) {
    require_bipartite(x, dims);
    const std::size_t n = dims.n(), k = dims.k();
    ComplexMatrix out(x.dim());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) out(i * k + a, j * k + b) = x(i * k + b, j * k + a);
    return out;
}

ComplexMatrix partial_transpose_A(const ComplexMatrix& x, const BipartiteDims& dims) {
    require_bipartite(x, dims);
    const std::size_t n = dims.n(), k = dims.k();
    ComplexMatrix out(x.dim());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) out(i * k + a, j * k + b) = x(j * k + a, i * k + b);
    return out;
}

Spectrum::Spectrum(BipartiteDims dims, std::vector<double> values, const Tolerances& tol)
    : dims_(dims), values_(std::move(values)) {
    if (values_.size() != dims_.total()) {
        throw ValidationError("spectrum needs " + std::to_string(dims_.total()) + " values, got " +
                              std::to_string(values_.size()));
    }
    double sum = 0.0;
    for (auto& v : values_) {
        if (!std::isfinite(v)) throw ValidationError("spectrum contains a non-finite value");
        if (v < -tol.trace) throw ValidationError("spectrum contains negative value " + std::to_string(v));
        v = std::max(v, 0.0);
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol.trace) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "spectrum must sum to 1, got " << sum;
        throw ValidationError(msg.str());
    }
    std::sort(values_.begin(), values_.end(), std::greater<>());
}

Spectrum Spectrum::uniform(BipartiteDims dims) {
    return Spectrum(dims, std::vector<double>(dims.total(), 1.0 / static_cast<double>(dims.total())));
}

double Spectrum::purity() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return s;
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix u, const Tolerances& tol) : u_(std::move(u)) {
    const ComplexMatrix g = u_ * u_.adjoint() - ComplexMatrix::identity(u_.dim());
    if (g.max_abs() > tol.unitary) {
        throw ValidationError("matrix is not unitary: |U U* - I| = " + std::to_string(g.max_abs()));
    }
}

DensityMatrix::DensityMatrix(BipartiteDims dims, const ComplexMatrix& m, const Tolerances& tol) : dims_(dims) {
    require_bipartite(m, dims);
    const HermitianDefect defect = hermitian_defect(m);
    if (defect.magnitude > tol.hermitian_reject) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian: entries (" << defect.row << "," << defect.col << ") and ("
            << defect.col << "," << defect.row << ") differ by " << defect.magnitude;
        throw ValidationError(msg.str());
    }
    correction_ = defect.magnitude / 2.0;
    warn_ = correction_ > tol.hermitian;
    m_ = hermitian_part(m);
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > tol.trace) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "density matrix must have unit trace, got " << tr;
        throw ValidationError(msg.str());
    }
    const auto w = eigvals_hermitian(m_, tol);
    if (w.front() < -tol.density_floor) {
        throw ValidationError("density matrix is not positive semidefinite: lambda_min = " +
                              std::to_string(w.front()));
    }
}

Spectrum DensityMatrix::spectrum(const Tolerances& tol) const {
    auto w = eigvals_hermitian(m_, tol);
    for (auto& v : w) v = std::max(v, 0.0);
    const double s = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& v : w) v /= s;
    return Spectrum(dims_, std::move(w), tol);
}

bool majorizes(std::span<const double> rho, std::span<const double> sigma, double slack) {
    if (rho.size() != sigma.size()) {
        throw ValidationError("majorization needs vectors of equal length, got " + std::to_string(rho.size()) +
                              " and " + std::to_string(sigma.size()));
    }
    std::vector<double> r(rho.begin(), rho.end()), s(sigma.begin(), sigma.end());
    std::sort(r.begin(), r.end(), std::greater<>());
    std::sort(s.begin(), s.end(), std::greater<>());
    double pr = 0.0, ps = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        pr += r[i];
        ps += s[i];
        if (ps > pr + slack) return false;
    }
    return std::abs(pr - ps) <= slack;
}

bool majorizes(const Spectrum& rho, const Spectrum& sigma, double slack) {
    return majorizes(rho.values(), sigma.values(), slack);
}

}  // namespace absred
