// Cyclic Jacobi for complex Hermitian matrices.
//
// Each (p,q) step first rotates the phase of H_pq away with diag(1, e^{-i phi})
// and then applies the real symmetric Jacobi rotation, so the 2x2 block
// becomes diagonal. Sizes here stay below a few hundred, where the quadratic
// convergence of the cyclic sweep makes this competitive with tridiagonal QR.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "absred/linalg.hpp"

namespace absred {

namespace {

void check_hermitian(const ComplexMatrix& h, const Tolerances& tol) {
    const HermitianDefect defect = hermitian_defect(h);
    const double scale = std::max(1.0, h.max_abs());
    if (defect.magnitude > tol.hermitian * scale) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian: entries (" << defect.row << "," << defect.col << ") and (" << defect.col
            << "," << defect.row << ") differ by " << defect.magnitude;
        throw ValidationError(msg.str());
    }
}

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Diagonalizes `a` in place; accumulates rotations into `v` when non-null.
void jacobi(ComplexMatrix& a, ComplexMatrix* v, const Tolerances& tol) {
    const std::size_t d = a.dim();
    const double norm = a.frobenius_norm();
    if (norm == 0.0) return;
    constexpr int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= tol.jacobi_offdiag * norm) return;
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const cplx apq = a(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Skip rotations that cannot change the diagonal at working precision.
                if (sweep > 3 && std::abs(app) + 100.0 * g == std::abs(app) &&
                    std::abs(aqq) + 100.0 * g == std::abs(aqq)) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const cplx phase_conj = std::conj(apq) / g;  // e^{-i phi}
                const double zeta = (aqq - app) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // V restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                const cplx vpp = c, vpq = s, vqp = -s * phase_conj, vqq = c * phase_conj;

                for (std::size_t i = 0; i < d; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * vpp + aiq * vqp;
                    a(i, q) = aip * vpq + aiq * vqq;
                }
                for (std::size_t j = 0; j < d; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = std::conj(vpp) * apj + std::conj(vqp) * aqj;
                    a(q, j) = std::conj(vpq) * apj + std::conj(vqq) * aqj;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                if (v != nullptr) {
                    ComplexMatrix& w = *v;
                    for (std::size_t i = 0; i < d; ++i) {
                        const cplx wip = w(i, p), wiq = w(i, q);
                        w(i, p) = wip * vpp + wiq * vqp;
                        w(i, q) = wip * vpq + wiq * vqq;
                    }
                }
            }
        }
    }
}

}  // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& h, const Tolerances& tol) {
    check_hermitian(h, tol);
    ComplexMatrix a = hermitian_part(h);
    const std::size_t d = a.dim();
    ComplexMatrix v = ComplexMatrix::identity(d);
    jacobi(a, &v, tol);

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out{std::vector<double>(d), ComplexMatrix(d)};
    for (std::size_t c = 0; c < d; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < d; ++r) out.vectors(r, c) = v(r, order[c]);
    }
    return out;
}

std::vector<double> eigvals_hermitian(const ComplexMatrix& h, const Tolerances& tol) {
    check_hermitian(h, tol);
    ComplexMatrix a = hermitian_part(h);
    jacobi(a, nullptr, tol);
    std::vector<double> w(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) w[i] = a(i, i).real();
    std::sort(w.begin(), w.end());
    return w;
}

}  // namespace absred
