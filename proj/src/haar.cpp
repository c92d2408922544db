#include <cmath>

#include "absred/linalg.hpp"

namespace absred {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 over (master, index)
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

UnitaryMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng) {
    if (dim == 0) throw ValidationError("unitary dimension must be >= 1");
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
    ComplexMatrix z(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = cplx(re, im);
        }

    // Householder QR; q accumulates H_0 H_1 ... H_{d-1}.
    ComplexMatrix q = ComplexMatrix::identity(dim);
    std::vector<cplx> r_diag(dim);
    std::vector<cplx> v(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        double xnorm2 = 0.0;
        for (std::size_t i = j; i < dim; ++i) xnorm2 += std::norm(z(i, j));
        const double xnorm = std::sqrt(xnorm2);
        const cplx x0 = z(j, j);
        const cplx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx(1.0);
        const cplx alpha = -phase * xnorm;
        r_diag[j] = alpha;

        double vnorm2 = 0.0;
        for (std::size_t i = j; i < dim; ++i) {
            v[i] = z(i, j) - (i == j ? alpha : cplx{});
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        const double vnorm = std::sqrt(vnorm2);
        for (std::size_t i = j; i < dim; ++i) v[i] /= vnorm;

        // z <- (I - 2 v v*) z on rows j.., columns j..
        for (std::size_t c = j; c < dim; ++c) {
            cplx dot = 0.0;
            for (std::size_t i = j; i < dim; ++i) dot += std::conj(v[i]) * z(i, c);
            for (std::size_t i = j; i < dim; ++i) z(i, c) -= 2.0 * v[i] * dot;
        }
        // q <- q (I - 2 v v*)
        for (std::size_t r = 0; r < dim; ++r) {
            cplx dot = 0.0;
            for (std::size_t i = j; i < dim; ++i) dot += q(r, i) * v[i];
            for (std::size_t i = j; i < dim; ++i) q(r, i) -= 2.0 * dot * std::conj(v[i]);
        }
    }
    // Divide out the phases of diag(R): Z = (Q L)(L* R) with L = diag(R_jj / |R_jj|).
    for (std::size_t c = 0; c < dim; ++c) {
        const double m = std::abs(r_diag[c]);
        const cplx lam = m > 0.0 ? r_diag[c] / m : cplx(1.0);
        for (std::size_t r = 0; r < dim; ++r) q(r, c) *= lam;
    }
    return UnitaryMatrix(std::move(q));
}

UnitaryMatrix haar_unitary(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return haar_unitary(dim, rng);
}

}  // namespace absred
