#include "absred/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace absred {

SchmidtVector::SchmidtVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("Schmidt vector is empty");
    bool any_positive = false;
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ValidationError("Schmidt coefficients must be finite and non-negative, got " + std::to_string(v));
        }
        any_positive = any_positive || v > 0.0;
    }
    if (!any_positive) throw ValidationError("Schmidt vector is identically zero");
}

SchmidtVector SchmidtVector::uniform(std::size_t rank, std::size_t length) {
    if (rank == 0 || rank > length) throw ValidationError("uniform Schmidt vector needs 1 <= rank <= length");
    std::vector<double> v(length, 0.0);
    std::fill_n(v.begin(), rank, 1.0 / static_cast<double>(rank));
    return SchmidtVector(std::move(v));
}

std::size_t SchmidtVector::rank() const {
    return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(), [](double v) { return v > 0.0; }));
}

double SchmidtVector::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

bool SchmidtVector::is_normalized(double tol) const { return std::abs(sum() - 1.0) <= tol; }

std::vector<double> SchmidtVector::positive_descending() const {
    std::vector<double> p;
    p.reserve(values_.size());
    for (double v : values_)
        if (v > 0.0) p.push_back(v);
    std::sort(p.begin(), p.end(), std::greater<>());
    return p;
}

std::size_t ClusteredSchmidt::rank() const {
    return std::accumulate(multiplicities.begin(), multiplicities.end(), std::size_t{0});
}

double ClusteredSchmidt::sum() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += static_cast<double>(multiplicities[i]) * values[i];
    return s;
}

ClusteredSchmidt cluster(const SchmidtVector& x, double tol) {
    if (!(tol > 0.0)) throw ValidationError("clustering tolerance must be positive");
    const auto p = x.positive_descending();
    ClusteredSchmidt c;
    std::size_t start = 0;
    while (start < p.size()) {
        std::size_t end = start + 1;
        while (end < p.size() && p[end - 1] - p[end] <= tol * p[end - 1]) {
            if (p[end - 1] != p[end]) c.merged_near_equal = true;
            ++end;
        }
        const double mean = std::accumulate(p.begin() + static_cast<std::ptrdiff_t>(start),
                                            p.begin() + static_cast<std::ptrdiff_t>(end), 0.0) /
                            static_cast<double>(end - start);
        c.values.push_back(mean);
        c.multiplicities.push_back(end - start);
        start = end;
    }
    return c;
}

double secular_function(const ClusteredSchmidt& c, double eta) {
    double f = -1.0;
    for (std::size_t i = 0; i < c.values.size(); ++i)
        f += static_cast<double>(c.multiplicities[i]) * c.values[i] / (c.values[i] - eta);
    return f;
}

namespace {

double secular_derivative(const ClusteredSchmidt& c, double eta) {
    double d = 0.0;
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        const double g = c.values[i] - eta;
        d += static_cast<double>(c.multiplicities[i]) * c.values[i] / (g * g);
    }
    return d;
}

// F is strictly increasing on (lo, hi) and changes sign there.
double bracketed_root(const ClusteredSchmidt& c, double lo, double hi, double scale) {
    auto bisect_until = [&](double width) {
        while (hi - lo > width) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (secular_function(c, mid) < 0.0 ? lo : hi) = mid;
        }
    };
    bisect_until(1e-13 * scale);
    double eta = 0.5 * (lo + hi);
    double f = secular_function(c, eta);
    for (int step = 0; step < 2 && f != 0.0; ++step) {
        const double cand = eta - f / secular_derivative(c, eta);
        if (!(cand > lo && cand < hi)) break;
        const double fc = secular_function(c, cand);
        if (std::abs(fc) >= std::abs(f)) break;
        (f < 0.0 ? lo : hi) = eta;
        eta = cand;
        f = fc;
    }
    if (std::abs(f) <= 1e-12) return eta;
    // Newton did not settle near a pole; finish by bisection to machine width.
    (f < 0.0 ? lo : hi) = eta;
    bisect_until(0.0);
    return 0.5 * (lo + hi);
}

}  // namespace

SecularRoots secular_roots(const ClusteredSchmidt& c) {
    const std::size_t q = c.values.size();
    if (q == 0) throw ValidationError("secular equation needs at least one positive Schmidt value");
    const double scale = c.values.front();
    SecularRoots out;
    out.etas.reserve(q);
    for (std::size_t i = 0; i + 1 < q; ++i) out.etas.push_back(bracketed_root(c, c.values[i + 1], c.values[i], scale));

    const std::size_t r = c.rank();
    if (r == 1) {
        out.etas.push_back(0.0);
        return out;
    }
    const double bound = static_cast<double>(r - 1) / static_cast<double>(r) * c.sum();
    // The lower bound is attained for uniform x; widen by a few ulps so the root stays interior.
    const double lo = -bound * (1.0 + 1e-12) - 1e-300;
    out.etas.push_back(bracketed_root(c, lo, 0.0, scale));
    return out;
}

namespace {

struct HatParts {
    std::vector<double> xs;    // positive x, descending, with multiplicity
    std::vector<double> etas;  // descending, length r
    bool merged = false;
};

HatParts hat_parts(const SchmidtVector& x, const BipartiteDims& dims, const Tolerances& tol) {
    const std::size_t r = x.rank();
    if (r > dims.min_rank()) {
        std::ostringstream msg;
        msg << "Schmidt rank " << r << " exceeds min(n,k) = " << dims.min_rank();
        throw ValidationError(msg.str());
    }
    HatParts parts;
    parts.xs = x.positive_descending();
    const ClusteredSchmidt c = cluster(x, tol.cluster);
    const SecularRoots roots = secular_roots(c);
    parts.merged = c.merged_near_equal;
    parts.etas.reserve(r);
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        for (std::size_t m = 1; m < c.multiplicities[i]; ++m) parts.etas.push_back(c.values[i]);
        parts.etas.push_back(roots.etas[i]);
    }
    std::sort(parts.etas.begin(), parts.etas.end(), std::greater<>());
    return parts;
}

}  // namespace

std::vector<double> HatVector::ascending() const {
    std::vector<double> a = entries;
    std::sort(a.begin(), a.end());
    return a;
}

double HatVector::sum() const { return std::accumulate(entries.begin(), entries.end(), 0.0); }

HatVector hat(const SchmidtVector& x, const BipartiteDims& dims, const Tolerances& tol) {
    HatParts parts = hat_parts(x, dims, tol);
    const std::size_t r = parts.xs.size();
    const std::size_t k = dims.k();
    HatVector h{dims, {}, parts.etas, parts.merged};
    h.entries.reserve(dims.total());
    for (std::size_t i = 0; i < r; ++i) {
        h.entries.insert(h.entries.end(), k - 1, parts.xs[i]);
        if (i + 1 < r) h.entries.push_back(parts.etas[i]);
    }
    h.entries.insert(h.entries.end(), (dims.n() - r) * k, 0.0);
    h.entries.push_back(parts.etas.back());
    if (h.entries.size() != dims.total()) {
        throw std::logic_error("hat pattern has length " + std::to_string(h.entries.size()) + ", expected " +
                               std::to_string(dims.total()));
    }
    return h;
}

std::vector<double> hat_ascending(const SchmidtVector& x, const BipartiteDims& dims, const Tolerances& tol) {
    HatParts parts = hat_parts(x, dims, tol);
    const std::size_t r = parts.xs.size();
    const std::size_t k = dims.k();
    std::vector<double> a;
    a.reserve(dims.total());
    for (double xi : parts.xs) a.insert(a.end(), k - 1, xi);
    a.insert(a.end(), parts.etas.begin(), parts.etas.end());
    a.insert(a.end(), (dims.n() - r) * k, 0.0);
    std::sort(a.begin(), a.end());
    return a;
}

double disturbance(const SchmidtVector& x, const Tolerances& tol) {
    if (!x.is_normalized(tol.trace)) {
        throw ValidationError("disturbance needs a normalized Schmidt vector, sum = " + std::to_string(x.sum()));
    }
    const ClusteredSchmidt c = cluster(x, tol.cluster);
    const SecularRoots roots = secular_roots(c);
    return std::max(0.0, -roots.etas.back());
}

SchmidtVector schmidt_coefficients(std::span<const cplx> psi, const BipartiteDims& dims, const Tolerances& tol) {
    if (psi.size() != dims.total()) {
        throw ValidationError("state vector needs " + std::to_string(dims.total()) + " entries, got " +
                              std::to_string(psi.size()));
    }
    const std::size_t n = dims.n(), k = dims.k();
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t b = 0; b < k; ++b) g(i, j) += psi[i * k + b] * std::conj(psi[j * k + b]);
    if (g.trace().real() <= 0.0) throw ValidationError("state vector is zero");
    auto w = eigvals_hermitian(g, tol);
    std::sort(w.begin(), w.end(), std::greater<>());
    w.resize(dims.min_rank());
    for (auto& v : w) v = std::max(v, 0.0);
    return SchmidtVector(std::move(w));
}

std::vector<cplx> canonical_state(const SchmidtVector& x, const BipartiteDims& dims) {
    const auto p = x.positive_descending();
    if (p.size() > dims.min_rank()) throw ValidationError("Schmidt rank exceeds min(n,k)");
    std::vector<cplx> psi(dims.total());
    for (std::size_t i = 0; i < p.size(); ++i) psi[i * dims.k() + i] = std::sqrt(p[i]);
    return psi;
}

}  // namespace absred
