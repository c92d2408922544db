#include "absred/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace absred {

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += threads) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

ReductionSample mc_reduction_min(const Spectrum& lambda, std::size_t samples, std::uint64_t seed,
                                 const std::optional<UnitaryMatrix>& injected, std::size_t threads,
                                 const Tolerances& tol) {
    const auto& dims = lambda.dims();
    if (injected && injected->dim() != dims.total()) throw ValidationError("injected unitary has the wrong dimension");
    const ComplexMatrix d = ComplexMatrix::diagonal(lambda.values());
    std::vector<double> mins(samples, std::numeric_limits<double>::infinity());
    parallel_for(samples, threads, [&](std::size_t i) {
        const UnitaryMatrix u = (i == 0 && injected) ? *injected : haar_unitary(dims.total(), derive_seed(seed, i));
        const ComplexMatrix rho = u.matrix() * d * u.matrix().adjoint();
        mins[i] = eigvals_hermitian(reduction_B(rho, dims), tol).front();
    });
    ReductionSample out;
    out.samples = samples;
    out.min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples; ++i)
        if (mins[i] < out.min) {
            out.min = mins[i];
            out.argmin = i;
        }
    return out;
}

GridMinimum grid_min_objective(const Spectrum& lambda, std::size_t r, double step, const Tolerances& tol) {
    if (r != 2 && r != 3) throw std::invalid_argument("grid oracle supports r = 2 and r = 3 only");
    if (r > lambda.dims().min_rank()) throw ValidationError("grid rank exceeds min(n,k)");
    if (!(step > 0.0 && step <= 0.5)) throw ValidationError("grid step must lie in (0, 0.5]");
    const auto steps = static_cast<long>(std::llround(1.0 / step));
    const double h = 1.0 / static_cast<double>(steps);

    GridMinimum best;
    best.value = std::numeric_limits<double>::infinity();
    auto visit = [&](std::vector<double> x) {
        ++best.points;
        const double v = ared_objective(lambda, SchmidtVector(x), tol);
        if (v < best.value) {
            best.value = v;
            best.x = std::move(x);
        }
    };
    for (long a = 0; a <= steps; ++a) {
        if (r == 2) {
            const long b = steps - a;
            if (b <= a) visit({static_cast<double>(a) * h, static_cast<double>(b) * h});
            continue;
        }
        for (long b = 0; b <= a; ++b) {
            const long c = steps - a - b;
            if (c >= 0 && c <= b)
                visit({static_cast<double>(a) * h, static_cast<double>(b) * h, static_cast<double>(c) * h});
        }
    }
    return best;
}

std::vector<double> dirichlet_spectrum(std::size_t d, double alpha, std::mt19937_64& rng) {
    if (!(alpha > 0.0)) throw ValidationError("Dirichlet concentration must be positive");
    std::gamma_distribution<double> gamma(alpha, 1.0);
    std::vector<double> v(d);
    double s = 0.0;
    do {
        s = 0.0;
        for (auto& x : v) s += (x = gamma(rng));
    } while (!(s > 0.0));
    for (auto& x : v) x /= s;
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

std::size_t ChainViolations::total() const {
    return appt_not_ls3 + ls3_not_lsk + lsk_not_ared + ared_not_ls2k1 + ger_not_appt + sepball_not_appt +
           ls2_not_appt + ared_ne_appt_qubit;
}

namespace {

int bit(const Verdict& v) { return v.in() ? 1 : (v.out() ? 0 : -1); }

}  // namespace

SurveyResult survey(const BipartiteDims& dims, double alpha, std::size_t count, std::uint64_t seed,
                    const AredOptions& options, std::size_t threads, const Tolerances& tol) {
    SurveyResult res{dims, std::vector<SurveyRow>(count), {}, 0};
    const std::size_t k = dims.k();
    const std::size_t r = dims.min_rank();
    std::vector<int> ls2(count), ls2k1(count);
    parallel_for(count, threads, [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(seed, i));
        Spectrum lambda(dims, dirichlet_spectrum(dims.total(), alpha, rng), tol);
        SurveyRow& row = res.rows[i];
        row.lambda.assign(lambda.values().begin(), lambda.values().end());
        row.ls3 = bit(ls_member(lambda, 3, tol));
        row.lsk = bit(ls_member(lambda, k, tol));
        row.ared_report = ared_decide(lambda, options, tol);
        row.ared = bit(row.ared_report.verdict);
        row.appt = bit(appt_member(lambda, tol));
        row.ger = bit(ger_member(lambda, tol));
        row.sepball = bit(sepball_member(lambda, tol));
        ls2[i] = bit(ls_member(lambda, 2, tol));
        ls2k1[i] = bit(ls_member(lambda, std::min(2 * k - 1, dims.total()), tol));
    });

    auto& v = res.violations;
    for (std::size_t i = 0; i < count; ++i) {
        const auto& row = res.rows[i];
        if (row.appt == -1) ++res.appt_unknown;
        if (row.appt == 1 && row.ls3 == 0) ++v.appt_not_ls3;
        if (k >= 3 && row.ls3 == 1 && row.lsk == 0) ++v.ls3_not_lsk;
        if (row.lsk == 1 && row.ared == 0) ++v.lsk_not_ared;
        if (row.ared == 1 && ls2k1[i] == 0) ++v.ared_not_ls2k1;
        if (row.ger == 1 && row.appt == 0) ++v.ger_not_appt;
        if (row.sepball == 1 && row.appt == 0) ++v.sepball_not_appt;
        if (r <= 3 && ls2[i] == 1 && row.appt == 0) ++v.ls2_not_appt;
        if (k == 2 && row.ared != -1 && row.appt != -1 && row.ared != row.appt) ++v.ared_ne_appt_qubit;
    }
    return res;
}

}  // namespace absred
