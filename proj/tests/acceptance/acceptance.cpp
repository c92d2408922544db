// Acceptance suite: one PASS/FAIL line per criterion. Usage: acceptance [criterion ...]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "absred/ared.hpp"
#include "absred/io.hpp"
#include "absred/oracle.hpp"
#include "absred/schmidt.hpp"
#include "absred/sets.hpp"
#include "test_support.hpp"

using namespace absred;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

// ARED decisions made by criteria 4-7, replayed by criterion 8.
struct Decision {
    Spectrum lambda;
    AredReport report;
    std::string origin;
};
std::vector<Decision> g_decisions;

void record(const Spectrum& s, const AredReport& r, std::string origin) {
    g_decisions.push_back({s, r, std::move(origin)});
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> dirichlet(std::size_t d, std::mt19937_64& rng) { return dirichlet_spectrum(d, 1.0, rng); }

// 1. Both reductions of the 3x2 example.
Outcome criterion1() {
    const auto t0 = Clock::now();
    const BipartiteDims dims(3, 2);
    const DensityMatrix rho(dims, matrix_from_json(read_json_file(ABSRED_TEST_DATA "/rho32.json")));
    const double red_prime = *red_member(rho, Side::A).certificate.lambda_min;
    const double red = *red_member(rho, Side::B).certificate.lambda_min;
    const double t = seconds_since(t0);
    Outcome o;
    const bool a = red_prime >= 1.0 / 20.0 - 1e-9;
    const bool b = red < -1.0 / 20.0 + 1e-9;
    o.pass = a && b && t < 0.1;
    o.detail = fmt("lambda_min(red')=%.9f (need >= 0.05: %s), lambda_min(red)=%.9f (need < -0.05: %s), %.3fs",
                   red_prime, a ? "ok" : "NO", red, b ? "ok" : "NO", t);
    return o;
}

// 2. hat(x) against eigenvalues of the explicitly reduced projector.
Outcome criterion2() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(derive_seed(2, 0));
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const BipartiteDims dims(2 + rng() % 4, 2 + rng() % 4);
        const std::size_t m = dims.min_rank();
        const SchmidtVector x(testsupport::random_simplex(m, rng, rng() % m));
        worst = std::max(worst, testsupport::max_abs_diff(hat(x, dims).ascending(),
                                                          testsupport::reduced_projector_eigs(x, dims)));
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-9 && t < 30.0, fmt("10000 vectors, max |diff| = %.3e, %.2fs", worst, t)};
}

// 3. Interlacing, trace identity and the bound on the last root.
Outcome criterion3() {
    std::mt19937_64 rng(derive_seed(3, 0));
    std::size_t bad_interlace = 0, bad_trace = 0, bad_bound = 0, checked = 0;
    for (int t = 0; t < 10000; ++t) {
        const std::size_t r = 2 + rng() % 6;
        auto v = testsupport::random_simplex(r, rng);
        if (t % 4 == 1) v[r - 1] = v[r - 2];  // repeated values
        if (t % 4 == 2) std::fill(v.begin(), v.begin() + 2, v[0]);
        const SchmidtVector x(v);
        const auto c = cluster(x);
        const auto eta = secular_roots(c).etas;
        const std::size_t q = c.values.size();
        ++checked;
        for (std::size_t i = 0; i + 1 < q; ++i)
            if (!(eta[i] <= c.values[i] && eta[i] >= c.values[i + 1])) ++bad_interlace;
        double s = 0.0, extra = 0.0;
        for (std::size_t i = 0; i + 1 < q; ++i) s += eta[i];
        for (std::size_t i = 0; i < q; ++i) extra += (c.multiplicities[i] - 1.0) * c.values[i];
        if (std::abs(eta.back() + s + extra) > 1e-12) ++bad_trace;
        if (-eta.back() > (c.rank() - 1.0) / c.rank() * c.sum() + 1e-15) ++bad_bound;
        if (eta.back() > 0.0) ++bad_bound;
    }
    const std::size_t total = bad_interlace + bad_trace + bad_bound;
    return {total == 0, fmt("%zu vectors, violations: interlacing %zu, trace %zu, bound %zu", checked, bad_interlace,
                            bad_trace, bad_bound)};
}

// 4. Forced optimizer against the qubit closed forms.
Outcome criterion4() {
    const auto t0 = Clock::now();
    AredOptions forced;
    forced.force_optimizer = true;
    std::size_t compared = 0, excluded = 0, disagree = 0;
    std::string per;
    for (auto dims : {BipartiteDims(2, 2), BipartiteDims(3, 2), BipartiteDims(4, 2), BipartiteDims(2, 3),
                      BipartiteDims(2, 4)}) {
        std::mt19937_64 rng(derive_seed(4, dims.n() * 10 + dims.k()));
        std::size_t bad = 0;
        for (int t = 0; t < 1000; ++t) {
            const Spectrum s(dims, dirichlet(dims.total(), rng));
            const Verdict exact = dims.k() == 2 ? ared_qubit_B(s) : ared_qubit_A(s);
            const AredReport rep = ared_decide(s, forced);
            record(s, rep, "c4");
            if (std::abs(exact.margin) < 1e-7) {
                ++excluded;
                continue;
            }
            ++compared;
            if (rep.verdict.status != exact.status) ++bad;
        }
        disagree += bad;
        per += fmt(" (%zu,%zu):%zu", dims.n(), dims.k(), bad);
    }
    const double t = seconds_since(t0);
    return {disagree == 0 && t < 300.0,
            fmt("%zu compared, %zu in boundary band, disagreements%s, %.1fs", compared, excluded, per.c_str(), t)};
}

// 5. Lambda constants and their extremal spectra.
Outcome criterion5() {
    Outcome o;
    std::vector<std::string> fails;
    for (auto dims : {BipartiteDims(2, 2), BipartiteDims(3, 2), BipartiteDims(2, 3), BipartiteDims(3, 3),
                      BipartiteDims(4, 3)}) {
        const double n = static_cast<double>(dims.n()), k = static_cast<double>(dims.k());
        const double nk = n * k, r = static_cast<double>(dims.min_rank());
        const std::string tag = fmt("(%zu,%zu)", dims.n(), dims.k());

        // ARED: pseudo-pure spectrum at the threshold mu* = ((k-1)/(nk) r/(r-1) + 1)^-1.
        const double mu = 1.0 / ((k - 1.0) / nk * r / (r - 1.0) + 1.0);
        const double expect = dims.k() <= dims.n() ? (k + 1.0) / (k * (n + 1.0)) : 1.0 / n;
        const Spectrum at = pseudopure_spectrum(dims, mu);
        const AredReport in = ared_decide(at);
        const Spectrum below_s = pseudopure_spectrum(dims, mu - 1e-6);
        const AredReport below = ared_decide(below_s);
        record(at, in, "c5");
        record(below_s, below, "c5");
        if (!in.verdict.in()) fails.push_back(tag + " ared threshold rejected");
        if (std::abs(at.at1(1) - expect) > 1e-8) fails.push_back(tag + " lambda1 != Lambda(ared)");
        if (std::abs(lambda_max(SetId::parse("ared"), dims) - expect) > 1e-12) fails.push_back(tag + " lambda_max");
        if (!below.verdict.out()) fails.push_back(tag + " ared below threshold accepted");

        // LS_p: (pa, a, ..., a) with a = 1/(nk+p-1).
        std::set<std::size_t> ps{2, 3, dims.k(), 2 * dims.k() - 1};
        for (std::size_t p : ps) {
            if (p > dims.total()) continue;
            const double a = 1.0 / (nk + p - 1.0);
            std::vector<double> v(dims.total(), a);
            v[0] = static_cast<double>(p) * a;
            const Verdict e = ls_member(Spectrum(dims, v), p);
            if (!e.in() || std::abs(e.margin) >= 1e-10) fails.push_back(tag + fmt(" ls:%zu extremal", p));
            if (std::abs(lambda_max(SetId{SetId::Kind::Ls, p}, dims) - v[0]) > 1e-12)
                fails.push_back(tag + fmt(" ls:%zu lambda_max", p));
            v[0] += 1e-6;
            v.back() -= 1e-6;
            if (!ls_member(Spectrum(dims, v), p).out()) fails.push_back(tag + fmt(" ls:%zu perturbed accepted", p));
        }

        // SEPBALL: largest lambda1 with purity 1/(nk-1) and the rest flat solves nk t^2 - 2t = 0.
        const double t = 2.0 / nk;
        std::vector<double> v(dims.total(), (1.0 - t) / (nk - 1.0));
        v[0] = t;
        const Verdict b = sepball_member(Spectrum(dims, v));
        if (!b.in() || std::abs(b.margin) > 1e-12) fails.push_back(tag + " sepball extremal");
        if (std::abs(extremal_spectrum(SetId::parse("sepball"), dims).at1(1) - t) > 1e-10)
            fails.push_back(tag + " sepball lambda1");
        v[0] += 1e-6;
        for (std::size_t i = 1; i < v.size(); ++i) v[i] -= 1e-6 / (nk - 1.0);
        if (!sepball_member(Spectrum(dims, v)).out()) fails.push_back(tag + " sepball perturbed accepted");
    }
    o.pass = fails.empty();
    o.detail = fails.empty() ? "ARED, LS_p and SEPBALL extremals at 5 dimension pairs" : fails.front();
    if (fails.size() > 1) o.detail += fmt(" (+%zu more)", fails.size() - 1);
    return o;
}

// 6. Pseudo-pure threshold identities.
Outcome criterion6() {
    std::vector<std::string> fails;
    const auto th = [](BipartiteDims dims, std::vector<double> nu, double mu) {
        return pseudopure_thresholds(PseudoPureParams(dims, SchmidtVector(std::move(nu)), mu));
    };
    const auto a = th({3, 2}, {0.5, 0.5}, 0.5);
    if (std::abs(a.ared_threshold - 0.75) > 1e-12 || std::abs(a.appt_threshold - 0.75) > 1e-12)
        fails.push_back("(3,2) thresholds not both 3/4");
    // The spectral predicates see the same threshold.
    for (double d : {-1e-6, 1e-6}) {
        const Spectrum s = pseudopure_spectrum({3, 2}, 0.75 + d);
        const AredReport rep = ared_decide(s);
        record(s, rep, "c6");
        if (appt_member(s).in() != (d > 0) || rep.verdict.in() != (d > 0)) fails.push_back("(3,2) spectral flip");
    }

    const double third = 1.0 / 3.0;
    const auto b = th({3, 3}, {third, third, third}, 0.78);
    if (std::abs(b.ared_threshold - 0.75) > 1e-12) fails.push_back("(3,3) ARED threshold != 3/4");
    if (std::abs(b.appt_threshold - 9.0 / 11.0) > 1e-12) fails.push_back("(3,3) APPT threshold != 9/11");
    if (!(b.ared_threshold < b.appt_threshold)) fails.push_back("(3,3) thresholds not ordered");
    for (double mu : {0.75, 0.78, 0.8, 9.0 / 11.0 - 1e-6}) {
        const auto w = th({3, 3}, {third, third, third}, mu);
        const Spectrum s = pseudopure_spectrum({3, 3}, mu);
        const AredReport rep = ared_decide(s);
        record(s, rep, "c6");
        if (!w.ared.in() || !w.appt.out()) fails.push_back(fmt("(3,3) mu=%.6f not in ARED minus APPT", mu));
        if (!rep.verdict.in() || !appt_member(s).out()) fails.push_back(fmt("(3,3) mu=%.6f spectral check", mu));
    }
    return {fails.empty(), fails.empty() ? "(3,2): 3/4 = 3/4; (3,3): 3/4 < 9/11, ARED minus APPT witnesses confirmed"
                                         : fails.front()};
}

// 7. Inclusion chain audit.
Outcome criterion7() {
    const auto t0 = Clock::now();
    std::string detail;
    bool pass = true;
    for (auto dims : {BipartiteDims(3, 3), BipartiteDims(4, 3)}) {
        const auto res = survey(dims, 1.0, 10000, derive_seed(7, dims.n()), {}, std::thread::hardware_concurrency());
        for (const auto& row : res.rows) record(Spectrum(dims, row.lambda), row.ared_report, "c7");
        const auto& v = res.violations;
        std::size_t in = 0;
        for (const auto& row : res.rows) in += row.ared == 1;
        pass = pass && v.total() == 0 && res.appt_unknown == 0;
        detail += fmt("(%zu,%zu): %zu ARED-In, chain violations %zu/%zu/%zu/%zu, others %zu, APPT unknown %zu; ",
                      dims.n(), dims.k(), in, v.appt_not_ls3, v.ls3_not_lsk, v.lsk_not_ared, v.ared_not_ls2k1,
                      v.ger_not_appt + v.sepball_not_appt + v.ls2_not_appt + v.ared_ne_appt_qubit, res.appt_unknown);
    }
    const double t = seconds_since(t0);
    detail += fmt("%.1fs", t);
    return {pass && t < 600.0, detail};
}

// 8. Every Out reproduced by its witness, every In survives Haar sampling.
Outcome criterion8() {
    std::size_t outs = 0, ins = 0, bad_out = 0, bad_in = 0;
    double worst_pair = 0.0, worst_in = 1.0;
    const auto threads = std::thread::hardware_concurrency();
    for (std::size_t i = 0; i < g_decisions.size(); ++i) {
        const auto& d = g_decisions[i];
        if (d.report.verdict.out()) {
            ++outs;
            const auto w = witness_unitary(d.lambda, d.report.argmin);
            const double gap = std::max(std::abs(w.pairing - w.objective), std::abs(w.objective - d.report.min_value));
            worst_pair = std::max(worst_pair, gap);
            if (!(w.lambda_min < 0.0) || gap > 1e-8) ++bad_out;
        } else if (d.report.verdict.in()) {
            ++ins;
            const auto r = mc_reduction_min(d.lambda, 1000, derive_seed(8, i), std::nullopt, threads);
            worst_in = std::min(worst_in, r.min);
            if (r.min < -1e-9) ++bad_in;
        }
    }
    return {outs + ins > 0 && bad_out == 0 && bad_in == 0,
            fmt("%zu Out witnesses (failures %zu, worst pairing gap %.1e), %zu In sampled x1000 (failures %zu, "
                "lowest lambda_min %.3e)",
                outs, bad_out, worst_pair, ins, bad_in, worst_in)};
}

// 9. Rank-deficient APPT spectra are exactly the boundary spectra.
Outcome criterion9() {
    std::size_t accepted = 0, wrong = 0;
    const std::vector<BipartiteDims> dims_list{{2, 2}, {3, 2}, {4, 2}, {3, 3}, {4, 3}};
    for (const auto& dims : dims_list) {
        const double d = static_cast<double>(dims.total());
        std::vector<double> v(dims.total(), 1.0 / (d - 1.0));
        v.back() = 0.0;
        if (appt_member(Spectrum(dims, v)).in()) ++accepted;
    }
    std::mt19937_64 rng(derive_seed(9, 0));
    for (int t = 0; t < 1000; ++t) {
        const auto& dims = dims_list[t % dims_list.size()];
        const std::size_t zeros = 1 + rng() % (dims.total() - 1);
        std::vector<double> v;
        if (t % 3 == 0) {
            // Near the boundary spectrum but off it.
            v.assign(dims.total(), 1.0);
            for (std::size_t i = 0; i < zeros; ++i) v[dims.total() - 1 - i] = 0.0;
            std::uniform_real_distribution<double> jitter(0.0, 0.2);
            for (std::size_t i = 0; i + zeros < dims.total(); ++i) v[i] += jitter(rng);
            double s = 0.0;
            for (double x : v) s += x;
            for (auto& x : v) x /= s;
        } else {
            v = testsupport::random_simplex(dims.total(), rng, zeros);
        }
        if (appt_member(Spectrum(dims, v)).in()) ++wrong;
    }
    return {accepted == dims_list.size() && wrong == 0,
            fmt("boundary accepted at %zu/%zu dimension pairs; %zu of 1000 other rank-deficient spectra accepted",
                accepted, dims_list.size(), wrong)};
}

// 10. sigma majorized by an ARED spectrum is ARED.
Outcome criterion10() {
    std::mt19937_64 rng(derive_seed(10, 0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::vector<BipartiteDims> dims_list{{3, 3}, {4, 3}, {3, 4}};
    std::size_t pairs = 0, violations = 0, not_majorized = 0, drawn = 0;
    while (pairs < 1000) {
        const auto& dims = dims_list[drawn++ % dims_list.size()];
        // Mix toward uniform so that a good share of draws is In.
        auto v = dirichlet(dims.total(), rng);
        const double s = unit(rng) * 0.6;
        for (auto& x : v) x = (1.0 - s) * x + s / static_cast<double>(dims.total());
        const Spectrum rho(dims, v);
        AredOptions o;
        o.seed = drawn;
        if (!ared_decide(rho, o).verdict.in()) continue;
        // A few T-transforms.
        const int moves = 1 + static_cast<int>(rng() % 4);
        for (int m = 0; m < moves; ++m) {
            const std::size_t i = rng() % v.size(), j = rng() % v.size();
            const double t = unit(rng);
            const double a = v[i], b = v[j];
            v[i] = (1.0 - t) * a + t * b;
            v[j] = t * a + (1.0 - t) * b;
        }
        const Spectrum sigma(dims, v);
        if (!majorizes(rho, sigma)) ++not_majorized;
        if (!ared_decide(sigma, o).verdict.in()) ++violations;
        ++pairs;
    }
    return {violations == 0 && not_majorized == 0,
            fmt("%zu pairs (from %zu draws), %zu violations, %zu construction errors", pairs, drawn, violations,
                not_majorized)};
}

// 11. Dimension monotonicity and the pseudo-pure separation example.
Outcome criterion11() {
    std::mt19937_64 rng(derive_seed(11, 0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t violations = 0, in43 = 0, out34 = 0;
    for (int t = 0; t < 1000; ++t) {
        auto v = dirichlet(12, rng);
        const double s = unit(rng) * 0.7;
        for (auto& x : v) x = (1.0 - s) * x + s / 12.0;
        const bool a = ared_decide(Spectrum({4, 3}, v)).verdict.in();
        const bool b = ared_decide(Spectrum({3, 4}, v)).verdict.in();
        in43 += a;
        out34 += !b;
        if (a && !b) ++violations;
    }

    std::vector<std::string> fails;
    const double lo = 3.0 / 4.0, hi = 6.0 / 7.0;
    const auto th = [](BipartiteDims dims, double mu) {
        return pseudopure_thresholds(PseudoPureParams(dims, SchmidtVector::uniform(dims.min_rank(), dims.min_rank()), mu));
    };
    if (std::abs(th({6, 2}, 0.8).ared_threshold - hi) > 1e-12) fails.push_back("(6,2) threshold != 6/7");
    if (!(th({3, 4}, 0.8).ared_threshold <= lo + 1e-12)) fails.push_back("(3,4) threshold above 3/4");
    for (double mu : {lo, 0.8, hi - 1e-9}) {
        if (!th({3, 4}, mu).ared.in()) fails.push_back(fmt("mu=%.9f not In at (3,4)", mu));
        if (!th({6, 2}, mu).ared.out()) fails.push_back(fmt("mu=%.9f not Out at (6,2)", mu));
        if (!ared_decide(pseudopure_spectrum({3, 4}, mu)).verdict.in()) fails.push_back("(3,4) spectral check");
        if (!ared_decide(pseudopure_spectrum({6, 2}, mu)).verdict.out()) fails.push_back("(6,2) spectral check");
    }
    return {violations == 0 && fails.empty(),
            fmt("1000 spectra: %zu In at (4,3), %zu Out at (3,4), %zu violations; pseudo-pure witness %s", in43,
                out34, violations, fails.empty() ? "confirmed" : fails.front().c_str())};
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<int, std::function<Outcome()>> criteria{
        {1, criterion1}, {2, criterion2}, {3, criterion3},  {4, criterion4},  {5, criterion5},  {6, criterion6},
        {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}, {11, criterion11}};
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    if (wanted.empty())
        for (const auto& [id, fn] : criteria) wanted.insert(id);
    // Criterion 8 replays the decisions of 4-7.
    std::set<int> run = wanted;
    if (wanted.count(8))
        for (int i : {4, 5, 6, 7}) run.insert(i);

    int failures = 0;
    for (const auto& [id, fn] : criteria) {
        if (!run.count(id)) continue;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!wanted.count(id)) continue;
        failures += !o.pass;
        std::printf("%s criterion %2d: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, wanted.size());
    return failures == 0 ? 0 : 1;
}
