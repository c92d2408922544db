#include "absred/sets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace absred {

const char* to_string(Status s) {
    switch (s) {
        case Status::In: return "In";
        case Status::Out: return "Out";
        case Status::Unknown: return "Unknown";
    }
    return "Unknown";
}

SetId SetId::parse(std::string_view text) {
    using K = Kind;
    if (text == "ared") return {K::Ared, 0};
    if (text == "appt") return {K::Appt, 0};
    if (text == "asep") return {K::Asep, 0};
    if (text == "ger") return {K::Ger, 0};
    if (text == "sepball") return {K::Sepball, 0};
    if (text == "red:a") return {K::RedA, 0};
    if (text == "red:b") return {K::RedB, 0};
    if (text == "ppt") return {K::Ppt, 0};
    if (text.starts_with("ls:")) {
        std::size_t p = 0;
        const auto digits = text.substr(3);
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && p >= 1) return {K::Ls, p};
    }
    throw ValidationError("unknown set id '" + std::string(text) + "'");
}

std::string SetId::str() const {
    switch (kind) {
        case Kind::Ared: return "ared";
        case Kind::Appt: return "appt";
        case Kind::Asep: return "asep";
        case Kind::Ger: return "ger";
        case Kind::Sepball: return "sepball";
        case Kind::Ls: return "ls:" + std::to_string(p);
        case Kind::RedA: return "red:a";
        case Kind::RedB: return "red:b";
        case Kind::Ppt: return "ppt";
    }
    return "?";
}

namespace {

// Sum of lambda_i for 1-based i in [first, last].
double range_sum(const Spectrum& lambda, std::size_t first, std::size_t last) {
    double s = 0.0;
    for (std::size_t i = first; i <= last; ++i) s += lambda.at1(i);
    return s;
}

std::vector<std::size_t> index_range(std::size_t first, std::size_t last) {
    std::vector<std::size_t> idx;
    for (std::size_t i = first; i <= last; ++i) idx.push_back(i);
    return idx;
}

Verdict inequality(std::string set_id, std::string rule, double lhs, double rhs, double slack) {
    Verdict v;
    v.set_id = std::move(set_id);
    v.margin = rhs - lhs;
    v.status = lhs <= rhs + slack ? Status::In : Status::Out;
    v.certificate.rule = std::move(rule);
    v.certificate.lhs = lhs;
    v.certificate.rhs = rhs;
    return v;
}

}  // namespace

Verdict ls_member(const Spectrum& lambda, std::size_t p, const Tolerances& tol) {
    const std::size_t d = lambda.size();
    if (p < 1 || p > d) {
        throw ValidationError("LS_p needs 1 <= p <= " + std::to_string(d) + ", got p = " + std::to_string(p));
    }
    const std::string id = "ls:" + std::to_string(p);
    Verdict v = inequality(id, id, lambda.at1(1), range_sum(lambda, d - p + 1, d), tol.slack);
    v.certificate.indices = index_range(d - p + 1, d);
    v.certificate.indices.insert(v.certificate.indices.begin(), 1);
    return v;
}

Verdict ger_member(const Spectrum& lambda, const Tolerances& tol) {
    const std::size_t d = lambda.size();
    const std::size_t r = lambda.dims().min_rank();
    const double lhs = range_sum(lambda, 1, r - 1);
    const double rhs = 2.0 * lambda.at1(d) + range_sum(lambda, d - r + 1, d - 1);
    Verdict v = inequality("ger", "ger", lhs, rhs, tol.slack);
    v.certificate.indices = index_range(1, r - 1);
    const auto tail = index_range(d - r + 1, d);
    v.certificate.indices.insert(v.certificate.indices.end(), tail.begin(), tail.end());
    return v;
}

Verdict sepball_member(const Spectrum& lambda, const Tolerances& tol) {
    const double d = static_cast<double>(lambda.size());
    return inequality("sepball", "sepball:purity", lambda.purity(), 1.0 / (d - 1.0), tol.slack);
}

Verdict ared_qubit_B(const Spectrum& lambda, const Tolerances& tol) {
    if (lambda.dims().k() != 2) throw ValidationError("ared_qubit_B needs k = 2");
    const std::size_t d = lambda.size();  // 2n
    const double rhs = lambda.at1(d - 1) + 2.0 * std::sqrt(lambda.at1(d - 2) * lambda.at1(d));
    Verdict v = inequality("ared", "ared:closed-form-k2", lambda.at1(1), rhs, tol.slack);
    v.certificate.indices = {1, d - 2, d - 1, d};
    return v;
}

Verdict ared_qubit_A(const Spectrum& lambda, const Tolerances& tol) {
    if (lambda.dims().n() != 2) throw ValidationError("ared_qubit_A needs n = 2");
    const std::size_t k = lambda.dims().k();
    const double upper = range_sum(lambda, 2, k);
    const double lower = range_sum(lambda, k + 2, 2 * k);
    const double rhs = lambda.at1(k + 1) + 2.0 * std::sqrt(upper * lower);
    Verdict v = inequality("ared", "ared:closed-form-n2", lambda.at1(1), rhs, tol.slack);
    v.certificate.indices = index_range(1, 2 * k);
    return v;
}

Verdict cor_ared_necessary(const Spectrum& lambda, std::size_t r, const Tolerances& tol) {
    const auto& dims = lambda.dims();
    if (r < 1 || r > dims.min_rank()) {
        throw ValidationError("rank r must satisfy 1 <= r <= min(n,k), got " + std::to_string(r));
    }
    const std::size_t d = dims.total();
    const std::size_t first = (dims.n() - r) * dims.k() + 2;
    const double lhs = static_cast<double>(r - 1) * lambda.at1(1);
    const double rhs = first <= d ? range_sum(lambda, first, d) : 0.0;
    Verdict v = inequality("ared", "ared:uniform-rank-" + std::to_string(r), lhs, rhs, tol.slack);
    if (v.status == Status::In) {
        v.status = Status::Unknown;  // necessary only
    } else {
        const auto w = SchmidtVector::uniform(r, dims.min_rank());
        v.certificate.witness.assign(w.values().begin(), w.values().end());
    }
    v.certificate.indices = first <= d ? index_range(first, d) : std::vector<std::size_t>{};
    v.certificate.indices.insert(v.certificate.indices.begin(), 1);
    return v;
}

Verdict maxent_pt_necessary(const Spectrum& lambda, std::size_t m, const Tolerances& tol) {
    if (m < 2 || m > lambda.dims().min_rank()) {
        throw ValidationError("maxent test needs 2 <= m <= min(n,k), got m = " + std::to_string(m));
    }
    const std::size_t d = lambda.size();
    const std::size_t negatives = m * (m - 1) / 2;
    const std::size_t positives = m * (m + 1) / 2;
    const double scale = 1.0 / static_cast<double>(m);
    const double lhs = scale * range_sum(lambda, 1, negatives);
    const double rhs = scale * range_sum(lambda, d - positives + 1, d);
    Verdict v;
    v.set_id = "appt";
    v.margin = rhs - lhs;
    v.status = v.margin < -tol.slack ? Status::Out : Status::Unknown;
    v.certificate.rule = "appt:maxent-pt-m" + std::to_string(m);
    v.certificate.lhs = lhs;
    v.certificate.rhs = rhs;
    // Test vector, ascending: m(m-1)/2 entries -1/m, zeros, m(m+1)/2 entries +1/m.
    v.certificate.witness.assign(d, 0.0);
    std::fill_n(v.certificate.witness.begin(), negatives, -scale);
    std::fill(v.certificate.witness.end() - static_cast<std::ptrdiff_t>(positives), v.certificate.witness.end(), scale);
    return v;
}

std::array<ComplexMatrix, 2> appt_rank3_matrices(const Spectrum& lambda) {
    if (lambda.dims().min_rank() != 3) throw ValidationError("rank-3 APPT matrices need min(n,k) = 3");
    const std::size_t d = lambda.size();  // 3N
    auto l = [&](std::size_t i) { return lambda.at1(i); };
    ComplexMatrix a(3), b(3);
    const double a_entries[3][3] = {
        {2 * l(d), l(d - 1) - l(1), l(d - 2) - l(2)},
        {l(d - 1) - l(1), 2 * l(d - 3), l(d - 4) - l(3)},
        {l(d - 2) - l(2), l(d - 4) - l(3), 2 * l(d - 5)},
    };
    const double b_entries[3][3] = {
        {2 * l(d), l(d - 1) - l(1), l(d - 3) - l(2)},
        {l(d - 1) - l(1), 2 * l(d - 2), l(d - 4) - l(3)},
        {l(d - 3) - l(2), l(d - 4) - l(3), 2 * l(d - 5)},
    };
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            a(i, j) = a_entries[i][j];
            b(i, j) = b_entries[i][j];
        }
    return {a, b};
}

Verdict appt_member(const Spectrum& lambda, const Tolerances& tol) {
    const std::size_t r = lambda.dims().min_rank();
    const std::size_t d = lambda.size();
    if (r == 2) {
        const double rhs = lambda.at1(d - 1) + 2.0 * std::sqrt(lambda.at1(d - 2) * lambda.at1(d));
        Verdict v = inequality("appt", "appt:r2-closed-form", lambda.at1(1), rhs, tol.slack);
        v.certificate.indices = {1, d - 2, d - 1, d};
        return v;
    }
    if (r == 3) {
        const auto mats = appt_rank3_matrices(lambda);
        Verdict v;
        v.set_id = "appt";
        v.certificate.rule = "appt:r3-matrices";
        double worst = 0.0;
        std::size_t worst_index = 0;
        for (std::size_t i = 0; i < 2; ++i) {
            const auto eig = eig_hermitian(mats[i], tol);
            if (i == 0 || eig.values.front() < worst) {
                worst = eig.values.front();
                worst_index = i;
                v.certificate.eigenvector.assign(3, 0.0);
                for (std::size_t j = 0; j < 3; ++j) v.certificate.eigenvector[j] = eig.vectors(j, 0);
            }
        }
        v.margin = worst;
        v.certificate.lambda_min = worst;
        v.certificate.notes.push_back("smallest eigenvalue attained by matrix " + std::to_string(worst_index + 1));
        v.status = worst >= -tol.slack ? Status::In : Status::Out;
        return v;
    }

    // r >= 4: sufficient brackets first, then necessary ones.
    const Verdict ger = ger_member(lambda, tol);
    const Verdict ball = sepball_member(lambda, tol);
    std::vector<std::string> notes;
    if (ger.in() || ball.in()) {
        Verdict v = ger.in() ? ger : ball;
        v.set_id = "appt";
        v.certificate.rule = ger.in() ? "appt:ger-sufficient" : "appt:sepball-sufficient";
        return v;
    }
    notes.push_back("ger sufficient test failed (margin " + std::to_string(ger.margin) + ")");
    notes.push_back("sepball sufficient test failed (margin " + std::to_string(ball.margin) + ")");
    const Verdict ls3 = ls_member(lambda, 3, tol);
    if (ls3.out()) {
        Verdict v = ls3;
        v.set_id = "appt";
        v.certificate.rule = "appt:ls3-necessary";
        v.certificate.notes = notes;
        return v;
    }
    notes.push_back("ls:3 necessary test passed");
    for (std::size_t m = 2; m <= r; ++m) {
        Verdict t = maxent_pt_necessary(lambda, m, tol);
        if (t.out()) {
            t.certificate.notes = notes;
            return t;
        }
        notes.push_back("maxent-pt m=" + std::to_string(m) + " necessary test passed");
    }
    Verdict v;
    v.set_id = "appt";
    v.status = Status::Unknown;
    v.margin = std::min(ger.margin, ball.margin);
    v.certificate.rule = "appt:undecided";
    notes.push_back("exact matrix family for min(n,k) >= 4 not implemented");
    v.certificate.notes = std::move(notes);
    return v;
}

PseudoPureParams::PseudoPureParams(BipartiteDims d, SchmidtVector v, double m, const Tolerances& tol)
    : dims(d), nu(std::move(v)), mu(m) {
    if (!nu.is_normalized(tol.trace)) throw ValidationError("pseudo-pure Schmidt vector must sum to 1");
    if (nu.rank() > dims.min_rank()) throw ValidationError("pseudo-pure Schmidt rank exceeds min(n,k)");
    if (!(mu >= 0.0 && mu <= 1.0)) throw ValidationError("mu must lie in [0,1], got " + std::to_string(mu));
}

namespace {

Verdict threshold_verdict(std::string set_id, std::string rule, double mu, double threshold, double slack) {
    Verdict v;
    v.set_id = std::move(set_id);
    v.margin = mu - threshold;
    v.status = mu >= threshold - slack ? Status::In : Status::Out;
    v.certificate.rule = std::move(rule);
    v.certificate.lhs = threshold;
    v.certificate.rhs = mu;
    return v;
}

}  // namespace

PseudoPureReport pseudopure_thresholds(const PseudoPureParams& params, const Tolerances& tol) {
    const double n = static_cast<double>(params.dims.n());
    const double k = static_cast<double>(params.dims.k());
    const double r = static_cast<double>(params.dims.min_rank());
    const double nk = n * k;
    const double mu = params.mu;
    const auto nu = params.nu.positive_descending();

    PseudoPureReport rep{};
    rep.ared_threshold = 1.0 / ((k - 1.0) / nk * r / (r - 1.0) + 1.0);
    rep.appt_threshold = 1.0 / (2.0 / nk + 1.0);
    rep.ppt_threshold = nu.size() < 2 ? 0.0 : 1.0 / (1.0 / (nk * std::sqrt(nu[0] * nu[1])) + 1.0);
    const double c = disturbance(params.nu, tol);
    rep.red_threshold = c == 0.0 ? 0.0 : 1.0 / (1.0 + (k - 1.0) / (nk * c));

    rep.ared = threshold_verdict("ared", "pseudopure:ared-threshold", mu, rep.ared_threshold, tol.slack);
    rep.appt = threshold_verdict("appt", "pseudopure:appt-threshold", mu, rep.appt_threshold, tol.slack);
    rep.ppt = threshold_verdict("ppt", "pseudopure:ppt-threshold", mu, rep.ppt_threshold, tol.slack);

    // RED: sum_i (mu/(1-mu) (k-1)/(nk) / nu_i + 1)^{-1} <= 1, with mu = 1 as the limit (sum 0).
    double sum = 0.0;
    if (mu < 1.0) {
        const double t = mu / (1.0 - mu) * (k - 1.0) / nk;
        for (double v : nu) sum += 1.0 / (t / v + 1.0);
    }
    rep.red = inequality("red:b", "pseudopure:red-sum", sum, 1.0, tol.slack);
    rep.red.certificate.notes.push_back("threshold via disturbance: " + std::to_string(rep.red_threshold));
    return rep;
}

Spectrum pseudopure_spectrum(const BipartiteDims& dims, double mu) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw ValidationError("mu must lie in [0,1]");
    const double d = static_cast<double>(dims.total());
    std::vector<double> v(dims.total(), mu / d);
    v[0] += 1.0 - mu;
    return Spectrum(dims, std::move(v));
}

double lambda_max(const SetId& set, const BipartiteDims& dims) {
    const double n = static_cast<double>(dims.n());
    const double k = static_cast<double>(dims.k());
    const double nk = n * k;
    switch (set.kind) {
        case SetId::Kind::Ared: return dims.k() <= dims.n() ? (k + 1.0) / (k * (n + 1.0)) : 1.0 / n;
        case SetId::Kind::Ls: {
            if (set.p < 1 || set.p > dims.total()) throw ValidationError("LS_p needs 1 <= p <= nk");
            const double p = static_cast<double>(set.p);
            return p / (nk + p - 1.0);
        }
        case SetId::Kind::Appt:
        case SetId::Kind::Asep:
        case SetId::Kind::Ger: return 3.0 / (2.0 + nk);
        case SetId::Kind::Sepball: return 2.0 / nk;
        default: break;
    }
    throw ValidationError("lambda_max is not defined for set '" + set.str() + "'");
}

Spectrum extremal_spectrum(const SetId& set, const BipartiteDims& dims) {
    const double nk = static_cast<double>(dims.total());
    switch (set.kind) {
        case SetId::Kind::Ared: {
            const double k = static_cast<double>(dims.k());
            const double r = static_cast<double>(dims.min_rank());
            return pseudopure_spectrum(dims, 1.0 / ((k - 1.0) / nk * r / (r - 1.0) + 1.0));
        }
        case SetId::Kind::Ls: {
            if (set.p < 1 || set.p > dims.total()) throw ValidationError("LS_p needs 1 <= p <= nk");
            const double p = static_cast<double>(set.p);
            const double a = 1.0 / (nk + p - 1.0);
            std::vector<double> v(dims.total(), a);
            v[0] = p * a;
            return Spectrum(dims, std::move(v));
        }
        case SetId::Kind::Appt:
        case SetId::Kind::Asep:
        case SetId::Kind::Ger: return pseudopure_spectrum(dims, 1.0 / (2.0 / nk + 1.0));
        case SetId::Kind::Sepball: {
            const double top = 2.0 / nk;
            std::vector<double> v(dims.total(), (1.0 - top) / (nk - 1.0));
            v[0] = top;
            return Spectrum(dims, std::move(v));
        }
        default: break;
    }
    throw ValidationError("no extremal spectrum for set '" + set.str() + "'");
}

namespace {

Verdict psd_verdict(std::string set_id, std::string rule, const ComplexMatrix& mapped, const Tolerances& tol) {
    const auto eig = eig_hermitian(mapped, tol);
    Verdict v;
    v.set_id = std::move(set_id);
    v.margin = eig.values.front();
    v.status = eig.values.front() >= -tol.psd_floor ? Status::In : Status::Out;
    v.certificate.rule = std::move(rule);
    v.certificate.lambda_min = eig.values.front();
    v.certificate.eigenvector.resize(mapped.dim());
    for (std::size_t i = 0; i < mapped.dim(); ++i) v.certificate.eigenvector[i] = eig.vectors(i, 0);
    return v;
}

}  // namespace

Verdict red_member(const DensityMatrix& rho, Side side, const Tolerances& tol) {
    if (side == Side::B) return psd_verdict("red:b", "red:b:lambda-min", reduction_B(rho.matrix(), rho.dims()), tol);
    return psd_verdict("red:a", "red:a:lambda-min", reduction_A(rho.matrix(), rho.dims()), tol);
}

Verdict ppt_member(const DensityMatrix& rho, const Tolerances& tol) {
    return psd_verdict("ppt", "ppt:lambda-min", partial_transpose(rho.matrix(), rho.dims()), tol);
}

}  // namespace absred
