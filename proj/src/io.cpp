#include "absred/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace absred {

namespace {

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::vector<std::vector<double>> rows_of(const json& j, std::size_t dim, const char* field) {
    if (!j.is_array() || j.size() != dim) throw ValidationError(std::string("matrix field '") + field + "' needs " +
                                                                std::to_string(dim) + " rows");
    std::vector<std::vector<double>> rows;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != dim)
            throw ValidationError(std::string("matrix field '") + field + "' has a row of the wrong length");
        rows.push_back(row.get<std::vector<double>>());
    }
    return rows;
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re"))
        throw ValidationError("matrix JSON needs \"dim\" and \"re\"");
    const auto dim = j.at("dim").get<std::size_t>();
    if (dim == 0) throw ValidationError("matrix dimension must be positive");
    const auto re = rows_of(j.at("re"), dim, "re");
    std::vector<std::vector<double>> im(dim, std::vector<double>(dim, 0.0));
    if (j.contains("im")) im = rows_of(j.at("im"), dim, "im");
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = {re[r][c], im[r][c]};
    return m;
}

json matrix_to_json(const ComplexMatrix& m) {
    json re = json::array(), im = json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        json a = json::array(), b = json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) {
            a.push_back(m(r, c).real());
            b.push_back(m(r, c).imag());
        }
        re.push_back(std::move(a));
        im.push_back(std::move(b));
    }
    return {{"dim", m.dim()}, {"re", re}, {"im", im}};
}

Spectrum spectrum_from_json(const json& j, const Tolerances& tol) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("values"))
        throw ValidationError("spectrum JSON needs \"dims\" and \"values\"");
    const auto d = j.at("dims").get<std::vector<std::size_t>>();
    if (d.size() != 2) throw ValidationError("\"dims\" must be [n, k]");
    return Spectrum({d[0], d[1]}, j.at("values").get<std::vector<double>>(), tol);
}

json spectrum_to_json(const Spectrum& s) {
    return {{"dims", {s.dims().n(), s.dims().k()}},
            {"values", std::vector<double>(s.values().begin(), s.values().end())}};
}

json certificate_to_json(const Certificate& c) {
    json j = {{"rule", c.rule}, {"lhs", finite_or_null(c.lhs)}, {"rhs", finite_or_null(c.rhs)}};
    if (!c.indices.empty()) j["indices"] = c.indices;
    if (!c.witness.empty()) j["witness"] = c.witness;
    if (c.lambda_min) j["lambda_min"] = *c.lambda_min;
    if (!c.eigenvector.empty()) {
        json re = json::array(), im = json::array();
        for (const auto& z : c.eigenvector) {
            re.push_back(z.real());
            im.push_back(z.imag());
        }
        j["eigenvector"] = {{"re", re}, {"im", im}};
    }
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

json verdict_to_json(const Verdict& v, const BipartiteDims& dims) {
    return {{"v", kSchemaVersion},
            {"set", v.set_id},
            {"dims", {dims.n(), dims.k()}},
            {"status", to_string(v.status)},
            {"certificate", certificate_to_json(v.certificate)},
            {"margin", finite_or_null(v.margin)}};
}

json ared_report_to_json(const AredReport& r, const BipartiteDims& dims) {
    json j = verdict_to_json(r.verdict, dims);
    j["ared"] = {{"method", to_string(r.method)},
                 {"min_value", finite_or_null(r.min_value)},
                 {"argmin", std::vector<double>(r.argmin.values().begin(), r.argmin.values().end())},
                 {"rank_scanned", {r.rank_scanned.first, r.rank_scanned.second}},
                 {"multistarts_used", r.multistarts_used}};
    return j;
}

Tolerances tolerances_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("tolerance profile must be a JSON object");
    Tolerances t = default_tolerances();
    for (const auto& [key, value] : j.items()) {
        if (key == "v" || key == "name") continue;
        double* field = nullptr;
        if (key == "hermitian") field = &t.hermitian;
        else if (key == "hermitian_reject") field = &t.hermitian_reject;
        else if (key == "trace") field = &t.trace;
        else if (key == "density_floor") field = &t.density_floor;
        else if (key == "unitary") field = &t.unitary;
        else if (key == "jacobi_offdiag") field = &t.jacobi_offdiag;
        else if (key == "cluster") field = &t.cluster;
        else if (key == "slack") field = &t.slack;
        else if (key == "psd_floor") field = &t.psd_floor;
        else if (key == "ared_reject") field = &t.ared_reject;
        else throw ValidationError("unknown tolerance '" + key + "'");
        const double x = value.get<double>();
        if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError("tolerance '" + key + "' must be finite and >= 0");
        *field = x;
    }
    return t;
}

json tolerances_to_json(const Tolerances& t) {
    return {{"hermitian", t.hermitian},         {"hermitian_reject", t.hermitian_reject},
            {"trace", t.trace},                 {"density_floor", t.density_floor},
            {"unitary", t.unitary},             {"jacobi_offdiag", t.jacobi_offdiag},
            {"cluster", t.cluster},             {"slack", t.slack},
            {"psd_floor", t.psd_floor},         {"ared_reject", t.ared_reject}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

std::vector<double> parse_number_list(std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
        double x = 0.0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
        if (item.empty() || ec != std::errc() || end != item.data() + item.size() || !std::isfinite(x))
            throw ValidationError("not a number: '" + std::string(item) + "'");
        out.push_back(x);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

void write_survey_csv(std::ostream& os, const SurveyResult& s) {
    const std::size_t d = s.dims.total();
    for (std::size_t i = 1; i <= d; ++i) os << "lambda" << i << ',';
    os << "ls3,lsk,ared,appt,ger,sepball\n";
    char buf[32];
    for (const auto& row : s.rows) {
        for (double x : row.lambda) {
            const auto res = std::to_chars(buf, buf + sizeof buf, x);
            os.write(buf, res.ptr - buf);
            os << ',';
        }
        os << row.ls3 << ',' << row.lsk << ',' << row.ared << ',' << row.appt << ',' << row.ger << ','
           << row.sepball << '\n';
    }
}

json survey_summary(const SurveyResult& s, double alpha, std::uint64_t seed) {
    std::size_t counts[6] = {};
    std::size_t optimizer = 0;
    for (const auto& row : s.rows) {
        const int bits[6] = {row.ls3, row.lsk, row.ared, row.appt, row.ger, row.sepball};
        for (int i = 0; i < 6; ++i) counts[i] += bits[i] == 1;
        optimizer += row.ared_report.method == AredMethod::Optimizer;
    }
    const auto& v = s.violations;
    return {{"v", kSchemaVersion},
            {"dims", {s.dims.n(), s.dims.k()}},
            {"count", s.rows.size()},
            {"alpha", alpha},
            {"seed", seed},
            {"in_counts",
             {{"ls3", counts[0]}, {"lsk", counts[1]}, {"ared", counts[2]}, {"appt", counts[3]}, {"ger", counts[4]},
              {"sepball", counts[5]}}},
            {"appt_unknown", s.appt_unknown},
            {"ared_optimizer_calls", optimizer},
            {"violations",
             {{"appt_not_ls3", v.appt_not_ls3},
              {"ls3_not_lsk", v.ls3_not_lsk},
              {"lsk_not_ared", v.lsk_not_ared},
              {"ared_not_ls2k1", v.ared_not_ls2k1},
              {"ger_not_appt", v.ger_not_appt},
              {"sepball_not_appt", v.sepball_not_appt},
              {"ls2_not_appt", v.ls2_not_appt},
              {"ared_ne_appt_qubit", v.ared_ne_appt_qubit},
              {"total", v.total()}}}};
}

}  // namespace absred
