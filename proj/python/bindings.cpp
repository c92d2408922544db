#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "absred/ared.hpp"
#include "absred/io.hpp"
#include "absred/oracle.hpp"
#include "absred/schmidt.hpp"
#include "absred/sets.hpp"

namespace py = pybind11;
using namespace absred;

namespace {

using Dims = std::pair<std::size_t, std::size_t>;

BipartiteDims to_dims(const Dims& d) { return {d.first, d.second}; }

// Reports cross the boundary as JSON text; the Python side parses them.
std::string check(const Dims& d, const std::string& set_id, const std::vector<double>& values,
                  std::uint64_t seed, bool force_optimizer) {
    const BipartiteDims dims = to_dims(d);
    const SetId set = SetId::parse(set_id);
    const Spectrum s(dims, values);
    switch (set.kind) {
        case SetId::Kind::Ared: {
            AredOptions o;
            o.seed = seed;
            o.force_optimizer = force_optimizer;
            return ared_report_to_json(ared_decide(s, o), dims).dump();
        }
        case SetId::Kind::Appt: return verdict_to_json(appt_member(s), dims).dump();
        case SetId::Kind::Ger: return verdict_to_json(ger_member(s), dims).dump();
        case SetId::Kind::Sepball: return verdict_to_json(sepball_member(s), dims).dump();
        case SetId::Kind::Ls: return verdict_to_json(ls_member(s, set.p), dims).dump();
        default: break;
    }
    throw ValidationError("set '" + set.str() + "' is not decidable from a spectrum here");
}

std::string check_matrix(const Dims& d, const std::string& set_id,
                         const std::vector<std::vector<std::complex<double>>>& rows) {
    const BipartiteDims dims = to_dims(d);
    ComplexMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw ValidationError("matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    if (m.dim() != dims.total()) throw ValidationError("matrix dimension does not match dims");
    const DensityMatrix rho(dims, m);
    const SetId set = SetId::parse(set_id);
    switch (set.kind) {
        case SetId::Kind::RedA: return verdict_to_json(red_member(rho, Side::A), dims).dump();
        case SetId::Kind::RedB: return verdict_to_json(red_member(rho, Side::B), dims).dump();
        case SetId::Kind::Ppt: return verdict_to_json(ppt_member(rho), dims).dump();
        default: break;
    }
    const Spectrum s = rho.spectrum();
    return check(d, set_id, std::vector<double>(s.values().begin(), s.values().end()), 1, false);
}

py::dict hat_py(const Dims& d, const std::vector<double>& x) {
    const HatVector h = hat(SchmidtVector(x), to_dims(d));
    py::dict out;
    out["pattern"] = h.entries;
    out["sorted"] = h.ascending();
    out["etas"] = h.etas;
    out["merged_near_equal"] = h.merged_near_equal;
    return out;
}

std::string pseudopure(const Dims& d, const std::vector<double>& nu, double mu) {
    const BipartiteDims dims = to_dims(d);
    const auto r = pseudopure_thresholds(PseudoPureParams(dims, SchmidtVector(nu), mu));
    const json j = {{"v", kSchemaVersion},
                    {"thresholds",
                     {{"ared", r.ared_threshold}, {"ppt", r.ppt_threshold}, {"appt", r.appt_threshold},
                      {"red", r.red_threshold}}},
                    {"ared", verdict_to_json(r.ared, dims)},
                    {"ppt", verdict_to_json(r.ppt, dims)},
                    {"appt", verdict_to_json(r.appt, dims)},
                    {"red", verdict_to_json(r.red, dims)}};
    return j.dump();
}

py::dict witness(const Dims& d, const std::vector<double>& values, const std::vector<double>& x) {
    const auto w = witness_unitary(Spectrum(to_dims(d), values), SchmidtVector(x));
    const auto& u = w.u.matrix();
    std::vector<std::vector<std::complex<double>>> rows(u.dim(), std::vector<std::complex<double>>(u.dim()));
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < u.dim(); ++j) rows[i][j] = u(i, j);
    py::dict out;
    out["unitary"] = rows;
    out["lambda_min"] = w.lambda_min;
    out["pairing"] = w.pairing;
    out["objective"] = w.objective;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral entanglement criteria: absolutely reduced spectra and related sets";
    m.def("check", &check, py::arg("dims"), py::arg("set"), py::arg("spectrum"), py::arg("seed") = 1,
          py::arg("force_optimizer") = false);
    m.def("check_matrix", &check_matrix, py::arg("dims"), py::arg("set"), py::arg("matrix"));
    m.def("hat", &hat_py, py::arg("dims"), py::arg("schmidt"));
    m.def("disturbance", [](const std::vector<double>& x) { return disturbance(SchmidtVector(x)); },
          py::arg("schmidt"));
    m.def("pseudopure", &pseudopure, py::arg("dims"), py::arg("schmidt"), py::arg("mu"));
    m.def("lambda_max",
          [](const Dims& d, const std::string& set) { return lambda_max(SetId::parse(set), to_dims(d)); },
          py::arg("dims"), py::arg("set"));
    m.def("witness", &witness, py::arg("dims"), py::arg("spectrum"), py::arg("schmidt"));
    m.def(
        "mc_reduction_min",
        [](const Dims& d, const std::vector<double>& values, std::size_t samples, std::uint64_t seed) {
            const auto r = mc_reduction_min(Spectrum(to_dims(d), values), samples, seed);
            return std::make_pair(r.min, r.argmin);
        },
        py::arg("dims"), py::arg("spectrum"), py::arg("samples"), py::arg("seed") = 1);
    m.def(
        "survey",
        [](const Dims& d, std::size_t count, std::uint64_t seed, double alpha) {
            return survey_summary(survey(to_dims(d), alpha, count, seed), alpha, seed).dump();
        },
        py::arg("dims"), py::arg("count"), py::arg("seed") = 1, py::arg("alpha") = 1.0);
}
