#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "absred/ared.hpp"
#include "absred/io.hpp"
#include "absred/oracle.hpp"
#include "absred/schmidt.hpp"
#include "absred/sets.hpp"

using namespace absred;

namespace {

constexpr int kExitIn = 0;
constexpr int kExitOut = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct Globals {
    std::uint64_t seed = 1;
    std::string tol_profile = "default";
    std::string out;
    std::size_t threads = 1;
    bool quiet = false;
    Tolerances tol;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_for(Status s) {
    switch (s) {
        case Status::In: return kExitIn;
        case Status::Out: return kExitOut;
        case Status::Unknown: return kExitUnknown;
    }
    return kExitUnknown;
}

void emit(const Globals& g, const std::string& text) {
    if (!g.out.empty()) {
        std::ofstream f(g.out);
        if (!f) throw UsageError("cannot write " + g.out);
        f << text;
        return;
    }
    if (!g.quiet) std::cout << text;
}

void emit(const Globals& g, const json& j) { emit(g, j.dump(2) + "\n"); }

void warn(const Globals& g, const std::string& msg) {
    if (!g.quiet) std::cerr << "warning: " << msg << "\n";
}

BipartiteDims parse_dims(const std::string& text) {
    const auto v = parse_number_list(text);
    if (v.size() != 2) throw UsageError("--dims expects n,k");
    for (double x : v)
        if (x != std::floor(x) || x < 2 || x > 4096) throw UsageError("--dims entries must be integers >= 2");
    return {static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1])};
}

struct SpectrumInput {
    Spectrum spectrum;
    std::vector<std::size_t> permutation;  // 1-based input positions in descending order
    bool reordered = false;
};

SpectrumInput read_spectrum(const std::string& arg, const BipartiteDims& dims, const Tolerances& tol) {
    if (arg == "uniform") {
        std::vector<std::size_t> id(dims.total());
        std::iota(id.begin(), id.end(), 1);
        return {Spectrum::uniform(dims), id, false};
    }
    std::vector<double> raw;
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        const json j = read_json_file(arg);
        if (j.contains("dims")) {
            const auto d = j.at("dims").get<std::vector<std::size_t>>();
            if (d.size() != 2 || BipartiteDims(d[0], d[1]) != dims)
                throw UsageError("spectrum file dims disagree with --dims");
        }
        if (!j.contains("values")) throw UsageError("spectrum file needs \"values\"");
        raw = j.at("values").get<std::vector<double>>();
    } else {
        raw = parse_number_list(arg);
    }
    std::vector<std::size_t> perm(raw.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return raw[a] > raw[b]; });
    bool reordered = false;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        reordered = reordered || perm[i] != i;
        ++perm[i];
    }
    return {Spectrum(dims, std::move(raw), tol), std::move(perm), reordered};
}

DensityMatrix read_density(const std::string& path, const BipartiteDims& dims, const Globals& g) {
    const ComplexMatrix m = matrix_from_json(read_json_file(path));
    if (m.dim() != dims.total()) throw UsageError("matrix dimension does not match --dims");
    DensityMatrix rho(dims, m, g.tol);
    if (rho.symmetrization_warning())
        warn(g, "input was not Hermitian; symmetrized with correction " + std::to_string(rho.hermitian_correction()));
    return rho;
}

Verdict spectral_verdict(const SetId& set, const Spectrum& s, const AredOptions& opts, const Tolerances& tol,
                         std::optional<AredReport>& report) {
    switch (set.kind) {
        case SetId::Kind::Ared:
            report = ared_decide(s, opts, tol);
            return report->verdict;
        case SetId::Kind::Appt: return appt_member(s, tol);
        case SetId::Kind::Asep: {
            // Only the sufficient brackets are decidable for ASEP; APPT is necessary.
            Verdict v = ger_member(s, tol);
            if (!v.in()) {
                Verdict b = sepball_member(s, tol);
                if (b.in()) v = b;
            }
            if (!v.in()) {
                Verdict a = appt_member(s, tol);
                if (a.out()) v = a;
                else v.status = Status::Unknown;
            }
            v.set_id = "asep";
            return v;
        }
        case SetId::Kind::Ger: return ger_member(s, tol);
        case SetId::Kind::Sepball: return sepball_member(s, tol);
        case SetId::Kind::Ls: return ls_member(s, set.p, tol);
        default: break;
    }
    throw UsageError("set '" + set.str() + "' is not spectral");
}

struct AredFlags {
    std::size_t multistarts = AredOptions{}.multistarts;
    std::size_t iters = AredOptions{}.nelder_mead_iters;
    double grid_step = AredOptions{}.grid_step;
    bool force = false;

    void attach(CLI::App* app) {
        app->add_option("--multistarts", multistarts, "Random starts per rank for the ARED optimizer");
        app->add_option("--nm-iters", iters, "Nelder-Mead iterations per start");
        app->add_option("--grid-step", grid_step, "Lattice seed spacing for ranks <= 3");
        app->add_flag("--force-optimizer", force, "Skip closed forms and prefilters");
    }
    AredOptions options(std::uint64_t seed) const { return {multistarts, iters, grid_step, seed, force}; }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral entanglement criteria: absolutely reduced spectra and related sets"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Master seed for all random streams");
    app.add_option("--tol-profile", g.tol_profile, "'default' or a JSON file overriding tolerance fields");
    app.add_option("--out", g.out, "Write the report here instead of stdout");
    app.add_option("--threads", g.threads, "Worker threads for sampling commands")->check(CLI::PositiveNumber);
    app.add_flag("--quiet", g.quiet, "No stdout; the exit code carries the verdict");

    std::string dims_s, set_s, spectrum_s, matrix_s, schmidt_s, mode = "mc";
    double mu = 0.0, step = 0.01, alpha = 1.0;
    std::size_t samples = 1000, rank = 2, count = 1000;
    bool verify = false;
    std::string summary_path;
    AredFlags af;

    auto* check = app.add_subcommand("check", "Decide membership of a spectrum or state in a set");
    check->add_option("--dims", dims_s, "n,k")->required();
    check->add_option("--set", set_s, "ared, appt, asep, ger, sepball, ls:<p>, red:a, red:b, ppt")->required();
    check->add_option("--spectrum", spectrum_s, "Spectrum JSON file, inline csv, or 'uniform'");
    check->add_option("--matrix", matrix_s, "Density matrix JSON file");
    af.attach(check);

    auto* hatc = app.add_subcommand("hat", "Spectrum of the reduced projector of a pure state");
    hatc->add_option("--dims", dims_s, "n,k")->required();
    hatc->add_option("--schmidt", schmidt_s, "Schmidt coefficients, csv")->required();

    auto* lam = app.add_subcommand("lambda", "Largest eigenvalue allowed by a spectral set");
    lam->add_option("--dims", dims_s, "n,k")->required();
    lam->add_option("--set", set_s, "ared, appt, asep, ger, sepball, ls:<p>")->required();
    lam->add_flag("--verify", verify, "Build the extremal spectrum and decide it");

    auto* pp = app.add_subcommand("pseudopure", "Membership of mu I/(nk) + (1-mu) v v*");
    pp->add_option("--dims", dims_s, "n,k")->required();
    pp->add_option("--schmidt", schmidt_s, "Schmidt coefficients of v, csv")->required();
    pp->add_option("--mu", mu, "Mixing weight in [0,1]")->required();
    pp->add_option("--set", set_s, "Set whose verdict becomes the exit code (ared, ppt, appt, red:b)");

    auto* wit = app.add_subcommand("witness", "Unitary realizing the ARED objective for a Schmidt vector");
    wit->add_option("--dims", dims_s, "n,k")->required();
    wit->add_option("--spectrum", spectrum_s, "Spectrum JSON file, inline csv, or 'uniform'")->required();
    wit->add_option("--schmidt", schmidt_s, "Schmidt vector; default is the ARED optimizer's argmin");
    af.attach(wit);

    auto* orc = app.add_subcommand("oracle", "Monte-Carlo or lattice check of the ARED quantifier");
    orc->add_option("--dims", dims_s, "n,k")->required();
    orc->add_option("--spectrum", spectrum_s, "Spectrum JSON file, inline csv, or 'uniform'")->required();
    orc->add_option("--mode", mode, "mc or grid")->check(CLI::IsMember({"mc", "grid"}));
    orc->add_option("--samples", samples, "Haar samples (mc)")->check(CLI::PositiveNumber);
    orc->add_option("--rank", rank, "Schmidt rank 2 or 3 (grid)");
    orc->add_option("--step", step, "Lattice spacing in (0, 0.5] (grid)");

    auto* sur = app.add_subcommand("survey", "Classify Dirichlet spectra against every spectral set");
    sur->add_option("--dims", dims_s, "n,k")->required();
    sur->add_option("--count", count, "Number of spectra")->check(CLI::PositiveNumber);
    sur->add_option("--alpha", alpha, "Dirichlet concentration")->check(CLI::PositiveNumber);
    sur->add_option("--summary", summary_path, "Write the JSON summary here (default: stderr)");
    af.attach(sur);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (g.tol_profile == "default") g.tol = default_tolerances();
        else g.tol = tolerances_from_json(read_json_file(g.tol_profile));
        const BipartiteDims dims = parse_dims(dims_s);

        if (*check) {
            const SetId set = SetId::parse(set_s);
            if (!set.is_spectral()) {
                if (matrix_s.empty()) throw UsageError("--set " + set.str() + " needs --matrix");
                const DensityMatrix rho = read_density(matrix_s, dims, g);
                const Verdict v = set.kind == SetId::Kind::Ppt ? ppt_member(rho, g.tol)
                                                               : red_member(rho, set.kind == SetId::Kind::RedA
                                                                                     ? Side::A
                                                                                     : Side::B,
                                                                            g.tol);
                emit(g, verdict_to_json(v, dims));
                return exit_for(v.status);
            }
            if (spectrum_s.empty() == matrix_s.empty()) throw UsageError("give exactly one of --spectrum, --matrix");
            std::optional<SpectrumInput> in;
            if (!spectrum_s.empty()) {
                in = read_spectrum(spectrum_s, dims, g.tol);
            } else {
                const auto rho = read_density(matrix_s, dims, g);
                in = SpectrumInput{rho.spectrum(g.tol), {}, false};
            }
            std::optional<AredReport> report;
            const Verdict v = spectral_verdict(set, in->spectrum, af.options(g.seed), g.tol, report);
            json j = report ? ared_report_to_json(*report, dims) : verdict_to_json(v, dims);
            j["spectrum"] = std::vector<double>(in->spectrum.values().begin(), in->spectrum.values().end());
            if (in->reordered) j["permutation"] = in->permutation;
            emit(g, j);
            return exit_for(v.status);
        }

        if (*hatc) {
            const SchmidtVector x(parse_number_list(schmidt_s));
            const HatVector h = hat(x, dims, g.tol);
            json j = {{"v", kSchemaVersion},
                      {"dims", {dims.n(), dims.k()}},
                      {"schmidt", std::vector<double>(x.values().begin(), x.values().end())},
                      {"pattern", h.entries},
                      {"sorted", h.ascending()},
                      {"etas", h.etas},
                      {"merged_near_equal", h.merged_near_equal}};
            if (x.is_normalized(g.tol.trace)) j["disturbance"] = disturbance(x, g.tol);
            else warn(g, "Schmidt vector is not normalized; hat scales linearly");
            emit(g, j);
            return 0;
        }

        if (*lam) {
            const SetId set = SetId::parse(set_s);
            json j = {{"v", kSchemaVersion}, {"set", set.str()}, {"dims", {dims.n(), dims.k()}},
                      {"lambda_max", lambda_max(set, dims)}};
            switch (set.kind) {
                case SetId::Kind::Ared:
                    j["closed_form"] = dims.k() <= dims.n() ? "(k+1)/(k(n+1))" : "1/n";
                    break;
                case SetId::Kind::Ls: j["closed_form"] = "p/(nk+p-1)"; break;
                case SetId::Kind::Sepball: j["closed_form"] = "2/(nk)"; break;
                default: j["closed_form"] = "3/(nk+2)"; break;
            }
            int code = 0;
            if (verify) {
                const Spectrum s = extremal_spectrum(set, dims);
                std::optional<AredReport> report;
                const Verdict v = spectral_verdict(set, s, AredOptions{.seed = g.seed}, g.tol, report);
                j["verify"] = {{"spectrum", spectrum_to_json(s)},
                               {"lambda1", s.at1(1)},
                               {"verdict", verdict_to_json(v, dims)}};
                code = exit_for(v.status);
            }
            emit(g, j);
            return code;
        }

        if (*pp) {
            const PseudoPureParams params(dims, SchmidtVector(parse_number_list(schmidt_s)), mu, g.tol);
            const auto rep = pseudopure_thresholds(params, g.tol);
            json j = {{"v", kSchemaVersion},
                      {"dims", {dims.n(), dims.k()}},
                      {"mu", mu},
                      {"thresholds",
                       {{"ared", rep.ared_threshold},
                        {"ppt", rep.ppt_threshold},
                        {"appt", rep.appt_threshold},
                        {"red", rep.red_threshold}}},
                      {"ared", verdict_to_json(rep.ared, dims)},
                      {"ppt", verdict_to_json(rep.ppt, dims)},
                      {"appt", verdict_to_json(rep.appt, dims)},
                      {"red", verdict_to_json(rep.red, dims)}};
            emit(g, j);
            if (set_s.empty() || set_s == "ared") return exit_for(rep.ared.status);
            if (set_s == "ppt") return exit_for(rep.ppt.status);
            if (set_s == "appt") return exit_for(rep.appt.status);
            if (set_s == "red:b") return exit_for(rep.red.status);
            throw UsageError("pseudopure --set must be ared, ppt, appt or red:b");
        }

        if (*wit) {
            const auto in = read_spectrum(spectrum_s, dims, g.tol);
            std::vector<double> xs;
            if (schmidt_s.empty()) {
                const auto rep = ared_decide(in.spectrum, af.options(g.seed), g.tol);
                xs.assign(rep.argmin.values().begin(), rep.argmin.values().end());
            } else {
                xs = parse_number_list(schmidt_s);
            }
            const SchmidtVector x(xs);
            const auto w = witness_unitary(in.spectrum, x, g.tol);
            json j = {{"v", kSchemaVersion},
                      {"dims", {dims.n(), dims.k()}},
                      {"schmidt", xs},
                      {"objective", w.objective},
                      {"pairing", w.pairing},
                      {"lambda_min", w.lambda_min},
                      {"status", w.lambda_min < -g.tol.psd_floor ? "Out" : "In"},
                      {"unitary", matrix_to_json(w.u.matrix())}};
            emit(g, j);
            return w.lambda_min < -g.tol.psd_floor ? kExitOut : kExitIn;
        }

        if (*orc) {
            const auto in = read_spectrum(spectrum_s, dims, g.tol);
            json j = {{"v", kSchemaVersion}, {"dims", {dims.n(), dims.k()}}, {"mode", mode}};
            if (mode == "mc") {
                const auto r = mc_reduction_min(in.spectrum, samples, g.seed, std::nullopt, g.threads, g.tol);
                j["samples"] = r.samples;
                j["seed"] = g.seed;
                j["min_lambda_min"] = r.min;
                j["argmin_sample"] = r.argmin;
                emit(g, j);
                return r.min < -g.tol.psd_floor ? kExitOut : kExitIn;
            }
            const auto r = grid_min_objective(in.spectrum, rank, step, g.tol);
            j["rank"] = rank;
            j["step"] = step;
            j["points"] = r.points;
            j["min_objective"] = r.value;
            j["argmin"] = r.x;
            emit(g, j);
            return r.value < -g.tol.ared_reject ? kExitOut : kExitIn;
        }

        if (*sur) {
            const auto res = survey(dims, alpha, count, g.seed, af.options(g.seed), g.threads, g.tol);
            std::ostringstream csv;
            write_survey_csv(csv, res);
            emit(g, csv.str());
            const json summary = survey_summary(res, alpha, g.seed);
            if (!summary_path.empty()) {
                std::ofstream f(summary_path);
                if (!f) throw UsageError("cannot write " + summary_path);
                f << summary.dump(2) << "\n";
            } else if (!g.quiet) {
                std::cerr << summary.dump(2) << "\n";
            }
            return res.violations.total() == 0 ? 0 : kExitOut;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
