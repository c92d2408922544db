#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "absred/linalg.hpp"
#include "absred/schmidt.hpp"
#include "absred/verdict.hpp"

namespace absred {

/// Identifier of a named spectral or state set. String forms:
/// "ared", "appt", "asep", "ger", "sepball", "ls:<p>", "red:a", "red:b", "ppt".
struct SetId {
    enum class Kind { Ared, Appt, Asep, Ger, Sepball, Ls, RedA, RedB, Ppt };
    Kind kind = Kind::Ared;
    std::size_t p = 0;  // only for Ls

    static SetId parse(std::string_view text);
    std::string str() const;
    bool is_spectral() const { return kind != Kind::RedA && kind != Kind::RedB && kind != Kind::Ppt; }
};

// Spectral predicates. Every "<=" carries tol.slack so equality cases land In.

/// lambda_1 <= lambda_{nk-p+1} + ... + lambda_{nk}.
Verdict ls_member(const Spectrum& lambda, std::size_t p, const Tolerances& tol = default_tolerances());

/// sum_{i<r} lambda_i <= 2 lambda_nk + sum_{i<r} lambda_{nk-i}, r = min(n,k).
Verdict ger_member(const Spectrum& lambda, const Tolerances& tol = default_tolerances());

/// Tr rho^2 <= 1/(nk-1).
Verdict sepball_member(const Spectrum& lambda, const Tolerances& tol = default_tolerances());

/// Exact ARED_{n,2}: lambda_1 <= lambda_{2n-1} + 2 sqrt(lambda_{2n-2} lambda_{2n}).
Verdict ared_qubit_B(const Spectrum& lambda, const Tolerances& tol = default_tolerances());

/// Exact ARED_{2,k}: lambda_1 <= lambda_{k+1} + 2 sqrt((lambda_2+..+lambda_k)(lambda_{k+2}+..+lambda_2k)).
Verdict ared_qubit_A(const Spectrum& lambda, const Tolerances& tol = default_tolerances());

/// Necessary ARED condition from the uniform rank-r Schmidt vector:
/// (r-1) lambda_1 <= sum_{i=(n-r)k+2}^{nk} lambda_i. Out or Unknown, never In.
Verdict cor_ared_necessary(const Spectrum& lambda, std::size_t r, const Tolerances& tol = default_tolerances());

/// Necessary APPT condition from the partial transpose of a rank-m maximally
/// entangled projector. Out or Unknown, never In.
Verdict maxent_pt_necessary(const Spectrum& lambda, std::size_t m, const Tolerances& tol = default_tolerances());

/// APPT: exact for min(n,k) <= 3, bracketed by GER/SEPBALL (sufficient) and
/// LS_3/maxent tests (necessary) above that, Unknown when the brackets disagree.
Verdict appt_member(const Spectrum& lambda, const Tolerances& tol = default_tolerances());

/// The two 3x3 matrices whose joint positivity decides APPT when min(n,k) = 3.
std::array<ComplexMatrix, 2> appt_rank3_matrices(const Spectrum& lambda);

struct PseudoPureParams {
    BipartiteDims dims;
    SchmidtVector nu;
    double mu;

    PseudoPureParams(BipartiteDims dims, SchmidtVector nu, double mu, const Tolerances& tol = default_tolerances());
};

struct PseudoPureReport {
    Verdict ared;
    Verdict ppt;   // = SEP for pseudo-pure states
    Verdict appt;  // = ASEP for pseudo-pure states
    Verdict red;
    double ared_threshold;
    double ppt_threshold;
    double appt_threshold;
    double red_threshold;
};

/// Membership of mu I/(nk) + (1-mu) v v* from closed-form thresholds in mu.
PseudoPureReport pseudopure_thresholds(const PseudoPureParams& params, const Tolerances& tol = default_tolerances());

/// Eigenvalues of mu I/(nk) + (1-mu) v v*: one mu/(nk) + 1 - mu, the rest mu/(nk).
Spectrum pseudopure_spectrum(const BipartiteDims& dims, double mu);

/// Supremum of lambda_1 over the set. Defined for ared, ls:<p>, appt, asep, ger, sepball.
double lambda_max(const SetId& set, const BipartiteDims& dims);

/// A spectrum attaining lambda_max for the set.
Spectrum extremal_spectrum(const SetId& set, const BipartiteDims& dims);

enum class Side { A, B };

/// rho^red (side B) or rho^red' (side A) >= -tol.psd_floor.
Verdict red_member(const DensityMatrix& rho, Side side, const Tolerances& tol = default_tolerances());

/// rho^Gamma >= -tol.psd_floor.
Verdict ppt_member(const DensityMatrix& rho, const Tolerances& tol = default_tolerances());

}  // namespace absred
