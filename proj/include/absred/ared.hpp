#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absred/linalg.hpp"
#include "absred/schmidt.hpp"
#include "absred/verdict.hpp"

namespace absred {

struct AredOptions {
    std::size_t multistarts = 20;        // Dirichlet(1) seeds per rank
    std::size_t nelder_mead_iters = 400;
    double grid_step = 0.05;             // lattice seeds, used for r <= 3
    std::uint64_t seed = 1;
    bool force_optimizer = false;        // skip closed forms, prefilters and the LS_k fast accept
};

enum class AredMethod { ClosedFormK2, ClosedFormN2, CorollaryPrefilter, LsSufficient, Optimizer };

const char* to_string(AredMethod m);

struct AredReport {
    Verdict verdict;
    double min_value = 0.0;       // smallest objective value found (or evaluated, on shortcut paths)
    SchmidtVector argmin{std::vector<double>{1.0}};  // point realizing min_value
    std::pair<std::size_t, std::size_t> rank_scanned{0, 0};  // inclusive; (0,0) when no scan ran
    AredMethod method = AredMethod::Optimizer;
    std::size_t multistarts_used = 0;
};

/// <lambda descending, hat(x) ascending>. x must be normalized with rank <= min(n,k).
double ared_objective(const Spectrum& lambda, const SchmidtVector& x, const Tolerances& tol = default_tolerances());

/// Objective over the ordered simplex {x_1 >= ... >= x_r >= 0, sum x = 1}.
using SimplexObjective = std::function<double(std::span<const double>)>;

struct SimplexMinimum {
    std::vector<double> x;  // descending, length r
    double value = 0.0;
    std::size_t starts = 0;
};

/// Multistart Nelder-Mead on the (r-1)-dimensional chart x_r = 1 - sum(x_1..x_{r-1}),
/// each trial point projected back onto the ordered simplex. Seeds: uniform
/// vectors of every rank 2..r padded with zeros, `multistarts` sorted
/// Dirichlet(1) draws, the lattice of spacing grid_step when r <= 3, and any
/// `extra_seeds`. Deterministic for a given options.seed.
SimplexMinimum minimize_over_simplex(const SimplexObjective& objective, std::size_t r, const AredOptions& options,
                                     std::span<const std::vector<double>> extra_seeds = {});

/// Closed forms for k = 2 or n = 2, the uniform-rank prefilter, the LS_k fast
/// accept, and otherwise the optimizer over every rank from min(n,k) down to 2.
AredReport ared_decide(const Spectrum& lambda, const AredOptions& options = {},
                       const Tolerances& tol = default_tolerances());

struct WitnessResult {
    UnitaryMatrix u;     // maps the descending eigenbasis of diag(lambda) onto the ascending one of tau
    double lambda_min;   // lambda_min((U diag(lambda) U*)^red)
    double pairing;      // Tr[(U diag(lambda) U*) tau]
    double objective;    // ared_objective(lambda, x)
};

/// Explicit unitary realizing <lambda, hat(x)^asc> as a trace pairing against
/// tau = reduction_B(psi psi*). A negative pairing certifies lambda outside ARED.
WitnessResult witness_unitary(const Spectrum& lambda, const SchmidtVector& x,
                              const Tolerances& tol = default_tolerances());

/// Euclidean projection onto the probability simplex, sorted descending.
std::vector<double> project_ordered_simplex(std::span<const double> v);

}  // namespace absred
