#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "absred/ared.hpp"
#include "absred/linalg.hpp"
#include "absred/sets.hpp"

namespace absred {

/// Run body(i) for i in [0, count) on up to `threads` workers. Results must be
/// written per index so the outcome does not depend on scheduling.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

struct ReductionSample {
    double min = 0.0;          // smallest lambda_min((U diag(lambda) U*)^red) seen
    std::size_t argmin = 0;    // sample index that attained it
    std::size_t samples = 0;
};

/// Monte-Carlo upper bound on min_U lambda_min((U diag(lambda) U*)^red).
/// Sample i draws haar_unitary(nk, derive_seed(seed, i)); an injected unitary
/// replaces sample 0.
ReductionSample mc_reduction_min(const Spectrum& lambda, std::size_t samples, std::uint64_t seed,
                                 const std::optional<UnitaryMatrix>& injected = std::nullopt,
                                 std::size_t threads = 1, const Tolerances& tol = default_tolerances());

struct GridMinimum {
    double value = 0.0;
    std::vector<double> x;  // descending, length r
    std::size_t points = 0;
};

/// Exhaustive minimum of the ARED objective over the ordered simplex lattice
/// of spacing `step`. Only r = 2 and r = 3 are supported.
GridMinimum grid_min_objective(const Spectrum& lambda, std::size_t r, double step,
                               const Tolerances& tol = default_tolerances());

/// Sorted Dirichlet(alpha) draw of length d.
std::vector<double> dirichlet_spectrum(std::size_t d, double alpha, std::mt19937_64& rng);

struct SurveyRow {
    std::vector<double> lambda;  // descending
    int ls3 = 0, lsk = 0, ared = 0, appt = 0, ger = 0, sepball = 0;  // 1 In, 0 Out, -1 Unknown
    AredReport ared_report;
};

struct ChainViolations {
    std::size_t appt_not_ls3 = 0;
    std::size_t ls3_not_lsk = 0;
    std::size_t lsk_not_ared = 0;
    std::size_t ared_not_ls2k1 = 0;
    std::size_t ger_not_appt = 0;
    std::size_t sepball_not_appt = 0;
    std::size_t ls2_not_appt = 0;
    std::size_t ared_ne_appt_qubit = 0;

    std::size_t total() const;
};

struct SurveyResult {
    BipartiteDims dims;
    std::vector<SurveyRow> rows;
    ChainViolations violations;
    std::size_t appt_unknown = 0;
};

/// Dirichlet(alpha) spectra, spectrum i drawn from derive_seed(seed, i), each
/// classified against the chain of spectral sets.
SurveyResult survey(const BipartiteDims& dims, double alpha, std::size_t count, std::uint64_t seed,
                    const AredOptions& options = {}, std::size_t threads = 1,
                    const Tolerances& tol = default_tolerances());

}  // namespace absred
