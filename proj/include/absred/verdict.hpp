#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "absred/linalg.hpp"

namespace absred {

enum class Status { In, Out, Unknown };

const char* to_string(Status s);

/// What decided a verdict. Raw values are always reported so callers can
/// re-decide with their own slack.
struct Certificate {
    std::string rule;                     // e.g. "ls:3", "appt:r3-matrices", "cor4:r=3"
    double lhs = std::numeric_limits<double>::quiet_NaN();
    double rhs = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::size_t> indices;     // 1-based into the descending spectrum
    std::vector<double> witness;          // Schmidt witness or test vector, when one exists
    std::optional<double> lambda_min;
    std::vector<cplx> eigenvector;
    std::vector<std::string> notes;
};

struct Verdict {
    std::string set_id;
    Status status = Status::Unknown;
    /// Signed slack of the deciding inequality; >= 0 means satisfied.
    double margin = std::numeric_limits<double>::quiet_NaN();
    Certificate certificate;

    bool in() const { return status == Status::In; }
    bool out() const { return status == Status::Out; }
};

}  // namespace absred
