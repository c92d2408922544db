#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "absred/ared.hpp"
#include "absred/linalg.hpp"
#include "absred/oracle.hpp"
#include "absred/sets.hpp"
#include "absred/verdict.hpp"

namespace absred {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// {"dim": d, "re": [[...]], "im": [[...]]}; "im" may be omitted for real matrices.
ComplexMatrix matrix_from_json(const json& j);
json matrix_to_json(const ComplexMatrix& m);

/// {"dims": [n,k], "values": [...]}.
Spectrum spectrum_from_json(const json& j, const Tolerances& tol = default_tolerances());
json spectrum_to_json(const Spectrum& s);

json certificate_to_json(const Certificate& c);
/// {"v":1, "set", "dims", "status", "certificate", "margin"}.
json verdict_to_json(const Verdict& v, const BipartiteDims& dims);
json ared_report_to_json(const AredReport& r, const BipartiteDims& dims);

/// Tolerances with any fields present in `j` overridden; unknown keys throw.
Tolerances tolerances_from_json(const json& j);
json tolerances_to_json(const Tolerances& t);

json read_json_file(const std::string& path);

/// "0.4, 0.3,0.2" -> {0.4, 0.3, 0.2}. Throws ValidationError on junk.
std::vector<double> parse_number_list(std::string_view text);

/// Header "lambda1,...,lambdaD,ls3,lsk,ared,appt,ger,sepball", one row per spectrum.
void write_survey_csv(std::ostream& os, const SurveyResult& s);
json survey_summary(const SurveyResult& s, double alpha, std::uint64_t seed);

}  // namespace absred
