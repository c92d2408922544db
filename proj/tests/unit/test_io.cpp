#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "absred/io.hpp"
#include "test_support.hpp"

using namespace absred;

TEST_CASE("matrix JSON round trip") {
    std::mt19937_64 rng(61);
    const auto m = testsupport::random_hermitian(4, rng);
    const auto back = matrix_from_json(json::parse(matrix_to_json(m).dump()));
    CHECK((back - m).max_abs() == 0.0);

    const auto real = matrix_from_json(json::parse(R"({"dim": 2, "re": [[1, 0], [0, 2]]})"));
    CHECK(real(1, 1) == cplx(2.0));
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"dim": 2, "re": [[1, 0]]})")), ValidationError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"re": [[1]]})")), ValidationError);
}

TEST_CASE("the 3x2 example file") {
    const auto m = matrix_from_json(read_json_file(ABSRED_TEST_DATA "/rho32.json"));
    CHECK(m.dim() == 6);
    CHECK(m.trace().real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m(0, 1) == cplx(0.030, -0.039));
    CHECK(hermitian_defect(m).magnitude == 0.0);
}

TEST_CASE("spectrum JSON") {
    const Spectrum s({2, 2}, {0.1, 0.2, 0.3, 0.4});
    const json j = spectrum_to_json(s);
    CHECK(j["dims"] == json::array({2, 2}));
    CHECK(j["values"][0] == 0.4);
    const Spectrum back = spectrum_from_json(j);
    CHECK(back.at1(4) == 0.1);
    CHECK_THROWS_AS(spectrum_from_json(json::parse(R"({"dims": [2], "values": [1]})")), ValidationError);
}

TEST_CASE("verdict report schema") {
    Verdict v;
    v.set_id = "ls:3";
    v.status = Status::Out;
    v.margin = -0.1;
    v.certificate.rule = "ls:3";
    v.certificate.lhs = 0.5;
    v.certificate.rhs = 0.4;
    v.certificate.indices = {1, 7, 8, 9};
    const json j = json::parse(verdict_to_json(v, {3, 3}).dump());
    CHECK(j["v"] == 1);
    CHECK(j["set"] == "ls:3");
    CHECK(j["dims"] == json::array({3, 3}));
    CHECK(j["status"] == "Out");
    CHECK(j["margin"] == -0.1);
    CHECK(j["certificate"]["indices"].size() == 4);

    Verdict unknown;
    unknown.set_id = "appt";
    CHECK(verdict_to_json(unknown, {4, 4})["margin"].is_null());
}

TEST_CASE("tolerance profiles") {
    const auto t = tolerances_from_json(json::parse(R"({"slack": 1e-10, "psd_floor": 0})"));
    CHECK(t.slack == 1e-10);
    CHECK(t.psd_floor == 0.0);
    CHECK(t.cluster == default_tolerances().cluster);
    CHECK_THROWS_AS(tolerances_from_json(json::parse(R"({"slak": 1})")), ValidationError);
    CHECK_THROWS_AS(tolerances_from_json(json::parse(R"({"slack": -1})")), ValidationError);
    CHECK(tolerances_from_json(tolerances_to_json(default_tolerances())).ared_reject == 1e-9);
}

TEST_CASE("number lists") {
    CHECK(parse_number_list("0.4, 0.3,0.2 ,0.1") == std::vector<double>{0.4, 0.3, 0.2, 0.1});
    CHECK(parse_number_list("1e-3") == std::vector<double>{1e-3});
    CHECK_THROWS_AS(parse_number_list("0.4,,0.1"), ValidationError);
    CHECK_THROWS_AS(parse_number_list("0.4,abc"), ValidationError);
    CHECK_THROWS_AS(parse_number_list(""), ValidationError);
}

TEST_CASE("survey CSV and summary") {
    const auto s = survey({2, 2}, 1.0, 5, 3);
    std::ostringstream os;
    write_survey_csv(os, s);
    std::istringstream in(os.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "lambda1,lambda2,lambda3,lambda4,ls3,lsk,ared,appt,ger,sepball");
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 5);
    const json summary = survey_summary(s, 1.0, 3);
    CHECK(summary["v"] == 1);
    CHECK(summary["count"] == 5);
    CHECK(summary["violations"]["total"] == 0);
}
