#include "doctest.h"
#include "quill/errors.hpp"
#include "quill/scenario.hpp"

using namespace quill;

TEST_CASE("validation names the violated constraint") {
  Scenario s;
  s.N = 1.0;
  CHECK_NOTHROW(validate(s));

  auto rejects = [](Scenario bad, const char* needle) {
    try {
      validate(bad);
    } catch (const ParameterError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  Scenario bad = s;
  bad.M = 0;
  CHECK(rejects(bad, "M must"));
  bad = s;
  bad.eta = 0.0;
  CHECK(rejects(bad, "eta must"));
  bad = s;
  bad.N_beta = 3.0;
  CHECK(rejects(bad, "bath mode"));
  bad = s;
  bad.tau = 1.5;
  CHECK(rejects(bad, "tau"));
}

TEST_CASE("per-mode occupation inverts the detected photon number") {
  Scenario s;
  s.N = 4000;
  s.M = 90000;
  s.eta = 0.38;
  s.N_beta = 5000;
  s.M_beta = 50;
  s.eta_beta = 0.5;
  const auto occ = mu_per_mode(s);
  CHECK(occ.mu1 == doctest::Approx(0.116959064327485380).epsilon(1e-15));
  CHECK(occ.mu_beta == doctest::Approx(200.0).epsilon(1e-15));
}

TEST_CASE("scenario JSON round trip") {
  Scenario s;
  s.source_kind = SourceKind::thb;
  s.N = 3278;
  s.M = 90000;
  s.N_beta = 1e6;
  s.M_beta = 1300;
  s.eta = 0.38;
  s.eta_beta = 0.5;
  CHECK(scenario_from_json(scenario_to_json(s)) == s);

  const char* minimal = R"({"source_kind":"TWB","N":1,"M":2.0,"N_beta":0,
                            "M_beta":0,"eta":1,"eta_beta":1})";
  const auto m = scenario_from_json(minimal);
  CHECK(m.M == 2);
  CHECK(m.tau == 0.5);
  CHECK(m.object_present);

  CHECK_THROWS_AS(scenario_from_json(R"({"source_kind":"TWB"})"), ParameterError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(R"({"source_kind":"TWB","N":1,"M":1,"N_beta":0,"M_beta":0,
                            "eta":1,"eta_beta":1,"Nbeta":3})"),
      doctest::Contains("Nbeta"), ParameterError);
  CHECK_THROWS_AS(
      scenario_from_json(R"({"source_kind":"SPDC","N":1,"M":1,"N_beta":0,"M_beta":0,
                            "eta":1,"eta_beta":1})"),
      ParameterError);
  CHECK_THROWS_AS(
      scenario_from_json(R"({"source_kind":"TWB","N":1,"M":1.5,"N_beta":0,"M_beta":0,
                            "eta":1,"eta_beta":1})"),
      ParameterError);
}
