// Exercises the shared-library C interface end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "ahm/ahm.h"
#include "json.hpp"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  ahm_string_free(s);
  return out;
}

const char* kHmPath = AHM_SPECS_DIR "/hm_n3.json";

}  // namespace

TEST_CASE("version and null-argument handling") {
  CHECK(std::string(ahm_version()) == "0.1.0");
  CHECK(ahm_spec_from_file(nullptr, nullptr) == AHM_ERR_ARG);
  double x;
  CHECK(ahm_total_energy(nullptr, &x) == AHM_ERR_ARG);
}

TEST_CASE("spec loading and error reporting") {
  ahm_spec* spec = nullptr;
  CHECK(ahm_spec_from_file("/nonexistent/path.json", &spec) == AHM_ERR_IO);
  CHECK(std::strlen(ahm_last_error()) > 0);
  CHECK(ahm_spec_from_json("{not json", &spec) == AHM_ERR_PARSE);
  CHECK(ahm_spec_from_json("{\"n\": 2, \"a\": 0, \"r0\": 1, \"lambda\": []}",
                           &spec) == AHM_ERR_PARSE);

  REQUIRE(ahm_spec_from_file(kHmPath, &spec) == AHM_OK);
  int n = 0;
  CHECK(ahm_spec_dim(spec, &n) == AHM_OK);
  CHECK(n == 3);
  double rp, beta, rb;
  CHECK(ahm_background(spec, &rp, &beta, &rb) == AHM_OK);
  CHECK(rp == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(beta == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-12));
  CHECK(rb == doctest::Approx(1.0).epsilon(1e-12));

  char* json = nullptr;
  REQUIRE(ahm_spec_to_json(spec, &json) == AHM_OK);
  ahm_spec* again = nullptr;
  CHECK(ahm_spec_from_json(json, &again) == AHM_OK);
  ahm_string_free(json);
  ahm_spec_free(again);
  ahm_spec_free(spec);
}

TEST_CASE("pointwise evaluation through the C surface") {
  ahm_spec* spec = nullptr;
  REQUIRE(ahm_spec_from_file(kHmPath, &spec) == AHM_OK);

  const double coords[3] = {2.0, 0.3, 0.1};
  double g[9];
  REQUIRE(ahm_metric_eval(spec, coords, 3, g) == AHM_OK);
  CHECK(g[0] == doctest::Approx(2.0 / 7.0).epsilon(1e-13));
  CHECK(g[4] == doctest::Approx(3.5).epsilon(1e-13));
  CHECK(g[8] == doctest::Approx(4.0).epsilon(1e-13));

  double R = 0, Rfd = 0;
  REQUIRE(ahm_scalar_curvature(spec, coords, 3, &R) == AHM_OK);
  CHECK(R == doctest::Approx(-6.0).epsilon(1e-12));
  REQUIRE(ahm_scalar_curvature_fd(spec, coords, 3, 1e-3, &Rfd) == AHM_OK);
  CHECK(std::fabs(R - Rfd) <= 1e-5);

  const double inside[3] = {0.5, 0.0, 0.0};
  CHECK(ahm_metric_eval(spec, inside, 3, g) == AHM_ERR_SINGULAR);
  CHECK(ahm_metric_eval(spec, coords, 2, g) == AHM_ERR_PARSE);

  double e = 0, d = 0;
  CHECK(ahm_total_energy(spec, &e) == AHM_OK);
  CHECK(e == doctest::Approx(-4.0 * M_PI / 3.0).epsilon(1e-10));
  CHECK(ahm_energy_difference(spec, &d) == AHM_OK);
  CHECK(std::fabs(d) <= 1e-10);
  ahm_spec_free(spec);
}

TEST_CASE("validate and verify documents") {
  ahm_spec* spec = nullptr;
  REQUIRE(ahm_spec_from_file(kHmPath, &spec) == AHM_OK);

  char* diag = nullptr;
  REQUIRE(ahm_validate(spec, &diag) == AHM_OK);
  auto dj = nlohmann::json::parse(take(diag));
  CHECK(dj.at("pass").get<bool>());

  char* rep = nullptr;
  REQUIRE(ahm_verify(spec, "{\"grid\": [24, 12, 4]}", &rep) == AHM_OK);
  auto rj = nlohmann::json::parse(take(rep));
  CHECK(rj.at("verdict").get<std::string>() == "equality");
  CHECK(rj.at("rigidity_residual").get<double>() <= 1e-8);
  CHECK(rj.at("hypotheses").at("beta_match").get<bool>());
  ahm_spec_free(spec);
}

TEST_CASE("gauge table and random specs") {
  ahm_spec* spec = nullptr;
  REQUIRE(ahm_spec_from_file(AHM_SPECS_DIR "/hm_type_n3_a1.json", &spec) ==
          AHM_OK);
  char* csv = nullptr;
  REQUIRE(ahm_gauge_table(spec, 32, &csv) == AHM_OK);
  const std::string table = take(csv);
  CHECK(table.rfind("r,r_tilde,dr_tilde_dr\n", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 33);
  ahm_spec_free(spec);

  const double lambdas[2] = {1.0, 0.8};
  ahm_spec* rnd = nullptr;
  REQUIRE(ahm_spec_random(4, 0.1, 1.0, lambdas, 2, 7, 1e-3, &rnd) == AHM_OK);
  char* diag = nullptr;
  REQUIRE(ahm_validate(rnd, &diag) == AHM_OK);
  auto dj = nlohmann::json::parse(take(diag));
  CHECK(dj.at("regularity_ok").get<bool>());
  ahm_spec_free(rnd);
}

TEST_CASE("elementary inequality and batch runs are deterministic") {
  double d = 0, f = 0;
  REQUIRE(ahm_elementary_inequality(3, 2.0, &d, &f) == AHM_OK);
  CHECK(d == doctest::Approx(4.0));
  CHECK(f == doctest::Approx(4.0));

  const char* cfg =
      "{\"subcommand\": \"sweep\", \"n_range\": [3, 4], "
      "\"s_range\": [0.5, 1.5, 0.125]}";
  char* out1 = nullptr;
  char* out2 = nullptr;
  int failed1 = -1, failed2 = -1;
  REQUIRE(ahm_run(cfg, &out1, &failed1) == AHM_OK);
  REQUIRE(ahm_run(cfg, &out2, &failed2) == AHM_OK);
  const std::string a = take(out1), b = take(out2);
  CHECK(failed1 == 0);
  CHECK(a == b);  // byte identical
  CHECK(a.rfind("n,s,value,factored,residual\n", 0) == 0);

  char* bad = nullptr;
  CHECK(ahm_run("{\"subcommand\": \"nope\"}", &bad, nullptr) == AHM_ERR_PARSE);
}
