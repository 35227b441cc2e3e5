#include "ahm/ahm.h"

#include <cstring>
#include <string>

#include "curvature.hpp"
#include "fd_oracle.hpp"
#include "fixtures.hpp"
#include "gauge.hpp"
#include "runner.hpp"
#include "spec_io.hpp"
#include "verifier.hpp"

struct ahm_spec {
  ahm::MetricSpec spec;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int fail(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Translate the library exceptions onto the status codes.
template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const ahm::NoRootError& e) {
    return fail(AHM_ERR_NO_ROOT, e.what());
  } catch (const ahm::SingularAtHorizon& e) {
    return fail(AHM_ERR_SINGULAR, e.what());
  } catch (const ahm::StencilOutOfDomain& e) {
    return fail(AHM_ERR_SINGULAR, e.what());
  } catch (const ahm::DegenerateGamma& e) {
    return fail(AHM_ERR_DEGENERATE, e.what());
  } catch (const ahm::QuadratureError& e) {
    return fail(AHM_ERR_QUADRATURE, e.what());
  } catch (const ahm::FitUnstable& e) {
    return fail(AHM_ERR_FIT, e.what());
  } catch (const ahm::RegularityError& e) {
    return fail(AHM_ERR_REGULARITY, e.what());
  } catch (const ahm::SpecError& e) {
    return fail(AHM_ERR_PARSE, e.what());
  } catch (const ahm::Error& e) {
    return fail(AHM_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(AHM_ERR_INTERNAL, e.what());
  }
}

ahm::Point make_point(const ahm::MetricSpec& spec, const double* coords,
                      int len) {
  if (len != spec.n()) throw ahm::SpecError("coords must have n entries");
  ahm::Point p;
  p.r = coords[0];
  p.xi = coords[1];
  p.phi.assign(coords + 2, coords + len);
  return p;
}

}  // namespace

extern "C" {

const char* ahm_version(void) {
  static const std::string v = ahm::library_version();
  return v.c_str();
}

const char* ahm_last_error(void) { return g_last_error.c_str(); }

void ahm_string_free(char* s) { delete[] s; }

int ahm_spec_from_file(const char* path, ahm_spec** out) {
  if (!path || !out) return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    *out = new ahm_spec{ahm::spec_from_file(path)};
    return AHM_OK;
  });
}

int ahm_spec_from_json(const char* text, ahm_spec** out) {
  if (!text || !out) return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    *out = new ahm_spec{ahm::spec_from_string(text)};
    return AHM_OK;
  });
}

int ahm_spec_to_json(const ahm_spec* spec, char** json_out) {
  if (!spec || !json_out) return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    *json_out = dup_string(ahm::spec_to_json(spec->spec).dump(2) + "\n");
    return AHM_OK;
  });
}

void ahm_spec_free(ahm_spec* spec) { delete spec; }

int ahm_spec_random(int n, double a, double r0, const double* lambdas,
                    int nlambda, unsigned long long seed, double amplitude,
                    ahm_spec** out) {
  if (!out || (nlambda > 0 && !lambdas))
    return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    std::vector<double> l(lambdas, lambdas + nlambda);
    *out = new ahm_spec{ahm::random_l1_spec(n, a, r0, l, seed, amplitude)};
    return AHM_OK;
  });
}

int ahm_spec_dim(const ahm_spec* spec, int* n) {
  if (!spec || !n) return fail(AHM_ERR_ARG, "null argument");
  *n = spec->spec.n();
  return AHM_OK;
}

int ahm_background(const ahm_spec* spec, double* r_plus, double* beta,
                   double* r_breve0) {
  if (!spec) return fail(AHM_ERR_ARG, "null argument");
  const ahm::Background& bg = spec->spec.background();
  if (r_plus) *r_plus = bg.r_plus();
  if (beta) *beta = bg.beta();
  if (r_breve0) *r_breve0 = bg.r_breve0();
  return AHM_OK;
}

int ahm_metric_eval(const ahm_spec* spec, const double* coords, int len,
                    double* matrix_out) {
  if (!spec || !coords || !matrix_out) return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    const ahm::Mat g = spec->spec.metric(make_point(spec->spec, coords, len));
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < g.dim(); ++j) matrix_out[i * g.dim() + j] = g(i, j);
    return AHM_OK;
  });
}

int ahm_scalar_curvature(const ahm_spec* spec, const double* coords, int len,
                         double* out) {
  if (!spec || !coords || !out) return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    *out = ahm::scalar_curvature_warped(spec->spec,
                                        make_point(spec->spec, coords, len));
    return AHM_OK;
  });
}

int ahm_scalar_curvature_fd(const ahm_spec* spec, const double* coords, int len,
                            double step, double* out) {
  if (!spec || !coords || !out) return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    *out = ahm::scalar_curvature_oracle(spec->spec,
                                        make_point(spec->spec, coords, len), step);
    return AHM_OK;
  });
}

int ahm_total_energy(const ahm_spec* spec, double* out) {
  if (!spec || !out) return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    *out = ahm::total_energy(spec->spec);
    return AHM_OK;
  });
}

int ahm_energy_difference(const ahm_spec* spec, double* out) {
  if (!spec || !out) return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    *out = ahm::energy_difference(spec->spec);
    return AHM_OK;
  });
}

int ahm_validate(const ahm_spec* spec, char** json_out) {
  if (!spec || !json_out) return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    const ahm::SpecDiagnostics diag = ahm::validate_spec(spec->spec);
    *json_out = dup_string(ahm::diagnostics_to_json(diag).dump(2) + "\n");
    return AHM_OK;
  });
}

int ahm_verify(const ahm_spec* spec, const char* options_json,
               char** report_json) {
  if (!spec || !report_json) return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    ahm::VerifyOptions opt;
    if (options_json && options_json[0] != '\0') {
      const auto j = ahm::ordered_json::parse(options_json);
      if (j.contains("grid")) {
        const auto g = j.at("grid").get<std::vector<int>>();
        if (g.size() == 3) {
          opt.nr = g[0];
          opt.nxi = g[1];
          opt.nphi = g[2];
        }
      }
      if (j.contains("tol_identity"))
        opt.tol_identity = j.at("tol_identity").get<double>();
      if (j.contains("tol_equality"))
        opt.tol_equality = j.at("tol_equality").get<double>();
      if (j.contains("r_breve0_override"))
        opt.r_breve0_override = j.at("r_breve0_override").get<double>();
      if (j.contains("with_identity"))
        opt.with_identity = j.at("with_identity").get<bool>();
    }
    const ahm::EnergyReport rep = ahm::verify_theorem(spec->spec, opt);
    *report_json = dup_string(ahm::report_to_json(rep).dump(2) + "\n");
    return AHM_OK;
  });
}

int ahm_gauge_table(const ahm_spec* spec, int rows, char** csv_out) {
  if (!spec || !csv_out) return fail(AHM_ERR_ARG, "null argument");
  if (rows < 2) return fail(AHM_ERR_ARG, "rows must be >= 2");
  return guarded([&] {
    ahm::GaugeMap gm(spec->spec);
    std::string csv = "r,r_tilde,dr_tilde_dr\n";
    char buf[128];
    for (const auto& row : gm.table(rows)) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", row[0], row[1],
                    row[2]);
      csv += buf;
    }
    *csv_out = dup_string(csv);
    return AHM_OK;
  });
}

int ahm_elementary_inequality(int n, double s, double* direct,
                              double* factored) {
  if (!direct || !factored) return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    const auto [d, f] = ahm::elementary_inequality(n, s);
    *direct = d;
    *factored = f;
    return AHM_OK;
  });
}

int ahm_run(const char* config_json, char** output, int* checks_failed) {
  if (!config_json || !output) return fail(AHM_ERR_ARG, "null argument");
  return guarded([&] {
    const ahm::RunOutcome outcome = ahm::run_command(config_json);
    *output = dup_string(outcome.output);
    if (checks_failed) *checks_failed = outcome.checks_failed;
    return outcome.checks_failed == 0 ? AHM_OK : AHM_ERR_CHECKS;
  });
}

}  // extern "C"
