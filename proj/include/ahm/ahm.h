/* ahm - asymptotically Horowitz-Myers metric toolkit.
 *
 * C interface to the shared library. All functions return an ahm_status
 * code; AHM_OK (0) means success. On failure ahm_last_error() describes the
 * problem for the calling thread. Strings returned through char** out
 * parameters are heap-allocated and must be released with ahm_string_free().
 */
#ifndef AHM_H
#define AHM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ahm_spec ahm_spec;

typedef enum ahm_status {
  AHM_OK = 0,
  AHM_ERR_ARG = 1,        /* null pointer / malformed argument */
  AHM_ERR_IO = 2,         /* file not readable or writable */
  AHM_ERR_PARSE = 3,      /* document does not parse or violates the schema */
  AHM_ERR_NO_ROOT = 4,    /* background Q(r) has no positive root */
  AHM_ERR_SINGULAR = 5,   /* evaluation at or below r_plus */
  AHM_ERR_DEGENERATE = 6, /* torus block numerically singular */
  AHM_ERR_QUADRATURE = 7, /* adaptive quadrature failed to converge */
  AHM_ERR_FIT = 8,        /* least-squares extraction did not stabilize */
  AHM_ERR_REGULARITY = 9, /* smoothness condition at r_plus fails */
  AHM_ERR_CHECKS = 10,    /* run finished but some asserted check failed */
  AHM_ERR_INTERNAL = 11
} ahm_status;

/* Library version as "major.minor.patch". Static storage; do not free. */
const char* ahm_version(void);

/* Last error message for the calling thread. Static storage; do not free. */
const char* ahm_last_error(void);

void ahm_string_free(char* s);

/* ---- spec lifecycle ---- */
int ahm_spec_from_file(const char* path, ahm_spec** out);
int ahm_spec_from_json(const char* text, ahm_spec** out);
int ahm_spec_to_json(const ahm_spec* spec, char** json_out);
void ahm_spec_free(ahm_spec* spec);

/* Seeded random perturbation that satisfies the trace and smoothness
 * conditions by construction. */
int ahm_spec_random(int n, double a, double r0, const double* lambdas,
                    int nlambda, unsigned long long seed, double amplitude,
                    ahm_spec** out);

/* ---- background quantities ---- */
int ahm_spec_dim(const ahm_spec* spec, int* n);
int ahm_background(const ahm_spec* spec, double* r_plus, double* beta,
                   double* r_breve0);

/* ---- pointwise evaluation ----
 * coords = (r, xi, phi_3..phi_n), length n. matrix_out receives n*n entries,
 * row-major. */
int ahm_metric_eval(const ahm_spec* spec, const double* coords, int len,
                    double* matrix_out);
int ahm_scalar_curvature(const ahm_spec* spec, const double* coords, int len,
                         double* out);
/* Independent finite-difference route; step <= 0 selects the default. */
int ahm_scalar_curvature_fd(const ahm_spec* spec, const double* coords, int len,
                            double step, double* out);

/* ---- global quantities ---- */
int ahm_total_energy(const ahm_spec* spec, double* out);
int ahm_energy_difference(const ahm_spec* spec, double* out);

/* Structural diagnostics document (positivity, decay structure, smoothness
 * at r_plus). */
int ahm_validate(const ahm_spec* spec, char** json_out);

/* Full positive-energy verification. options_json may be NULL or an object
 * with optional keys: grid [nr, nxi, nphi], tol_identity, tol_equality,
 * r_breve0_override, with_identity. */
int ahm_verify(const ahm_spec* spec, const char* options_json,
               char** report_json);

/* Gauge-change table as CSV text with columns r, r_tilde, dr_tilde_dr. */
int ahm_gauge_table(const ahm_spec* spec, int rows, char** csv_out);

/* n-1+s^n-ns evaluated directly and in factored form. */
int ahm_elementary_inequality(int n, double s, double* direct,
                              double* factored);

/* Batch driver shared with the command-line tool: config_json selects the
 * subcommand and its options, output receives the report document.
 * checks_failed (may be NULL) is set to the number of failed checks. */
int ahm_run(const char* config_json, char** output, int* checks_failed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AHM_H */
