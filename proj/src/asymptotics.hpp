#pragma once

#include "fitting.hpp"
#include "metric.hpp"

namespace ahm {

// The collar integral G(r) = int_{r+}^r e^{u_hat}/(s sqrt(Q)) ds, its tail
// T(r) = int_r^inf (1/s)(e^{u_hat}/sqrt(Q) - 1) ds and the constant
// C = -ln r+ + int_{r+}^inf (1/s)(e^{u_hat}/sqrt(Q) - 1) ds.
// Shared between the defining function and the radial gauge change.
class CollarIntegrals {
 public:
  explicit CollarIntegrals(const MetricSpec& spec);

  double C() const { return C_; }
  double r_mid() const { return r_mid_; }
  double G(double r) const;  // any r >= r_plus
  double T(double r) const;  // valid for r >= r_mid
  double integrand(double s) const;  // e^{u_hat}/sqrt(A)

 private:
  Background bg_;
  ScalarRadialSeries exp_u_hat_;
  double r_mid_ = 0;
  double C_ = 0;

  double exp_u_hat(double s) const { return 1.0 + exp_u_hat_.eval_from(s, 1); }
  double u_hat(double s) const { return std::log1p(exp_u_hat_.eval_from(s, 1)); }
  double head_integrand(double t) const;  // after s = r_plus + t^2
};

// Special defining function x with |dx|_{x^2 g} = 1 and x r -> 1.
class DefiningFunction {
 public:
  explicit DefiningFunction(const MetricSpec& spec);

  double C() const { return collar_.C(); }
  double x_of_r(double r) const;
  double xr_minus_1(double r) const;  // x(r) r - 1, exact small form (r >= r_mid)
  double r_of_x(double x) const;

  struct Expansion {
    double c_nm2 = 0, c_nm1 = 0, c_n = 0;     // coefficients of x^{n-2}, x^{n-1}, x^n
    double err_nm2 = 0, err_nm1 = 0;
    double residual = 0;
  };
  Expansion fit_expansion() const;

 private:
  const MetricSpec* spec_;
  CollarIntegrals collar_;
};

DefiningFunction defining_function(const MetricSpec& spec);

// Order x^{n-1} and x^n tensors of the normal-form expansion of x^2 g,
// together with the flat boundary metric data.
struct BoundaryData {
  double xi_period = 0;
  std::vector<double> phi_periods;
  AngularSeries theta_xixi;
  TorusTensorSeries theta_tt;
  AngularSeries kappa_xixi;
  TorusTensorSeries kappa_tt;
  double fit_deviation = 0;  // closed forms vs numerically fitted expansion

  double tr_theta(double xi, const std::vector<double>& phi) const;
  double tr_kappa(double xi, const std::vector<double>& phi) const;
};

BoundaryData boundary_tensors(const MetricSpec& spec, bool with_fit_check = true);

double total_energy(const MetricSpec& spec);
double hm_energy(const MetricSpec& spec);          // -r_breve0^n Vol
double energy_difference(const MetricSpec& spec);  // E(g) - E(g_HM), beta-matched

struct L1Result {
  double sup = 0;       // sup |u_{n-1} + v_{n-1} + tr w_{n-1}|
  bool pass = false;
  double tr_theta_sup = 0;
};
L1Result l1_condition(const MetricSpec& spec, double tol = 1e-9);

// Fitted decay order of R + n(n-1) at fixed angles.
PowerFit scalar_decay_order(const MetricSpec& spec, double r1 = 0, double r2 = 0);

struct ApeResult {
  double order = 0;      // fitted decay order of |Ric + (n-1)g|_g in x
  double residual = 0;   // log-fit residual
  bool tr_theta_zero = false;
};
ApeResult ape_deficit(const MetricSpec& spec, std::vector<double> x_samples = {},
                      double fd_step = 3e-3);

}  // namespace ahm
