#pragma once

#include <array>

#include "asymptotics.hpp"
#include "metric.hpp"

namespace ahm {

// F(y) = int_1^y ds / (s sqrt(1 - s^{-n})), its constant F0 and the inverse.
// Depends only on the dimension.
class FProfile {
 public:
  explicit FProfile(int n);

  int n() const { return n_; }
  double F0() const { return F0_; }
  double value(double y) const;            // F(y), y >= 1
  double tail(double y) const;             // T_F(y) = F0 + ln y - F(y)
  double derivative(double y) const;       // 1/(y sqrt(1 - y^{-n}))
  double solve_ym1(double target) const;   // y - 1 with F(y) = target, accurate near 1

 private:
  int n_;
  double y_mid_;
  double F0_;
  double F_mid_;

  double head_integrand(double t) const;  // after s = 1 + t^2
  double geom_sum(double y) const;        // sum_{k=0}^{n-1} y^k
};

// The radial gauge change of the energy argument: r -> r_tilde with
// g_rr mapped to the exact reference form 1/(rt^2 (1 - rt0^n/rt^n)).
class GaugeMap {
 public:
  explicit GaugeMap(const MetricSpec& spec);

  const MetricSpec& spec() const { return *spec_; }
  double r_tilde_0() const { return rt0_; }
  double C() const { return collar_.C(); }
  double F0() const { return fp_.F0(); }

  double r_tilde(double r) const;
  double r_tilde_minus_rt0(double r) const;  // stable near r_plus
  double r_tilde_minus_r(double r) const;    // cancellation-free for r >= r_far()
  double dr_tilde(double r) const;           // closed form; limit value at r_plus
  double r_of_r_tilde(double rt) const;

  // A_tilde(rt) = rt^2 (1 - (rt0/rt)^n) = rt^{2-n} (rt - rt0) E(rt).
  double A_tilde(double rt) const;
  double A_tilde_prime(double rt) const;
  double A_tilde_second(double rt) const;

  // ln(r r_tilde' / r_tilde); small at large r, feeds the flux cancellations.
  // Valid for r >= r_mid.
  double small_log(double r) const;

  // Transformation laws for the expansion coefficients.
  const AngularSeries& v_tilde_nm1() const { return v_nm1_; }
  const AngularSeries& v_tilde_n() const { return v_n_; }
  const TorusTensorSeries& w_tilde_nm1() const { return w_nm1_; }
  const TorusTensorSeries& w_tilde_n() const { return w_n_; }

  // Deviation of the closed-form transformed coefficients from a numerical
  // large-r extraction off the rewritten metric.
  double fit_transformed_coeffs() const;

  struct Expansion {
    double lead = 0;  // coefficient of r^{2-n} in r_tilde - r
    double sub = 0;   // coefficient of r^{1-n}
    double residual = 0;
  };
  Expansion fit_expansion() const;

  // (r, r_tilde, dr_tilde/dr) table for export; strictly increasing.
  std::vector<std::array<double, 3>> table(int count = 256) const;

  // e^{v_hat_tilde(r, xi)} - 1 along the map, cancellation-free in both the
  // horizon and tail regimes.
  double exp_v_tilde_m1(double r, double xi) const;
  double v_hat_tilde(double r, double xi) const;

  const CollarIntegrals& collar() const { return collar_; }
  double r_mid() const { return collar_.r_mid(); }
  // beyond r_far() the map is uniformly close to the identity and the
  // expm1/log1p tail forms apply
  double r_far() const { return r_far_; }

 private:
  const MetricSpec* spec_;
  CollarIntegrals collar_;
  FProfile fp_;
  double rt0_;
  double drt_at_rp_;  // closed-form dr_tilde/dr at r_plus
  double r_far_;
  AngularSeries v_nm1_, v_n_;
  TorusTensorSeries w_nm1_, w_n_;

  double E_helper(double rt) const;  // sum_{k=0}^{n-1} rt0^k rt^{n-1-k}
};

GaugeMap radial_gauge(const MetricSpec& spec);

// Pointwise check of v_tilde_{n-1} + tr_h0 w_tilde_{n-1} = 0.
struct L1TildeResult {
  double sup = 0;
  bool pass = false;
};
L1TildeResult l1_condition_tilde(const GaugeMap& gm, const MetricSpec& spec,
                                 double tol = 1e-9);

// Horizon value e^{v_hat_tilde(rt0, xi)} = r_breve0 / rt0, checked by
// one-sided extrapolation along the map. r_breve0_override (if nonzero) lets
// callers probe a deliberately mismatched reference period.
struct HorizonCheck {
  double residual = 0;  // max_xi |e^{v_hat_tilde} - r_breve0/rt0|
  double lhs_min = 0, lhs_max = 0;
  double rhs = 0;
};
HorizonCheck horizon_value_check(const GaugeMap& gm, const MetricSpec& spec,
                                 double r_breve0_override = 0);

// Free-function forms of the F profile operations.
double F_profile(int n, double r);
double F0_value(int n);

}  // namespace ahm
