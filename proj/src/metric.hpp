#pragma once

#include <optional>
#include <string>

#include "background.hpp"
#include "series.hpp"

namespace ahm {

struct Point {
  double r = 0;
  double xi = 0;
  std::vector<double> phi;  // size n-2

  std::vector<double> angles() const {  // (xi, phi...)
    std::vector<double> a;
    a.reserve(1 + phi.size());
    a.push_back(xi);
    a.insert(a.end(), phi.begin(), phi.end());
    return a;
  }
};

// The metric family
//   g = e^{2u} dr^2 + e^{2v} dxi^2 + r^2 (delta + w_hat)
// with u = -ln r - (1/2) ln Q + u_hat, v = ln r + (1/2) ln Q + v_hat and the
// hats stored through their exponential series e^{u_hat}, e^{v_hat}, w_hat.
class MetricSpec {
 public:
  MetricSpec(Background bg, ScalarRadialSeries exp_u_hat,
             AngularRadialSeries exp_v_hat, TensorRadialSeries w_hat);

  const Background& background() const { return bg_; }
  int n() const { return bg_.n(); }
  double r_plus() const { return bg_.r_plus(); }
  double xi_period() const { return bg_.beta(); }

  const ScalarRadialSeries& exp_u_hat_series() const { return exp_u_hat_; }
  const AngularRadialSeries& exp_v_hat_series() const { return exp_v_hat_; }
  const TensorRadialSeries& w_hat_series() const { return w_hat_; }

  // Expansion coefficients (u_m, v_m, w_m of the e^hat series; zero if absent).
  double u_coef(int order) const { return exp_u_hat_.coef(order); }
  AngularSeries v_coef(int order) const;
  TorusTensorSeries w_coef(int order) const;  // the tensor w_m (stored as 2 w_m)

  // --- scalar hat u ---
  double exp_u_hat(double r, int dr = 0) const { return exp_u_hat_.eval(r, dr); }
  double exp_u_hat_m1(double r) const { return exp_u_hat_.eval_from(r, 1); }
  double u_hat(double r) const { return std::log1p(exp_u_hat_m1(r)); }
  double u_hat_prime(double r) const { return exp_u_hat_.eval(r, 1) / exp_u_hat(r); }
  double u_hat_second(double r) const {
    const double e = exp_u_hat(r), d1 = exp_u_hat_.eval(r, 1);
    return exp_u_hat_.eval(r, 2) / e - sqr(d1 / e);
  }

  // --- angular hat v ---
  double exp_v_hat(double r, double xi, int dr = 0, int dxi = 0) const {
    return exp_v_hat_.eval(r, xi, dr, dxi);
  }
  double exp_v_hat_m1(double r, double xi) const {
    return exp_v_hat_.eval_from(r, xi, 1);
  }
  double v_hat(double r, double xi) const { return std::log1p(exp_v_hat_m1(r, xi)); }
  double v_hat_r(double r, double xi) const {
    return exp_v_hat(r, xi, 1) / exp_v_hat(r, xi);
  }
  double v_hat_rr(double r, double xi) const {
    const double e = exp_v_hat(r, xi), d1 = exp_v_hat(r, xi, 1);
    return exp_v_hat(r, xi, 2) / e - sqr(d1 / e);
  }
  double v_hat_xi(double r, double xi) const {
    return exp_v_hat(r, xi, 0, 1) / exp_v_hat(r, xi);
  }

  // --- torus block ---
  // M = delta + w_hat and its derivatives; gamma = r^2 M.
  Mat torus_m(double r, const std::vector<double>& angles) const;
  Mat w_hat_val(double r, const std::vector<double>& angles, int dr = 0,
                int dangle1 = -1, int dangle2 = -1) const {
    return w_hat_.value(r, angles, dr, dangle1, dangle2);
  }
  Mat gamma(const Point& p) const;

  // Full metric in coordinates (r, xi, phi...). Throws SingularAtHorizon for
  // r <= r_plus.
  Mat metric(const Point& p) const;

  // Grid used by validation and the hypothesis gates.
  struct Grid {
    std::vector<double> r_nodes;
    std::vector<double> xi_nodes;
    std::vector<std::vector<double>> phi_nodes;  // flattened phi tuples
  };
  Grid make_grid(int nr, int nxi, int nphi_circle) const;

  // Enough angular nodes to integrate the stored Fourier content exactly.
  int suggested_xi_nodes(int at_least = 16) const;
  int suggested_phi_nodes(int at_least = 8) const;

 private:
  Background bg_;
  ScalarRadialSeries exp_u_hat_;
  AngularRadialSeries exp_v_hat_;
  TensorRadialSeries w_hat_;
};

struct SpecDiagnostics {
  bool exp_u_positive = true;
  bool exp_v_positive = true;
  bool gamma_positive = true;
  bool leading_orders_ok = true;   // no content at orders 1..n-2
  double regularity_residual = 0;  // sup_xi |v_hat(r+,xi) - u_hat(r+)|
  bool regularity_ok = true;
  std::optional<Point> failure_point;
  std::string note;
  bool pass() const {
    return exp_u_positive && exp_v_positive && gamma_positive && leading_orders_ok &&
           regularity_ok;
  }
};

struct ValidateOptions {
  int nr = 64;
  int nxi = 32;
  int nphi = 16;
  double regularity_tol = 1e-8;
};

SpecDiagnostics validate_spec(const MetricSpec& spec,
                              const ValidateOptions& opt = {});

}  // namespace ahm
