#pragma once

#include <cstdint>

#include "metric.hpp"

namespace ahm {

// Reference metric: a = 0, all hats zero, r0 = r_breve0.
MetricSpec make_hm(int n, double r0_breve, std::vector<double> lambdas);

// Constant-scalar-curvature family: general (a, r0), hats zero.
MetricSpec make_hm_type(int n, double a, double r0, std::vector<double> lambdas);

// Convenience builder around the series types.
struct SpecBuilder {
  BackgroundParams bg;
  ScalarRadialSeries exp_u_hat;
  AngularRadialSeries exp_v_hat;
  TensorRadialSeries w_hat;

  explicit SpecBuilder(BackgroundParams params);
  SpecBuilder& set_u(int order, double value);
  SpecBuilder& set_v(int order, AngularSeries s);
  SpecBuilder& set_w(int order, TorusTensorSeries t);  // stores 2 w_order
  AngularSeries angular() const;                        // empty series, right period
  TorusTensorSeries tensor() const;                     // empty tensor, right periods
  MetricSpec build() const;

 private:
  double beta_ = 0;
  std::vector<double> all_periods_;
};

// Seeded random perturbation satisfying, by construction, the trace condition
// u_{n-1}+v_{n-1}+tr w_{n-1} = 0 pointwise, the center smoothness condition
// v_hat(r+) = u_hat(r+) and d_xi w_hat(r+) = 0 (so the energy identity's
// improper integrals converge).
MetricSpec random_l1_spec(int n, double a, double r0,
                          std::vector<double> lambdas, std::uint64_t seed,
                          double amplitude);

// Same construction but with the trace condition deliberately broken:
// only u_{n-1} is populated at leading order.
MetricSpec u_only_spec(int n, double a, double r0, std::vector<double> lambdas,
                       double u_nm1);

}  // namespace ahm
