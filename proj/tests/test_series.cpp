#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "series.hpp"

using namespace ahm;

TEST_CASE("radial series derivative matches centered differences at r = 10") {
  ScalarRadialSeries s;
  s.set(0, 1.0).set(2, 0.3).set(3, -0.7).set(5, 0.11);
  const double r = 10.0, h = 1e-4 * r;
  const double fd = (s.eval(r + h) - s.eval(r - h)) / (2.0 * h);
  CHECK(s.eval(r, 1) == doctest::Approx(fd).epsilon(1e-6));
  const double fd2 = (s.eval(r + h) - 2.0 * s.eval(r) + s.eval(r - h)) / (h * h);
  CHECK(s.eval(r, 2) == doctest::Approx(fd2).epsilon(1e-5));
}

TEST_CASE("angular series evaluation and exact differentiation") {
  AngularSeries s(2.0);
  s.add(0, 0.5, 0.0).add(1, 0.2, -0.1).add(3, 0.0, 0.05);
  const double w = M_PI;  // 2 pi / period
  for (double x : {0.1, 0.77, 1.9}) {
    const double expect = 0.5 + 0.2 * std::cos(w * x) - 0.1 * std::sin(w * x) +
                          0.05 * std::sin(3 * w * x);
    CHECK(s.eval(x) == doctest::Approx(expect).epsilon(1e-14));
    const double dexpect = -0.2 * w * std::sin(w * x) - 0.1 * w * std::cos(w * x) +
                           0.15 * w * std::cos(3 * w * x);
    CHECK(s.eval(x, 1) == doctest::Approx(dexpect).epsilon(1e-13));
  }
  CHECK(s.mean() == doctest::Approx(0.5));
}

TEST_CASE("multi-angle Fourier terms differentiate exactly") {
  MultiFourier f({2.0, 1.0});
  FourierTerm t;
  t.amp = 0.3;
  t.k = {1, 2};
  t.phase = {0, 1};  // cos(pi x0) sin(4 pi x1)
  f.add_term(t);
  const double w0 = M_PI, w1 = 4.0 * M_PI;
  const std::vector<double> p{0.3, 0.2};
  CHECK(f.eval(p) ==
        doctest::Approx(0.3 * std::cos(w0 * p[0]) * std::sin(w1 * p[1])));
  CHECK(f.eval(p, 0) ==
        doctest::Approx(-0.3 * w0 * std::sin(w0 * p[0]) * std::sin(w1 * p[1])));
  CHECK(f.eval(p, 0, 1) == doctest::Approx(-0.3 * w0 * w1 * std::sin(w0 * p[0]) *
                                           std::cos(w1 * p[1])));
  CHECK(f.eval(p, 1, 1) == doctest::Approx(-0.3 * w1 * w1 * std::cos(w0 * p[0]) *
                                           std::sin(w1 * p[1])));
  CHECK(f.mean() == doctest::Approx(0.0));
}

TEST_CASE("torus tensor values are symmetric") {
  // random spec carries off-diagonal phi content for n >= 4
  MetricSpec spec = random_l1_spec(4, 0.1, 1.0, {1.0, 0.8}, 99, 1e-2);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const double r = 1.0 + double(rng() % 1000) / 100.0;
    std::vector<double> angles{double(rng() % 100) / 50.0,
                               double(rng() % 100) / 50.0,
                               double(rng() % 100) / 50.0};
    const Mat w = spec.w_hat_val(r, angles);
    CHECK(w.sym_error() == 0.0);
    const Mat wxi = spec.w_hat_val(r, angles, 0, 0);
    CHECK(wxi.sym_error() == 0.0);
  }
}

TEST_CASE("tensor radial series r-derivatives match differences") {
  MetricSpec spec = random_l1_spec(5, 0.0, 1.0, {1.0, 0.9, 1.2}, 123, 1e-2);
  const std::vector<double> angles{0.3, 0.2, 0.5, 0.9};
  const double r = 10.0, h = 1e-4 * r;
  const Mat d1 = spec.w_hat_val(r, angles, 1);
  const Mat fd = (spec.w_hat_val(r + h, angles) - spec.w_hat_val(r - h, angles)) *
                 (0.5 / h);
  CHECK((d1 - fd).max_abs() <= 1e-6 * (1.0 + d1.max_abs()));
}
