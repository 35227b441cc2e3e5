#include "doctest.h"

#include <cmath>
#include <future>

#include "curvature.hpp"
#include "fd_oracle.hpp"
#include "fitting.hpp"
#include "fixtures.hpp"

using namespace ahm;

TEST_CASE("W quantities for a flat torus block") {
  MetricSpec s = make_hm_type(4, 0.3, 1.0, {1.0, 0.8});
  const Point p{2.5, 0.3, {0.2, 0.4}};
  const WQuantities q = w_quantities(s, p);
  CHECK(q.W_r == doctest::Approx(2.0 / p.r).epsilon(1e-14));
  CHECK(q.W_r_hat == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(q.W_xi == 0.0);
  CHECK(q.W_r_traceless.max_abs() == 0.0);
}

TEST_CASE("W^r expansion against the boundary trace") {
  // W^r = (n-2)/r - (n-1) tr w_{n-1} / r^n - n tr w_n / r^{n+1} + ...
  SpecBuilder b({3, 0.0, 1.0, {1.0}});
  TorusTensorSeries w2 = b.tensor(), w3 = b.tensor();
  FourierTerm t;
  t.amp = 0.07;
  t.k = {1, 0};
  t.phase = {0, 0};
  w2.at(0, 0).add_term(t);
  w3.at(0, 0).add_constant(0.03);
  b.set_w(2, w2).set_w(3, w3);
  MetricSpec spec = b.build();

  const double xi = 0.3;
  const double trw2 = 0.07 * std::cos(2.0 * M_PI * xi / spec.xi_period());
  // fit What * r^n at large r against the constant -(n-1) tr w_{n-1}
  std::vector<double> rs, ys;
  for (int i = 0; i < 16; ++i) {
    const double r = 100.0 * std::pow(10.0, i / 15.0);
    rs.push_back(r);
    ys.push_back(w_quantities(spec, Point{r, xi, {0.2}}).W_r_hat * std::pow(r, 3.0));
  }
  // subleading orders pick up quadratic w w' cross terms; keep a guard power
  auto fit = fit_powers(rs, ys, {0.0, -1.0, -2.0}, false);
  CHECK(fit.coef[0] == doctest::Approx(-2.0 * trw2).epsilon(1e-7));
  CHECK(fit.coef[1] == doctest::Approx(-3.0 * 0.03).epsilon(1e-4));
}

TEST_CASE("traceless single mode: What decays one order faster") {
  SpecBuilder b({4, 0.0, 1.0, {1.0, 1.0}});
  TorusTensorSeries w = b.tensor();
  w.at(0, 0).add_constant(0.05);
  w.at(1, 1).add_constant(-0.05);  // tr w_{n-1} = 0
  b.set_w(3, w);
  MetricSpec spec = b.build();
  auto what = [&](double r) {
    return w_quantities(spec, Point{r, 0.1, {0.2, 0.3}}).W_r_hat;
  };
  const PowerFit pf = decay_order(what, 20.0, 2000.0, 0);
  CHECK(pf.order >= 4.9);  // n + 1
  CHECK(w_quantities(spec, Point{5.0, 0.1, {0.2, 0.3}}).W_r_traceless.max_abs() >
        0.0);
}

TEST_CASE("reconstruction of the torus derivative splits") {
  MetricSpec spec = random_l1_spec(4, 0.2, 1.0, {1.0, 0.8}, 31, 5e-2);
  for (double rfac : {1.01, 2.0, 30.0}) {
    const Point p{spec.r_plus() * rfac, 0.5, {0.3, 0.7}};
    const WQuantities q = w_quantities(spec, p);
    CHECK(q.recon_err_r <= 1e-10);
    CHECK(q.recon_err_xi <= 1e-10);
    // the off-trace parts are gamma-trace-free
    const Mat gamma_inv = spec.gamma(p).inverse();
    CHECK(std::fabs(gamma_inv.mul(q.W_r_traceless).trace()) <= 1e-12);
    CHECK(std::fabs(gamma_inv.mul(q.W_xi_traceless).trace()) <= 1e-12);
  }
}

TEST_CASE("grid sweeps are partition independent") {
  // pure evaluation: any split of the work yields identical results
  MetricSpec spec = random_l1_spec(3, 0.1, 1.0, {1.0}, 77, 1e-2);
  auto grid = spec.make_grid(16, 8, 4);
  std::vector<Point> points;
  for (double r : grid.r_nodes)
    for (double xi : grid.xi_nodes)
      for (const auto& phi : grid.phi_nodes) points.push_back({r, xi, phi});

  double serial = -1e300;
  for (const auto& p : points)
    serial = std::max(serial, scalar_curvature_deficit(spec, p));

  auto worker = [&](size_t lo, size_t hi) {
    double m = -1e300;
    for (size_t i = lo; i < hi; ++i)
      m = std::max(m, scalar_curvature_deficit(spec, points[i]));
    return m;
  };
  auto h1 = std::async(std::launch::async, worker, 0, points.size() / 3);
  auto h2 = std::async(std::launch::async, worker, points.size() / 3,
                       points.size());
  CHECK(std::max(h1.get(), h2.get()) == serial);
}

TEST_CASE("constant scalar curvature of the exact family") {
  for (int n : {3, 4, 5}) {
    for (double a : {-0.5, 0.0, 0.7}) {
      MetricSpec s = make_hm_type(n, a, 1.0, std::vector<double>(size_t(n - 2), 1.0));
      const double rp = s.r_plus();
      for (double rfac : {1.000001, 1.7, 93.0}) {
        const double deficit = scalar_curvature_deficit(
            s, Point{rp * rfac, 0.3, std::vector<double>(size_t(n - 2), 0.2)});
        CHECK(std::fabs(deficit) <= 1e-8);
      }
    }
  }
}

TEST_CASE("leading deficit coefficient matches the boundary trace") {
  // u only: c = 2(n-1) u_{n-1}
  MetricSpec u3 = u_only_spec(3, 0.0, 1.0, {1.0}, 0.1);
  DeficitFit f = scalar_deficit_leading(u3, 0.3, {0.2});
  CHECK(f.c == doctest::Approx(0.4).epsilon(1e-3));
  CHECK(f.predicted_tr_theta == doctest::Approx(0.4).epsilon(1e-14));

  // exact cancellation u = -v
  SpecBuilder b({3, 0.0, 1.0, {1.0}});
  b.set_u(2, 0.1);
  AngularSeries v = b.angular();
  v.add(0, -0.1, 0.0);
  b.set_v(2, v);
  DeficitFit f0 = scalar_deficit_leading(b.build(), 0.3, {0.2});
  CHECK(std::fabs(f0.c) <= 1e-5);
}

TEST_CASE("FD oracle calibration fixtures") {
  // flat space in skewed coordinates
  MetricFn flat = [](const std::vector<double>&) {
    Mat g(3);
    g(0, 0) = 2.0;
    g(1, 1) = 1.0;
    g(2, 2) = 3.0;
    g(0, 1) = g(1, 0) = 0.5;
    return g;
  };
  FdOptions opt;
  opt.steps = {1e-3, 1e-3, 1e-3};
  CHECK(std::fabs(scalar_curvature_fd(flat, {0.1, 0.2, 0.3}, opt)) <= 1e-9);

  // round unit sphere embedded as a 2-block
  MetricFn sphere = [](const std::vector<double>& q) {
    Mat g(2);
    g(0, 0) = 1.0;
    g(1, 1) = std::sin(q[0]) * std::sin(q[0]);
    return g;
  };
  FdOptions opt2;
  opt2.steps = {1e-3, 1e-3};
  CHECK(scalar_curvature_fd(sphere, {1.1, 0.7}, opt2) ==
        doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("two independent curvature routes agree") {
  MetricSpec hm = make_hm(3, 1.0, {1.0});
  const Point p{3.0, 0.5, {0.3}};
  const double warped = scalar_curvature_warped(hm, p);
  CHECK(warped == doctest::Approx(-6.0).epsilon(1e-12));
  const double fd = scalar_curvature_oracle(hm, p, 1e-3);
  CHECK(std::fabs(warped - fd) <= 1e-5);
  // stencil guard
  CHECK_THROWS_AS(scalar_curvature_oracle(hm, Point{1.0005, 0.1, {0.1}}, 1e-3),
                  StencilOutOfDomain);
}

TEST_CASE("torus block curvature") {
  // one-dimensional torus: identically zero
  MetricSpec s3 = random_l1_spec(3, 0.1, 1.0, {1.0}, 5, 1e-2);
  CHECK(torus_scalar(s3, Point{2.0, 0.3, {0.4}}) == 0.0);
  CHECK(torus_scalar_exact(s3, Point{2.0, 0.3, {0.4}}) == 0.0);

  // flat torus
  MetricSpec s4 = make_hm_type(4, 0.2, 1.0, {1.0, 0.8});
  CHECK(std::fabs(torus_scalar(s4, Point{2.0, 0.3, {0.4, 0.2}})) <= 1e-9);

  // curved block: the exact and FD routes agree
  SpecBuilder b({5, 0.0, 1.0, {1.0, 0.9, 1.1}});
  TorusTensorSeries w = b.tensor();
  FourierTerm t;
  t.amp = 0.05;
  t.k = {0, 1, 0, 0};
  t.phase = {0, 0, 0, 0};
  w.at(0, 0).add_term(t);
  FourierTerm t2 = t;
  t2.amp = -0.05;
  w.at(1, 1).add_term(t2);
  b.set_w(4, w);
  MetricSpec s5 = b.build();
  const Point p{2.0, 0.2, {0.3, 0.2, 0.4}};
  const double exact = torus_scalar_exact(s5, p);
  CHECK(exact ==
        doctest::Approx(torus_scalar(s5, p)).epsilon(1e-4));

  // and R(gamma) decays at least one order past n
  auto f = [&](double r) {
    return torus_scalar_exact(s5, Point{r, 0.2, {0.3, 0.2, 0.4}});
  };
  CHECK(decay_order(f, 5.0, 500.0, 0).order >= 6.0 - 0.1);
}

TEST_CASE("torus integrals") {
  MetricSpec s3 = random_l1_spec(3, 0.1, 1.0, {1.0}, 5, 1e-2);
  CHECK(torus_scalar_integral(s3, 2.0, 0.3) == 0.0);

  // phi-independent w: flat block, zero integrand
  SpecBuilder b({4, 0.0, 1.0, {1.0, 0.8}});
  TorusTensorSeries w = b.tensor();
  FourierTerm t;
  t.amp = 0.04;
  t.k = {1, 0, 0};
  t.phase = {0, 0, 0};
  w.at(0, 1).add_term(t);
  b.set_w(3, w);
  MetricSpec flat_w = b.build();
  CHECK(std::fabs(torus_scalar_integral(flat_w, 1.7, 0.4)) <= 1e-12);

  // Gauss-Bonnet for a genuinely curved 2-torus block
  SpecBuilder b2({4, 0.0, 1.0, {1.0, 0.8}});
  TorusTensorSeries w2 = b2.tensor();
  FourierTerm t2;
  t2.amp = 0.05;
  t2.k = {0, 1, 1};
  t2.phase = {0, 0, 1};
  w2.at(0, 1).add_term(t2);
  b2.set_w(3, w2);
  MetricSpec curved = b2.build();
  CHECK(std::fabs(torus_scalar_integral_dv(curved, 1.6, 0.2)) <= 1e-10);
}

TEST_CASE("degenerate torus block is refused") {
  SpecBuilder b({4, 0.0, 0.5, {1.0, 1.0}});
  TorusTensorSeries w = b.tensor();
  w.at(0, 0).add_constant(-0.5);  // stored doubled: w_hat_00 = -1/r
  b.set_w(1, w);  // order 1 violates the ansatz but still evaluates
  MetricSpec spec = b.build();
  // at r = 1 + 1e-13 the (0,0) entry of delta + w_hat is ~1e-13
  CHECK_THROWS_AS(w_quantities(spec, Point{1.0 + 1e-13, 0.1, {0.2, 0.3}}),
                  DegenerateGamma);
}
