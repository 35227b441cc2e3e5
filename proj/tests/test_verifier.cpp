#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "verifier.hpp"

using namespace ahm;

TEST_CASE("bulk integrand vanishes on the reference metric") {
  MetricSpec hm = make_hm(3, 1.0, {1.0});
  GaugeMap gm(hm);
  for (double rtfac : {1.01, 1.6, 40.0}) {
    const AParts a =
        nonneg_integrand_A(hm, gm, gm.r_tilde_0() * rtfac, 0.3, {0.2});
    CHECK(std::fabs(a.total) <= 1e-10);
  }
}

TEST_CASE("bulk integrand of the exact family is nonnegative, not zero") {
  // the gauge change maps only the radial component onto reference form, so
  // the hatted radial trace term survives and the bulk integral is positive
  MetricSpec g = make_hm_type(3, 1.0, 1.0, {1.0});
  GaugeMap gm(g);
  double max_rad = 0;
  for (double rtfac : {1.05, 1.4, 3.0, 20.0}) {
    const AParts a =
        nonneg_integrand_A(g, gm, gm.r_tilde_0() * rtfac, 0.3, {0.2});
    CHECK(a.total >= -1e-12);
    CHECK(std::fabs(a.curvature_term) <= 1e-10);  // R + n(n-1) = 0
    max_rad = std::max(max_rad, a.radial_term);
  }
  CHECK(max_rad > 1e-3);
}

TEST_CASE("trace-free mode contributes through the off-trace quadratic") {
  SpecBuilder b({4, 0.0, 1.0, {1.0, 1.0}});
  TorusTensorSeries w = b.tensor();
  w.at(0, 0).add_constant(0.05);
  w.at(1, 1).add_constant(-0.05);
  b.set_w(3, w);
  MetricSpec spec = b.build();
  GaugeMap gm(spec);
  const AParts a = nonneg_integrand_A(spec, gm, gm.r_tilde_0() * 1.5, 0.2,
                                      {0.3, 0.4});
  CHECK(a.radial_term > 0.0);
  CHECK(a.total >= 0.0);
}

TEST_CASE("flux limit") {
  MetricSpec hm = make_hm(3, 1.0, {1.0});
  GaugeMap gmh(hm);
  const FluxResult fh = flux_limit(hm, gmh, 0.3, {0.2});
  CHECK(fh.status == FluxResult::Status::converged);
  CHECK(std::fabs(fh.limit) <= 1e-10);
  CHECK(std::fabs(fh.predicted) <= 1e-12);

  MetricSpec g = make_hm_type(3, 1.0, 1.0, {1.0});
  GaugeMap gm(g);
  const FluxResult fr = flux_limit(g, gm, 0.1, {0.9});
  const double closed = std::pow(gm.r_tilde_0(), 3.0) - 1.0;
  CHECK(fr.limit == doctest::Approx(closed).epsilon(1e-6));
  CHECK(fr.predicted == doctest::Approx(closed).epsilon(1e-12));

  // broken trace condition: the flux grows without bound
  MetricSpec bad = u_only_spec(3, 0.0, 1.0, {1.0}, 0.1);
  const FluxResult fb = flux_limit(bad, GaugeMap(bad), 0.2, {0.1});
  CHECK(fb.status == FluxResult::Status::divergent);
}

TEST_CASE("integrated identity holds on fixtures") {
  MetricSpec hm = make_hm(3, 1.0, {1.0});
  CHECK(integrated_identity(hm, GaugeMap(hm)).sup_residual <= 1e-8);

  MetricSpec g = make_hm_type(3, 1.0, 1.0, {1.0});
  const IdentityResult ir = integrated_identity(g, GaugeMap(g));
  CHECK(ir.sup_residual <= 1e-4);
  CHECK(ir.A_integral > 0.0);
  CHECK(ir.A_min >= -1e-10);

  MetricSpec rnd = random_l1_spec(3, 0.15, 1.0, {1.0}, 3, 1e-3);
  const IdentityResult irr = integrated_identity(rnd, GaugeMap(rnd));
  CHECK(irr.sup_residual <= 1e-4);
  // the d_xi flux term integrates away in xi at every probed radius
  CHECK(irr.xi_cancellation <= 1e-10);
}

TEST_CASE("elementary inequality values") {
  CHECK(elementary_inequality(3, 1.0).first == 0.0);
  CHECK(elementary_inequality(3, 1.0).second == 0.0);
  CHECK(elementary_inequality(3, 2.0).first == doctest::Approx(4.0));
  CHECK(elementary_inequality(4, 0.5).first == doctest::Approx(1.0625));
  const auto [d, f] = elementary_inequality(6, 0.37);
  CHECK(d == doctest::Approx(f).epsilon(1e-13));
}

TEST_CASE("verdict: reference metric is the equality case") {
  MetricSpec hm = make_hm(3, 1.0, {1.0});
  const EnergyReport rep = verify_theorem(hm);
  CHECK(rep.flags.all());
  CHECK(rep.verdict == Verdict::equality);
  CHECK(std::fabs(rep.difference) <= 1e-6 * (std::fabs(rep.E_hm) + 1.0));
  CHECK(rep.rigidity_evaluated);
  CHECK(rep.rigidity_residual <= 1e-8);
  CHECK(rep.identity_residual <= 1e-6);
  CHECK(rep.lower_bound_ok);
  CHECK(rep.A_integral >= -1e-10);
}

TEST_CASE("verdict: the exact family with a != 0 is strictly above") {
  for (double a : {-0.5, 0.7}) {
    MetricSpec g = make_hm_type(3, a, 1.0, {1.0});
    const EnergyReport rep = verify_theorem(g);
    CHECK(rep.flags.all());
    CHECK(rep.verdict == Verdict::strict);
    CHECK(rep.difference > 0.0);
    CHECK(!rep.rigidity_evaluated);
    CHECK(rep.lower_bound_ok);
    CHECK(rep.A_integral >= -1e-10);
  }
}

TEST_CASE("verdict: violating the curvature gate asserts nothing") {
  // u_{n-1} < 0 alone makes R + n(n-1) negative at large radius
  MetricSpec bad = u_only_spec(3, 0.0, 1.0, {1.0}, -0.1);
  VerifyOptions opt;
  opt.with_identity = false;  // the flux diverges; nothing to check
  const EnergyReport rep = verify_theorem(bad, opt);
  CHECK(!rep.flags.r_gate);
  CHECK(!rep.flags.l1);
  CHECK(rep.verdict == Verdict::hypothesis_failed);
  CHECK(rep.min_deficit < 0.0);
}

TEST_CASE("verdict: mismatched reference period is flagged") {
  MetricSpec g = make_hm_type(3, 1.0, 1.0, {1.0});
  VerifyOptions opt;
  opt.r_breve0_override = 2.0 * g.background().r_breve0();
  opt.with_identity = false;
  const EnergyReport rep = verify_theorem(g, opt);
  CHECK(!rep.flags.beta_match);
  CHECK(rep.verdict == Verdict::hypothesis_failed);
}

TEST_CASE("small admissible perturbations stay above the reference") {
  MetricSpec rnd = random_l1_spec(3, 0.0, 1.0, {1.0}, 14, 1e-3);
  VerifyOptions opt;
  opt.nr = 32;
  const EnergyReport rep = verify_theorem(rnd, opt);
  if (rep.flags.all()) {
    CHECK(rep.difference >= -1e-6 * (std::fabs(rep.E_hm) + 1.0));
    CHECK(rep.identity_residual <= 1e-4);
    CHECK(rep.lower_bound_ok);
    if (rep.verdict == Verdict::strict) CHECK(!rep.rigidity_evaluated);
  } else {
    CHECK(rep.verdict == Verdict::hypothesis_failed);
  }
}
