#include "fixtures.hpp"

#include <cmath>
#include <random>

namespace ahm {

SpecBuilder::SpecBuilder(BackgroundParams params) : bg(std::move(params)) {
  beta_ = period_beta(bg);
  exp_v_hat = AngularRadialSeries(beta_);
  all_periods_.push_back(beta_);
  for (double l : bg.torus_periods) all_periods_.push_back(l);
  w_hat = TensorRadialSeries(bg.n - 2, all_periods_);
}

SpecBuilder& SpecBuilder::set_u(int order, double value) {
  exp_u_hat.set(order, value);
  return *this;
}

SpecBuilder& SpecBuilder::set_v(int order, AngularSeries s) {
  exp_v_hat.set(order, std::move(s));
  return *this;
}

SpecBuilder& SpecBuilder::set_w(int order, TorusTensorSeries t) {
  TorusTensorSeries doubled = t;
  doubled *= 2.0;
  w_hat.set(order, std::move(doubled));
  return *this;
}

AngularSeries SpecBuilder::angular() const { return AngularSeries(beta_); }

TorusTensorSeries SpecBuilder::tensor() const {
  return TorusTensorSeries(bg.n - 2, all_periods_);
}

MetricSpec SpecBuilder::build() const {
  return MetricSpec(Background(bg), exp_u_hat, exp_v_hat, w_hat);
}

MetricSpec make_hm(int n, double r0_breve, std::vector<double> lambdas) {
  SpecBuilder b({n, 0.0, r0_breve, std::move(lambdas)});
  return b.build();
}

MetricSpec make_hm_type(int n, double a, double r0, std::vector<double> lambdas) {
  SpecBuilder b({n, a, r0, std::move(lambdas)});
  return b.build();
}

MetricSpec u_only_spec(int n, double a, double r0, std::vector<double> lambdas,
                       double u_nm1) {
  SpecBuilder b({n, a, r0, std::move(lambdas)});
  b.set_u(n - 1, u_nm1);
  return b.build();
}

namespace {

// Portable uniform in [-1, 1] from raw mt19937_64 output.
double sym_uniform(std::mt19937_64& rng) {
  return 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace

MetricSpec random_l1_spec(int n, double a, double r0,
                          std::vector<double> lambdas, std::uint64_t seed,
                          double amplitude) {
  std::mt19937_64 rng(seed);
  const int m = n - 2;
  SpecBuilder b({n, a, r0, std::move(lambdas)});
  const Background bgv(b.bg);
  const double rp = bgv.r_plus();

  const double u_nm1 = amplitude * sym_uniform(rng);
  const double u_n = amplitude * sym_uniform(rng);
  const double u_np1 = amplitude * sym_uniform(rng);
  b.set_u(n - 1, u_nm1).set_u(n, u_n).set_u(n + 1, u_np1);

  // w_{n-1}: phi-independent trace part s(xi)/m * delta plus, for m >= 2, a
  // traceless phi-dependent block. xi-dependent parts are paired with a
  // compensating w_n so that d_xi w_hat vanishes at r = r_plus.
  const double s0 = amplitude * sym_uniform(rng);
  const double sc = amplitude * sym_uniform(rng);
  const double ss = amplitude * sym_uniform(rng);

  TorusTensorSeries w_nm1 = b.tensor();
  TorusTensorSeries w_n = b.tensor();
  TorusTensorSeries w_np1 = b.tensor();
  const int nangles = 1 + m;

  for (int i = 0; i < m; ++i) {
    // trace part, divided evenly over the diagonal
    FourierTerm t0;
    t0.amp = s0 / m;
    t0.k.assign(nangles, 0);
    t0.phase.assign(nangles, 0);
    w_nm1.at(i, i).add_term(t0);

    FourierTerm tc = t0;
    tc.amp = sc / m;
    tc.k[0] = 1;
    w_nm1.at(i, i).add_term(tc);
    FourierTerm ts = tc;
    ts.amp = ss / m;
    ts.phase[0] = 1;
    w_nm1.at(i, i).add_term(ts);

    // compensation: the xi-dependent part of w_n is -r+ times that of w_{n-1}
    FourierTerm cc = tc;
    cc.amp = -rp * tc.amp;
    w_n.at(i, i).add_term(cc);
    FourierTerm cs = ts;
    cs.amp = -rp * ts.amp;
    w_n.at(i, i).add_term(cs);
  }

  if (m >= 2) {
    // traceless xi-independent block with one phi mode
    const double t_amp = amplitude * sym_uniform(rng);
    FourierTerm td;
    td.amp = t_amp;
    td.k.assign(nangles, 0);
    td.phase.assign(nangles, 0);
    td.k[1] = 1;
    w_nm1.at(0, 0).add_term(td);
    FourierTerm td2 = td;
    td2.amp = -t_amp;
    w_nm1.at(1, 1).add_term(td2);

    FourierTerm toff;
    toff.amp = amplitude * sym_uniform(rng);
    toff.k.assign(nangles, 0);
    toff.phase.assign(nangles, 0);
    toff.k[1] = 1;
    toff.phase[1] = 1;
    w_nm1.at(0, 1).add_term(toff);
  }

  // phi-only content at order n and a small tail at n+1
  for (int i = 0; i < m; ++i) {
    FourierTerm tn;
    tn.amp = amplitude * sym_uniform(rng);
    tn.k.assign(nangles, 0);
    tn.phase.assign(nangles, 0);
    if (m >= 1) tn.k[1] = m >= 2 ? 1 : 0;
    w_n.at(i, i).add_term(tn);
    FourierTerm tp = tn;
    tp.amp = amplitude * sym_uniform(rng);
    tp.k[1] = 0;
    w_np1.at(i, i).add_term(tp);
  }

  b.set_w(n - 1, w_nm1);
  b.set_w(n, w_n);
  b.set_w(n + 1, w_np1);

  // v_{n-1}(xi) = -u_{n-1} - tr w_{n-1}(xi): the trace condition holds
  // pointwise (tr w_{n-1} is phi-independent by construction).
  AngularSeries v_nm1 = b.angular();
  v_nm1.add(0, -u_nm1 - s0, 0.0);
  v_nm1.add(1, -sc, -ss);
  b.set_v(n - 1, v_nm1);

  AngularSeries v_np1 = b.angular();
  v_np1.add(1, amplitude * sym_uniform(rng), amplitude * sym_uniform(rng));
  b.set_v(n + 1, v_np1);

  // v_n closes the smoothness condition e^{v_hat}(r+, xi) = e^{u_hat}(r+):
  // v_n(xi) = (e^{u_hat}(r+) - 1 - sum_{m != n} v_m(xi) r+^{-m}) r+^n.
  {
    // target minus the already-set series content at r_plus
    ScalarRadialSeries eu = b.exp_u_hat;
    eu.set(0, 1.0);
    const double target = eu.eval(rp);
    AngularSeries v_n = b.angular();
    v_n.add(0, (target - 1.0) * std::pow(rp, double(n)), 0.0);
    // subtract v_{n-1} and v_{n+1} contributions mode by mode
    for (const auto& [k, ab] : v_nm1.modes()) {
      v_n.add(k, -ab.first * std::pow(rp, 1.0), -ab.second * std::pow(rp, 1.0));
    }
    for (const auto& [k, ab] : v_np1.modes()) {
      v_n.add(k, -ab.first / rp, -ab.second / rp);
    }
    b.set_v(n, v_n);
  }

  return b.build();
}

}  // namespace ahm
