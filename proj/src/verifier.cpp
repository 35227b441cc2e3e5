#include "verifier.hpp"

#include <algorithm>
#include <cmath>

#include "curvature.hpp"
#include "quadrature.hpp"

namespace ahm {

namespace {

// Gauge data at one radius, shared across boundary points.
struct GaugeNode {
  double r = 0;
  double weight = 0;  // quadrature weight in r (already includes substitutions)
  double rt = 0;
  double dm = 0;   // rt - rt0
  double drt = 0;  // dr_tilde/dr
  double At = 0;   // A_tilde(rt)
  double q_h = 0;  // (1/2) Q'/Q
  double qt_h = 0; // (n/2) rt0^n / (rt (rt^n - rt0^n))
  double gauge_diff = 0;  // (rt - r drt) / (r drt rt)
};

// E(rt) = (rt^n - rt0^n)/(rt - rt0) in the stable divided form.
double E_poly(double rt, double rt0, int n) {
  double acc = 0.0;
  for (int k = 0; k < n; ++k) acc = acc * rt + std::pow(rt0, double(k));
  return acc;
}

GaugeNode make_node(const MetricSpec& spec, const GaugeMap& gm, double r,
                           double weight) {
  const Background& bg = spec.background();
  const int n = bg.n();
  GaugeNode nd;
  nd.r = r;
  nd.weight = weight;
  nd.dm = gm.r_tilde_minus_rt0(r);
  nd.rt = gm.r_tilde_0() + nd.dm;
  nd.drt = gm.dr_tilde(r);
  const double E = E_poly(nd.rt, gm.r_tilde_0(), n);
  nd.At = std::pow(nd.rt, 2.0 - n) * nd.dm * E;
  nd.q_h = 0.5 * bg.Q_prime(r) / bg.Q(r);
  nd.qt_h = 0.5 * n * std::pow(gm.r_tilde_0(), double(n)) /
            (nd.rt * nd.dm * E);
  if (r >= gm.r_far()) {
    nd.gauge_diff = -std::expm1(gm.small_log(r)) / (r * nd.drt);
  } else {
    nd.gauge_diff = (nd.rt - r * nd.drt) / (r * nd.drt * nd.rt);
  }
  return nd;
}

struct PointwisePieces {
  double evt = 0;      // e^{v_hat_tilde}
  double P = 0;        // d_rt v_hat_tilde + What_tilde
  double What_t = 0;   // What^r in tilde gauge
  double off_r2_t = 0; // |ring W^r|^2 in tilde gauge
  double a_curv = 0, a_rad = 0, a_xi = 0, a_total = 0;
  double dxi_term = 0; // 2 e^{2u_t} rt^{n-1} d_xi(e^{-v_hat_tilde} W^xi)
  double rgamma_term = 0;
  double integrand = 0;  // dxi_term + rgamma_term + a_total
};

PointwisePieces pointwise(const MetricSpec& spec, const GaugeMap& gm,
                          const GaugeNode& nd, double xi,
                          const std::vector<double>& phi) {
  const int n = spec.n();
  const double c1 = (n - 1.0) / (2.0 * (n - 2.0));
  PointwisePieces out;
  const PointQuantities pq = point_quantities(spec, Point{nd.r, xi, phi});
  out.evt = 1.0 + gm.exp_v_tilde_m1(nd.r, xi);

  out.What_t = pq.What_r / nd.drt + (n - 2.0) * nd.gauge_diff;
  out.off_r2_t = pq.off_r2 / (nd.drt * nd.drt);
  out.P = (pq.vh_r + nd.q_h + pq.What_r) / nd.drt - nd.qt_h +
          (n - 1.0) * nd.gauge_diff;

  const double rtp = std::pow(nd.rt, n - 1.0);
  out.a_curv = out.evt * rtp * pq.deficit;
  out.a_rad = 2.0 * nd.At * out.evt * rtp *
              (c1 * sqr(out.What_t) + out.off_r2_t / 8.0);
  out.a_xi = (2.0 / nd.At) * (1.0 / out.evt) * rtp *
             (c1 * sqr(pq.W_xi) + pq.off_xi2 / 8.0);
  out.a_total = out.a_curv + out.a_rad + out.a_xi;

  out.dxi_term = (2.0 * rtp / nd.At) * (1.0 / out.evt) *
                 (pq.dW_xi - pq.W_xi * pq.vh_xi);
  out.rgamma_term = -out.evt * rtp * pq.R_gamma;
  out.integrand = out.dxi_term + out.rgamma_term + out.a_total;
  return out;
}

std::vector<GaugeNode> quadrature_nodes(const MetricSpec& spec,
                                        const GaugeMap& gm) {
  const double rp = spec.r_plus();
  std::vector<GaugeNode> nodes;

  // Horizon region [r+, 2 r+] via r = r+ + t^2.
  {
    const double T1 = std::sqrt(rp);
    const double edges[5] = {0.0, 0.1 * T1, 0.3 * T1, 0.6 * T1, T1};
    for (int p = 0; p < 4; ++p)
      for (auto [t, w] : gauss_legendre(16, edges[p], edges[p + 1]))
        nodes.push_back(make_node(spec, gm, rp + t * t, 2.0 * t * w));
  }
  const double R_far = std::max(gm.r_far(), 8.0 * rp);
  // Middle region in ln r.
  {
    const double x0 = std::log(2.0 * rp), x1 = std::log(R_far);
    const int panels = 6;
    for (int p = 0; p < panels; ++p) {
      const double a = x0 + (x1 - x0) * p / panels;
      const double b = x0 + (x1 - x0) * (p + 1) / panels;
      for (auto [x, w] : gauss_legendre(16, a, b)) {
        const double r = std::exp(x);
        nodes.push_back(make_node(spec, gm, r, r * w));
      }
    }
  }
  // Far region in ln r up to R_t, then the tail by r = R_t / tau.
  const double R_t = 40.0 * R_far;
  {
    const double x0 = std::log(R_far), x1 = std::log(R_t);
    for (int p = 0; p < 4; ++p) {
      const double a = x0 + (x1 - x0) * p / 4.0;
      const double b = x0 + (x1 - x0) * (p + 1) / 4.0;
      for (auto [x, w] : gauss_legendre(16, a, b)) {
        const double r = std::exp(x);
        nodes.push_back(make_node(spec, gm, r, r * w));
      }
    }
    const double tau_edges[4] = {0.0, 0.05, 0.3, 1.0};
    for (int p = 0; p < 3; ++p)
      for (auto [tau, w] : gauss_legendre(16, tau_edges[p], tau_edges[p + 1])) {
        const double r = R_t / tau;
        nodes.push_back(make_node(spec, gm, r, w * R_t / (tau * tau)));
      }
  }
  return nodes;
}

}  // namespace

AParts nonneg_integrand_A(const MetricSpec& spec, const GaugeMap& gm,
                          double r_tilde, double xi,
                          const std::vector<double>& phi) {
  if (!(r_tilde > gm.r_tilde_0()))
    throw SingularAtHorizon("A integrand needs r_tilde > r_tilde_0");
  const double r = gm.r_of_r_tilde(r_tilde);
  const GaugeNode nd = make_node(spec, gm, r, 0.0);
  const PointwisePieces pw = pointwise(spec, gm, nd, xi, phi);
  AParts a;
  a.curvature_term = pw.a_curv;
  a.radial_term = pw.a_rad;
  a.xi_term = pw.a_xi;
  a.total = pw.a_total;
  return a;
}

FluxResult flux_limit(const MetricSpec& spec, const GaugeMap& gm, double xi,
                      const std::vector<double>& phi) {
  const int n = spec.n();
  const double scale = std::max(1.0, spec.r_plus());
  const double r1 = std::max(40.0 * scale, 3.0 * gm.r_far());
  const double r2 = 100.0 * r1;
  const int samples = 12;

  std::vector<double> angles;
  angles.push_back(xi);
  angles.insert(angles.end(), phi.begin(), phi.end());

  FluxResult res;
  res.predicted = 2.0 * n *
                  (gm.v_tilde_n().eval(xi) + gm.w_tilde_n().value(angles).trace());

  std::vector<double> rho(samples), f(samples);
  for (int i = 0; i < samples; ++i) {
    const double r = r1 * std::pow(r2 / r1, double(i) / (samples - 1));
    const GaugeNode nd = make_node(spec, gm, r, 0.0);
    const PointwisePieces pw = pointwise(spec, gm, nd, xi, phi);
    const double flux =
        -2.0 * nd.At * pw.evt * std::pow(nd.rt, n - 1.0) * pw.P;
    rho[i] = 1.0 / nd.rt;
    f[i] = flux;
  }

  const double f_first = std::fabs(f.front()), f_last = std::fabs(f.back());
  res.growth = f_first > 0 ? f_last / f_first : 0.0;
  if (res.growth > 3.0 && f_last > 2.0 * (1.0 + std::fabs(res.predicted))) {
    res.status = FluxResult::Status::divergent;
    res.limit = f.back();
    return res;
  }

  auto fit = fit_powers(rho, f, {0.0, 1.0, 2.0, 3.0}, false);
  res.limit = fit.coef[0];
  return res;
}

IdentityResult integrated_identity(const MetricSpec& spec, const GaugeMap& gm,
                                   const IdentityOptions& opt) {
  const int n = spec.n();
  const int m = n - 2;
  const double beta = spec.xi_period();
  const double rb0 = spec.background().r_breve0();
  const double rt0 = gm.r_tilde_0();
  const double rhs_const =
      n * std::pow(rt0, double(n)) * (1.0 - rb0 / rt0);

  const auto nodes = quadrature_nodes(spec, gm);

  // Boundary grid.
  const int nxi = spec.suggested_xi_nodes(opt.nxi);
  int per = spec.suggested_phi_nodes(opt.nphi);
  while (per > 2 && std::pow(double(per), m) > 256.0) per /= 2;
  std::vector<std::vector<double>> phis;
  {
    std::vector<int> idx(m, 0);
    std::vector<double> tuple(m, 0.0);
    while (true) {
      for (int d = 0; d < m; ++d)
        tuple[d] = spec.background().torus_periods()[d] * double(idx[d]) / per;
      phis.push_back(tuple);
      int d = 0;
      while (d < m && ++idx[d] == per) idx[d++] = 0;
      if (d == m) break;
    }
  }

  IdentityResult out;
  out.A_min = 0;
  double A_boundary_acc = 0;
  for (int i = 0; i < nxi; ++i) {
    const double xi = beta * double(i) / nxi;
    for (const auto& phi : phis) {
      double integral = 0, a_int = 0;
      for (const auto& nd : nodes) {
        const PointwisePieces pw = pointwise(spec, gm, nd, xi, phi);
        integral += nd.weight * nd.drt * pw.integrand;
        a_int += nd.weight * nd.drt * pw.a_total;
        out.A_min = std::min(out.A_min, pw.a_total);
      }
      const FluxResult flux = flux_limit(spec, gm, xi, phi);
      const double resid = flux.status == FluxResult::Status::converged
                               ? std::fabs(flux.limit - (rhs_const + integral))
                               : 1e300;
      const double lhs = flux.limit;
      out.sup_residual = std::max(out.sup_residual, resid);
      out.max_lhs = std::max(out.max_lhs, std::fabs(lhs));
      A_boundary_acc += a_int;
    }
  }
  out.A_integral = A_boundary_acc * spec.background().volume_boundary() /
                   double(nxi * phis.size());

  // The d_xi flux term must integrate to zero over xi at every radius.
  for (double rfac : {1.5, 3.0, 10.0, 100.0}) {
    const double r = spec.r_plus() * rfac;
    const GaugeNode nd = make_node(spec, gm, r, 0.0);
    for (const auto& phi : phis) {
      double acc = 0;
      for (int i = 0; i < nxi; ++i) {
        const double xi = beta * double(i) / nxi;
        acc += pointwise(spec, gm, nd, xi, phi).dxi_term;
      }
      out.xi_cancellation =
          std::max(out.xi_cancellation, std::fabs(acc * beta / nxi));
    }
  }
  return out;
}

std::pair<double, double> elementary_inequality(int n, double s) {
  if (n < 2 || !(s > 0)) throw Error("elementary_inequality needs n >= 2, s > 0");
  double sn = 1.0;
  for (int k = 0; k < n; ++k) sn *= s;
  const double direct = n - 1.0 + sn - n * s;
  // n-1 - s - s^2 - ... - s^{n-1} by Horner
  double tail = 0.0;
  for (int k = 0; k < n - 1; ++k) tail = s * (tail + 1.0);
  const double factored = (1.0 - s) * (n - 1.0 - tail);
  return {direct, factored};
}

double rigidity_residual(const MetricSpec& spec, const GaugeMap& gm) {
  const Background& bg = spec.background();
  const int n = bg.n();
  const int m = n - 2;
  const double rp = bg.r_plus();
  const double rb0 = bg.r_breve0();
  const double rt0 = gm.r_tilde_0();
  const double beta = bg.beta();

  double resid = 0;
  const int nr = 24, nxi = 8;
  const double r_lo = rp * 1.02, r_hi = 100.0 * std::max(rp, 1.0);

  std::vector<std::vector<double>> phis;
  {
    std::vector<double> p0(m, 0.0), p1(m);
    for (int d = 0; d < m; ++d) p1[d] = 0.41 * bg.torus_periods()[d];
    phis.push_back(p0);
    phis.push_back(p1);
  }

  for (int ir = 0; ir < nr; ++ir) {
    const double r = r_lo * std::pow(r_hi / r_lo, double(ir) / (nr - 1));
    const GaugeNode nd = make_node(spec, gm, r, 0.0);
    const double At_breve =
        std::pow(nd.rt, 2.0 - n) * (nd.rt - rb0) * E_poly(nd.rt, rb0, n);
    for (int ix = 0; ix < nxi; ++ix) {
      const double xi = beta * double(ix) / nxi;
      for (const auto& phi : phis) {
        const PointQuantities pq = point_quantities(spec, Point{r, xi, phi});
        const PointwisePieces pw = pointwise(spec, gm, nd, xi, phi);

        resid = std::max(resid, std::fabs(pq.deficit));
        resid = std::max(resid, std::fabs(pw.What_t));
        resid = std::max(resid, std::fabs(pq.W_xi));
        resid = std::max(resid, std::sqrt(std::max(0.0, pw.off_r2_t)));
        resid = std::max(resid, std::sqrt(std::max(0.0, pq.off_xi2)));

        // gamma / rt^2 - delta
        const auto angles = Point{r, xi, phi}.angles();
        const Mat M = spec.torus_m(r, angles);
        const double scale2 = sqr(r / nd.rt);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            const double delta = i == j ? 1.0 : 0.0;
            resid = std::max(resid, std::fabs(scale2 * M(i, j) - delta));
          }

        // metric distance from the reference form in tilde coordinates
        const double eu = 1.0 + pq.eum1;
        const double g_rr_tilde = sqr(eu / nd.drt) / pq.A;
        resid = std::max(resid, std::fabs(g_rr_tilde * At_breve - 1.0));
        const double g_xixi = pq.A * sqr(1.0 + pq.evm1);
        resid = std::max(resid, std::fabs(g_xixi / At_breve - 1.0));

        // the equality-case ODE, verbatim squared first-derivative form
        const double h = std::min(0.05 * nd.rt, 0.25 * nd.dm);
        if (h > 0) {
          auto q_of_rt = [&](double rt_val) {
            const double rr = gm.r_of_r_tilde(rt_val);
            return gm.exp_v_tilde_m1(rr, xi);
          };
          const double qp = q_of_rt(nd.rt + h), qm = q_of_rt(nd.rt - h),
                       q0 = gm.exp_v_tilde_m1(r, xi);
          const double d1 = (qp - qm) / (2.0 * h);
          const double d2 = (qp - 2.0 * q0 + qm) / (h * h);
          const double rtn = std::pow(nd.rt, double(n));
          const double rt0n = std::pow(rt0, double(n));
          const double coeff = ((n + 1.0) * rtn + (0.5 * n - 1.0) * rt0n) /
                               (nd.rt * (rtn - rt0n));
          resid = std::max(resid, std::fabs(d2 + coeff * d1 * d1));
        }
      }
    }
  }
  return resid;
}

EnergyReport verify_theorem(const MetricSpec& spec, const VerifyOptions& opt) {
  EnergyReport rep;
  rep.options = opt;
  const Background& bg = spec.background();
  const int n = bg.n();

  // (1) structural validation + regularity
  ValidateOptions vopt;
  vopt.nr = opt.nr;
  vopt.nxi = opt.nxi;
  vopt.nphi = opt.nphi;
  vopt.regularity_tol = opt.tol_regularity;
  const SpecDiagnostics diag = validate_spec(spec, vopt);
  rep.flags.spec_valid = diag.exp_u_positive && diag.exp_v_positive &&
                         diag.gamma_positive && diag.leading_orders_ok;
  rep.flags.regularity = diag.regularity_ok;
  rep.regularity_residual = diag.regularity_residual;

  // (2) beta matching
  rep.r_breve_0 = opt.r_breve0_override > 0 ? opt.r_breve0_override
                                            : bg.r_breve0();
  rep.flags.beta_match =
      std::fabs(rep.r_breve_0 - bg.r_breve0()) <= 1e-12 * bg.r_breve0();

  // (3) scalar-curvature gate on the grid; the phi sweep is redundant when
  // the torus block is flat.
  auto grid = spec.make_grid(opt.nr, opt.nxi, opt.nphi);
  if (spec.w_hat_series().empty()) grid.phi_nodes.resize(1);
  double min_def = 1e300, max_abs_R = 0;
  for (double r : grid.r_nodes)
    for (double xi : grid.xi_nodes)
      for (const auto& phi : grid.phi_nodes) {
        const double d = scalar_curvature_deficit(spec, Point{r, xi, phi});
        min_def = std::min(min_def, d);
        max_abs_R = std::max(max_abs_R, std::fabs(d - n * (n - 1.0)));
      }
  rep.min_deficit = min_def;
  rep.flags.r_gate = min_def >= -opt.tol_r_gate * (1.0 + max_abs_R);

  // (4) the L1 / trace condition
  const L1Result l1 = l1_condition(spec, opt.tol_l1);
  rep.l1_sup = l1.sup;
  rep.flags.l1 = l1.pass;

  // (5) torus-curvature condition, nontrivial only for n >= 4
  rep.flags.torus_condition = true;
  if (n >= 4 && !spec.w_hat_series().empty()) {
    for (double r : {1.2 * bg.r_plus(), 2.0 * bg.r_plus(), 8.0 * bg.r_plus(),
                     50.0 * bg.r_plus()}) {
      for (int i = 0; i < 8; ++i) {
        const double xi = bg.beta() * double(i) / 8.0;
        if (torus_scalar_integral(spec, r, xi) > opt.tol_torus)
          rep.flags.torus_condition = false;
      }
    }
  }

  // (6)-(7) gauge change and the integrated identity
  GaugeMap gm(spec);
  rep.r_tilde_0 = gm.r_tilde_0();
  if (rep.flags.regularity) {
    const HorizonCheck hc =
        horizon_value_check(gm, spec, opt.r_breve0_override);
    rep.horizon_residual = hc.residual;
  }
  if (opt.with_identity && rep.flags.regularity) {
    const IdentityResult idr = integrated_identity(spec, gm, opt.identity);
    rep.identity_residual = idr.sup_residual;
    rep.A_integral = idr.A_integral;
    rep.xi_cancellation = idr.xi_cancellation;
  }

  // (8) energies and the proof's lower bound
  rep.E_g = total_energy(spec);
  const double vol = bg.volume_boundary();
  rep.E_hm = -std::pow(rep.r_breve_0, double(n)) * vol;
  // direct difference per the boundary formula, with the requested reference
  rep.difference = rep.E_g - rep.E_hm;
  const double s = rep.r_breve_0 / rep.r_tilde_0;
  const auto [elem, elem_f] = elementary_inequality(n, s);
  (void)elem_f;
  rep.lower_bound =
      std::pow(rep.r_tilde_0, double(n)) * elem * vol + rep.A_integral;
  const double scale =
      1.0 + std::fabs(rep.E_hm) + std::fabs(rep.difference);
  rep.lower_bound_ok = rep.difference >= rep.lower_bound - 1e-4 * scale;

  // (9) verdict
  if (!rep.flags.all()) {
    rep.verdict = Verdict::hypothesis_failed;
    return rep;
  }
  const double eq_tol = opt.tol_equality * (std::fabs(rep.E_hm) + 1.0);
  if (std::fabs(rep.difference) <= eq_tol) {
    rep.rigidity_residual = rigidity_residual(spec, gm);
    rep.rigidity_evaluated = true;
    rep.verdict = Verdict::equality;
  } else if (rep.difference > 0) {
    rep.verdict = Verdict::strict;
  } else {
    rep.verdict = Verdict::hypothesis_failed;  // would contradict the theorem
  }
  return rep;
}

}  // namespace ahm
