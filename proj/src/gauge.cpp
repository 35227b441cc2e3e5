#include "gauge.hpp"

#include <algorithm>
#include <cmath>

#include "quadrature.hpp"

namespace ahm {

FProfile::FProfile(int n) : n_(n), y_mid_(4.0) {
  auto tail_integrand = [n](double s) {
    return std::expm1(-0.5 * std::log1p(-std::pow(s, double(-n)))) / s;
  };
  const double T_mid = integrate_to_infinity(tail_integrand, y_mid_);
  const double F_head = integrate([this](double t) { return head_integrand(t); },
                                  0.0, std::sqrt(y_mid_ - 1.0));
  F_mid_ = F_head;
  F0_ = F_head - std::log(y_mid_) + T_mid;
}

double FProfile::geom_sum(double y) const {
  double acc = 0.0;
  for (int k = 0; k < n_; ++k) acc = acc * y + 1.0;
  return acc;
}

double FProfile::head_integrand(double t) const {
  // F integrand after s = 1 + t^2, using s^2(1 - s^{-n}) = s^{2-n}(s-1)(sum s^k):
  // 2t/sqrt(...) = 2 / sqrt(s^{2-n} geom_sum(s)).
  const double s = 1.0 + t * t;
  return 2.0 / std::sqrt(std::pow(s, 2.0 - n_) * geom_sum(s));
}

double FProfile::value(double y) const {
  if (y < 1.0) throw Error("F profile defined for y >= 1");
  if (y <= y_mid_) {
    const double w = std::sqrt(y - 1.0);
    return integrate([this](double t) { return head_integrand(t); }, 0.0, w);
  }
  return F0_ + std::log(y) - tail(y);
}

double FProfile::tail(double y) const {
  auto tail_integrand = [this](double s) {
    return std::expm1(-0.5 * std::log1p(-std::pow(s, double(-n_)))) / s;
  };
  return integrate_to_infinity(tail_integrand, y);
}

double FProfile::derivative(double y) const {
  const double arg = -std::expm1(-n_ * std::log(y));
  return 1.0 / (y * std::sqrt(arg));
}

double FProfile::solve_ym1(double target) const {
  if (target <= 0.0) return 0.0;
  if (target < F_mid_) {
    // Newton in w = sqrt(y-1); Phi(w) = int_0^w head dt, Phi' = head(w).
    double w = 0.5 * target * std::sqrt(double(n_));
    double lo = 0.0, hi = std::sqrt(y_mid_ - 1.0);
    for (int it = 0; it < 80; ++it) {
      const double phi =
          integrate([this](double t) { return head_integrand(t); }, 0.0, w) -
          target;
      if (phi > 0)
        hi = w;
      else
        lo = w;
      const double step = -phi / head_integrand(w);
      double next = w + step;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::fabs(next - w) < 1e-15 * std::max(w, 1e-30)) {
        w = next;
        break;
      }
      w = next;
    }
    return w * w;
  }
  // ln y = target - F0 + T_F(y); contraction since T_F' is tiny.
  double y = std::exp(target - F0_);
  for (int it = 0; it < 50; ++it) {
    const double next = std::exp(target - F0_ + tail(y));
    if (std::fabs(next - y) < 1e-15 * y) {
      y = next;
      break;
    }
    y = next;
  }
  return y - 1.0;
}

double F_profile(int n, double r) { return FProfile(n).value(r); }
double F0_value(int n) { return FProfile(n).F0(); }

namespace {

AngularSeries shifted(const AngularSeries& s, double c) {
  AngularSeries out = s;
  out += c;
  return out;
}

struct TransformedCoeffs {
  AngularSeries v_nm1, v_n;
  TorusTensorSeries w_nm1, w_n;
};

TransformedCoeffs build_transformed(const MetricSpec& spec, double rt0) {
  const Background& bg = spec.background();
  const int n = bg.n();
  const double a = bg.a();
  const double unm1 = spec.u_coef(n - 1), un = spec.u_coef(n);
  const double dr0n = std::pow(rt0, double(n)) - std::pow(bg.r0(), double(n));

  TransformedCoeffs tc;
  tc.v_nm1 = shifted(spec.v_coef(n - 1),
                     ((n - 2.0) * a + 2.0 * unm1) / (2.0 * (n - 1.0)));
  tc.v_n = shifted(spec.v_coef(n), ((n - 1.0) * dr0n + 2.0 * un) / (2.0 * n));
  tc.w_nm1 = spec.w_coef(n - 1);
  tc.w_nm1.add_diag((2.0 * unm1 - a) / (2.0 * (n - 1.0)));
  tc.w_n = spec.w_coef(n);
  tc.w_n.add_diag((-dr0n + 2.0 * un) / (2.0 * n));
  return tc;
}

}  // namespace

GaugeMap::GaugeMap(const MetricSpec& spec)
    : spec_(&spec), collar_(spec), fp_(spec.n()) {
  rt0_ = std::exp(fp_.F0() - collar_.C());
  const Background& bg = spec.background();
  const int n = bg.n();
  const double rp = bg.r_plus();
  const double ratio = std::pow(bg.r0() / rp, double(n));
  const double eu = 1.0 + spec.exp_u_hat_m1(rp);
  drt_at_rp_ = eu * eu * n * rt0_ / (rp * (n - 1.0 + ratio));
  r_far_ = std::max({2.0 * collar_.r_mid(), 8.0 * rt0_, 8.0 * rp});

  TransformedCoeffs tc = build_transformed(spec, rt0_);
  v_nm1_ = std::move(tc.v_nm1);
  v_n_ = std::move(tc.v_n);
  w_nm1_ = std::move(tc.w_nm1);
  w_n_ = std::move(tc.w_n);
}

GaugeMap radial_gauge(const MetricSpec& spec) { return GaugeMap(spec); }

double GaugeMap::E_helper(double rt) const {
  const int n = spec_->n();
  double acc = 0.0;
  for (int k = 0; k < n; ++k) acc = acc * rt + std::pow(rt0_, double(k));
  return acc;  // sum_{k=0}^{n-1} rt0^k rt^{n-1-k}
}

double GaugeMap::r_tilde_minus_rt0(double r) const {
  const double rp = spec_->r_plus();
  if (r <= rp) return 0.0;
  return rt0_ * fp_.solve_ym1(collar_.G(r));
}

double GaugeMap::r_tilde(double r) const { return rt0_ + r_tilde_minus_rt0(r); }

double GaugeMap::r_tilde_minus_r(double r) const {
  if (r < r_far_) return r_tilde(r) - r;
  double rt = r;
  double delta = 0;
  const double tg = collar_.T(r);
  for (int it = 0; it < 30; ++it) {
    delta = fp_.tail(rt / rt0_) - tg;
    const double next = r * (1.0 + std::expm1(delta));
    if (std::fabs(next - rt) < 1e-16 * rt) {
      rt = next;
      break;
    }
    rt = next;
  }
  return r * std::expm1(delta);
}

double GaugeMap::A_tilde(double rt) const {
  const int n = spec_->n();
  return std::pow(rt, 2.0 - n) * (rt - rt0_) * E_helper(rt);
}

double GaugeMap::A_tilde_prime(double rt) const {
  const int n = spec_->n();
  const double rt0n = std::pow(rt0_, double(n));
  return 2.0 * rt + (n - 2.0) * rt0n * std::pow(rt, 1.0 - n);
}

double GaugeMap::A_tilde_second(double rt) const {
  const int n = spec_->n();
  const double rt0n = std::pow(rt0_, double(n));
  return 2.0 + (n - 2.0) * (1.0 - n) * rt0n * std::pow(rt, double(-n));
}

double GaugeMap::dr_tilde(double r) const {
  const Background& bg = spec_->background();
  const double rp = bg.r_plus();
  if (r <= rp * (1.0 + 1e-12)) return drt_at_rp_;
  const int n = spec_->n();
  const double dm = r_tilde_minus_rt0(r);
  const double rt = rt0_ + dm;
  const double At = std::pow(rt, 2.0 - n) * dm * E_helper(rt);
  const double eu = 1.0 + spec_->exp_u_hat_m1(r);
  return eu * std::sqrt(At / bg.A(r));
}

double GaugeMap::small_log(double r) const {
  if (r < r_far_) throw Error("small_log needs r >= r_far");
  const int n = spec_->n();
  const double rt = r + r_tilde_minus_r(r);
  const double z = std::pow(rt0_ / rt, double(n));
  return std::log1p(spec_->exp_u_hat_m1(r)) + 0.5 * std::log1p(-z) -
         0.5 * std::log1p(spec_->background().Q_minus_1(r));
}

double GaugeMap::r_of_r_tilde(double rt) const {
  if (rt < rt0_) throw Error("r_of_r_tilde below rt0");
  const double rp = spec_->r_plus();
  double r = std::max(rt, rp * (1.0 + 1e-12));
  for (int it = 0; it < 100; ++it) {
    const double f = r_tilde(r) - rt;
    const double d = dr_tilde(r);
    double step = -f / d;
    if (r + step <= rp) step = 0.5 * (rp - r);
    r += step;
    if (std::fabs(step) < 1e-14 * std::max(r, rt)) break;
  }
  return r;
}

double GaugeMap::exp_v_tilde_m1(double r, double xi) const {
  // v_hat_tilde = v_hat + ln(r/rt) + (1/2) ln(A(r)/r^2) - (1/2) ln(At(rt)/rt^2);
  // the u_hat parts of v_hat + u_hat - ln(drt/dr) cancel identically.
  const Background& bg = spec_->background();
  const int n = bg.n();
  const double v_hat = std::log1p(spec_->exp_v_hat_m1(r, xi));
  double vt;
  if (r >= r_far_) {
    const double rtmr = r_tilde_minus_r(r);
    const double rt = r + rtmr;
    const double z = std::pow(rt0_ / rt, double(n));
    vt = v_hat - std::log1p(rtmr / r) + 0.5 * std::log1p(bg.Q_minus_1(r)) -
         0.5 * std::log1p(-z);
  } else {
    const double dm = r_tilde_minus_rt0(r);
    const double rt = rt0_ + dm;
    // A/r^2 = r^{-n} (r - r+) D(r);  At/rt^2 = rt^{-n} (rt - rt0) E(rt)
    vt = v_hat + (1.0 - 0.5 * n) * std::log(r / rt) +
         0.5 * std::log((r - bg.r_plus()) / dm) +
         0.5 * std::log(bg.D(r) / E_helper(rt));
  }
  return std::expm1(vt);
}

double GaugeMap::v_hat_tilde(double r, double xi) const {
  return std::log1p(exp_v_tilde_m1(r, xi));
}

double GaugeMap::fit_transformed_coeffs() const {
  const MetricSpec& spec = *spec_;
  const int n = spec.n();
  const double scale = std::max(1.0, spec.r_plus());
  const double r1 = std::max(20.0 * scale, 2.0 * r_far_);
  const double r2 = 100.0 * r1;
  const int samples = 32;

  std::vector<double> rts(samples);
  std::vector<double> rs(samples);
  for (int i = 0; i < samples; ++i) {
    rs[i] = r1 * std::pow(r2 / r1, double(i) / (samples - 1));
    rts[i] = rs[i] + r_tilde_minus_r(rs[i]);
  }
  const std::vector<double> powers = {double(1 - n), double(-n), double(-n - 1)};

  const double beta = spec.xi_period();
  double dev = 0;

  for (double frac : {0.0, 0.29, 0.63}) {
    const double xi = frac * beta;
    std::vector<double> y(samples);
    for (int i = 0; i < samples; ++i) y[i] = exp_v_tilde_m1(rs[i], xi);
    auto fit = fit_powers(rts, y, powers, true);
    dev = std::max(dev, std::fabs(fit.coef[0] - v_nm1_.eval(xi)));
    dev = std::max(dev, std::fabs(fit.coef[1] - v_n_.eval(xi)));
  }

  // Torus block: w_hat_tilde = (r^2/rt^2) w_hat + (r^2/rt^2 - 1) delta.
  const int m = n - 2;
  std::vector<double> angles(1 + m, 0.0);
  angles[0] = 0.31 * beta;
  for (int d = 0; d < m; ++d)
    angles[1 + d] = 0.37 * spec.background().torus_periods()[d];
  for (int ci = 0; ci < m; ++ci)
    for (int cj = ci; cj < m; ++cj) {
      std::vector<double> y(samples);
      for (int i = 0; i < samples; ++i) {
        const double ratio_m1 =
            std::expm1(-2.0 * std::log1p(r_tilde_minus_r(rs[i]) / rs[i]));
        const Mat w = spec.w_hat_val(rs[i], angles);
        const double delta = ci == cj ? 1.0 : 0.0;
        y[i] = (1.0 + ratio_m1) * w(ci, cj) + ratio_m1 * delta;
      }
      auto fit = fit_powers(rts, y, powers, true);
      dev = std::max(
          dev, std::fabs(fit.coef[0] - 2.0 * w_nm1_.value(angles)(ci, cj)));
      dev = std::max(dev,
                     std::fabs(fit.coef[1] - 2.0 * w_n_.value(angles)(ci, cj)));
    }
  return dev;
}

GaugeMap::Expansion GaugeMap::fit_expansion() const {
  const int n = spec_->n();
  const double scale = std::max(1.0, spec_->r_plus());
  const double r1 = std::max(20.0 * scale, 2.0 * r_far_);
  const double r2 = 100.0 * r1;
  const int samples = 32;

  std::vector<double> rs(samples), ys(samples);
  for (int i = 0; i < samples; ++i) {
    rs[i] = r1 * std::pow(r2 / r1, double(i) / (samples - 1));
    ys[i] = r_tilde_minus_r(rs[i]);
  }
  auto fit = fit_powers(rs, ys, {double(2 - n), double(1 - n), double(-n)}, true);
  Expansion e;
  e.lead = fit.coef[0];
  e.sub = fit.coef[1];
  e.residual = fit.residual;
  return e;
}

std::vector<std::array<double, 3>> GaugeMap::table(int count) const {
  const double rp = spec_->r_plus();
  std::vector<std::array<double, 3>> t;
  t.reserve(count);
  t.push_back({rp, rt0_, drt_at_rp_});
  // log-spaced in r - r_plus near the horizon, log in r at large radius
  const double lo = 1e-6 * rp, hi = 1e3 * rp - rp;
  for (int i = 0; i < count - 1; ++i) {
    const double d = lo * std::pow(hi / lo, double(i) / (count - 2));
    const double r = rp + d;
    t.push_back({r, r_tilde(r), dr_tilde(r)});
  }
  return t;
}

L1TildeResult l1_condition_tilde(const GaugeMap& gm, const MetricSpec& spec,
                                 double tol) {
  const int n = spec.n();
  L1TildeResult res;
  const double beta = spec.xi_period();
  const int nxi = spec.suggested_xi_nodes(8);
  const int m = n - 2;
  int per = spec.suggested_phi_nodes(4);
  while (per > 2 && std::pow(double(per), m) > 1024.0) per /= 2;

  std::vector<int> idx(m, 0);
  std::vector<double> angles(1 + m, 0.0);
  for (int i = 0; i < nxi; ++i) {
    angles[0] = beta * double(i) / nxi;
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      for (int d = 0; d < m; ++d)
        angles[1 + d] =
            spec.background().torus_periods()[d] * double(idx[d]) / per;
      const double f =
          gm.v_tilde_nm1().eval(angles[0]) + gm.w_tilde_nm1().value(angles).trace();
      res.sup = std::max(res.sup, std::fabs(f));
      int d = 0;
      while (d < m && ++idx[d] == per) idx[d++] = 0;
      if (d == m) break;
    }
  }
  res.pass = res.sup <= tol * (1.0 + std::fabs(spec.u_coef(n - 1)));
  return res;
}

HorizonCheck horizon_value_check(const GaugeMap& gm, const MetricSpec& spec,
                                 double r_breve0_override) {
  SpecDiagnostics diag = validate_spec(spec);
  if (!diag.regularity_ok)
    throw RegularityError("horizon_value_check requires v_hat(r+) = u_hat(r+)");

  const double rp = spec.r_plus();
  const double rb0 =
      r_breve0_override > 0 ? r_breve0_override : spec.background().r_breve0();
  const double rhs = rb0 / gm.r_tilde_0();

  // One-sided extrapolation to r_plus; v_hat_tilde is analytic in r there.
  std::vector<double> ds;
  for (double d2 : {1e-4, 4e-4, 1.6e-3, 6.4e-3, 2.56e-2, 1.024e-1})
    ds.push_back(d2 * rp);

  HorizonCheck out;
  out.rhs = rhs;
  out.lhs_min = 1e300;
  out.lhs_max = -1e300;
  const double beta = spec.xi_period();
  const int nxi = spec.suggested_xi_nodes(8);
  for (int i = 0; i < nxi; ++i) {
    const double xi = beta * double(i) / nxi;
    std::vector<std::vector<double>> basis;
    std::vector<double> y;
    for (double d : ds) {
      const double r = rp + d;
      basis.push_back({1.0, d, d * d, d * d * d, d * d * d * d});
      y.push_back(1.0 + gm.exp_v_tilde_m1(r, xi));
    }
    auto fit = least_squares(basis, y, {});
    const double lhs = fit.coef[0];
    out.lhs_min = std::min(out.lhs_min, lhs);
    out.lhs_max = std::max(out.lhs_max, lhs);
    out.residual = std::max(out.residual, std::fabs(lhs - rhs));
  }
  return out;
}

}  // namespace ahm
