#include "asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "curvature.hpp"
#include "fd_oracle.hpp"
#include "quadrature.hpp"

namespace ahm {

namespace {

// Uniform ξ grid and capped product phi grid sized to the Fourier content.
struct BoundaryGrid {
  std::vector<double> xi;
  std::vector<std::vector<double>> phi;
};

BoundaryGrid boundary_grid(const MetricSpec& spec, int nxi_min = 8,
                           int nphi_min = 4) {
  BoundaryGrid g;
  const int nxi = spec.suggested_xi_nodes(nxi_min);
  const double beta = spec.xi_period();
  for (int i = 0; i < nxi; ++i) g.xi.push_back(beta * double(i) / nxi);

  const int m = spec.n() - 2;
  int per = spec.suggested_phi_nodes(nphi_min);
  while (per > 2 && std::pow(double(per), m) > 4096.0) per /= 2;
  std::vector<int> idx(m, 0);
  std::vector<double> tuple(m, 0.0);
  while (true) {
    for (int d = 0; d < m; ++d)
      tuple[d] = spec.background().torus_periods()[d] * double(idx[d]) / per;
    g.phi.push_back(tuple);
    int d = 0;
    while (d < m && ++idx[d] == per) idx[d++] = 0;
    if (d == m) break;
  }
  return g;
}

}  // namespace

CollarIntegrals::CollarIntegrals(const MetricSpec& spec)
    : bg_(spec.background()), exp_u_hat_(spec.exp_u_hat_series()) {
  const int n = bg_.n();
  const double rp = bg_.r_plus();
  r_mid_ = 4.0 * std::max({rp, bg_.r0(), std::pow(std::fabs(bg_.a()) + 1e-12,
                                                  1.0 / (n - 1.0))});

  // C = -ln r+ + int_{r+}^{r_mid} (e^{u_hat}/sqrt(A) - 1/s) ds + T(r_mid).
  // After s = r+ + t^2 the 1/sqrt cancels against the divided form of A,
  // so the transformed integrand is analytic in t.
  auto head = [this, rp](double t) {
    const double s = rp + t * t;
    return head_integrand(t) - 2.0 * t / s;
  };
  const double I1 = integrate(head, 0.0, std::sqrt(r_mid_ - rp));
  C_ = -std::log(rp) + I1 + T(r_mid_);
}

double CollarIntegrals::integrand(double s) const {
  return exp_u_hat(s) / std::sqrt(bg_.A(s));
}

double CollarIntegrals::head_integrand(double t) const {
  // 2t e^{u_hat}/sqrt(A) with A = s^{2-n}(s - r+) D(s) and s - r+ = t^2.
  const double s = bg_.r_plus() + t * t;
  return 2.0 * exp_u_hat(s) /
         std::sqrt(std::pow(s, 2.0 - bg_.n()) * bg_.D(s));
}

double CollarIntegrals::T(double r) const {
  auto tail = [this](double s) {
    const double small =
        u_hat(s) - 0.5 * std::log1p(bg_.Q_minus_1(s));
    return std::expm1(small) / s;
  };
  return integrate_to_infinity(tail, r);
}

double CollarIntegrals::G(double r) const {
  const double rp = bg_.r_plus();
  if (r <= rp) return 0.0;
  if (r <= r_mid_)
    return integrate([this](double t) { return head_integrand(t); }, 0.0,
                     std::sqrt(r - rp));
  return C_ + std::log(r) - T(r);
}

DefiningFunction::DefiningFunction(const MetricSpec& spec)
    : spec_(&spec), collar_(spec) {}

DefiningFunction defining_function(const MetricSpec& spec) {
  return DefiningFunction(spec);
}

double DefiningFunction::x_of_r(double r) const {
  if (r <= collar_.r_mid()) return std::exp(collar_.C() - collar_.G(r));
  return std::exp(collar_.T(r)) / r;
}

double DefiningFunction::xr_minus_1(double r) const {
  return std::expm1(collar_.T(std::max(r, collar_.r_mid())));
}

double DefiningFunction::r_of_x(double x) const {
  if (!(x > 0)) throw Error("r_of_x needs x > 0");
  const double lnx = std::log(x);
  double r = std::max(1.0 / x, spec_->r_plus() * (1.0 + 1e-9));
  for (int it = 0; it < 100; ++it) {
    const double f = (collar_.C() - collar_.G(r)) - lnx;
    const double df = -collar_.integrand(r);  // d ln x / dr
    double step = -f / df;
    if (r + step <= spec_->r_plus()) step = 0.5 * (spec_->r_plus() - r);
    r += step;
    if (std::fabs(step) < 1e-14 * r) break;
  }
  return r;
}

DefiningFunction::Expansion DefiningFunction::fit_expansion() const {
  const int n = spec_->n();
  const double scale = std::max(1.0, spec_->r_plus());
  const double r1 = std::max(10.0 * scale, 1.5 * collar_.r_mid());
  const double r2 = 100.0 * r1;
  const int samples = 48;

  std::vector<double> xs(samples), ys(samples);
  for (int i = 0; i < samples; ++i) {
    const double r = r1 * std::pow(r2 / r1, double(i) / (samples - 1));
    const double t = collar_.T(r);
    xs[i] = std::exp(t) / r;                 // x(r)
    ys[i] = -r * std::expm1(-t);             // r - 1/x
  }
  auto fit = fit_powers(xs, ys, {double(n - 2), double(n - 1), double(n)}, true);

  Expansion e;
  e.c_nm2 = fit.coef[0];
  e.c_nm1 = fit.coef[1];
  e.c_n = fit.coef[2];
  e.err_nm2 = fit.err[0];
  e.err_nm1 = fit.err[1];
  e.residual = fit.residual;
  return e;
}

double BoundaryData::tr_theta(double xi, const std::vector<double>& phi) const {
  std::vector<double> angles;
  angles.push_back(xi);
  angles.insert(angles.end(), phi.begin(), phi.end());
  return theta_xixi.eval(xi) + theta_tt.value(angles).trace();
}

double BoundaryData::tr_kappa(double xi, const std::vector<double>& phi) const {
  std::vector<double> angles;
  angles.push_back(xi);
  angles.insert(angles.end(), phi.begin(), phi.end());
  return kappa_xixi.eval(xi) + kappa_tt.value(angles).trace();
}

BoundaryData boundary_tensors(const MetricSpec& spec, bool with_fit_check) {
  const Background& bg = spec.background();
  const int n = bg.n();
  const double a = bg.a();
  const double r0n = std::pow(bg.r0(), double(n));
  const double unm1 = spec.u_coef(n - 1), un = spec.u_coef(n);

  BoundaryData b;
  b.xi_period = bg.beta();
  b.phi_periods = bg.torus_periods();

  b.theta_xixi = spec.v_coef(n - 1) * (2.0 * (n - 1.0));
  b.theta_xixi += (n - 2.0) * a + 2.0 * unm1;
  b.kappa_xixi = spec.v_coef(n) * (2.0 * n);
  b.kappa_xixi += -(n - 1.0) * r0n + 2.0 * un;

  b.theta_tt = spec.w_coef(n - 1);
  b.theta_tt *= 2.0 * (n - 1.0);
  b.theta_tt.add_diag(2.0 * unm1 - a);
  b.kappa_tt = spec.w_coef(n);
  b.kappa_tt *= 2.0 * n;
  b.kappa_tt.add_diag(r0n + 2.0 * un);

  if (!with_fit_check) return b;

  // Verify against a numerical expansion of x^2 g in x at fixed angles.
  DefiningFunction df(spec);
  const double scale = std::max(1.0, spec.r_plus());
  const double r1 = 10.0 * scale;
  const double r2 = 400.0 * scale;
  const int samples = 48;

  std::vector<double> xs(samples);
  std::vector<double> rs(samples);
  for (int i = 0; i < samples; ++i) {
    rs[i] = r1 * std::pow(r2 / r1, double(i) / (samples - 1));
    xs[i] = df.x_of_r(rs[i]);
  }
  const std::vector<double> powers = {double(n - 1), double(n), double(n + 1),
                                      double(n + 2), double(n + 3)};

  auto grid = boundary_grid(spec, 4, 2);
  double dev = 0;
  const size_t xi_take = std::min<size_t>(grid.xi.size(), 4);
  const size_t phi_take = std::min<size_t>(grid.phi.size(), 3);
  for (size_t ix = 0; ix < xi_take; ++ix) {
    const double xi = grid.xi[ix];
    // xi-xi component
    std::vector<double> y(samples);
    for (int i = 0; i < samples; ++i) {
      const double ev = spec.exp_v_hat(rs[i], xi);
      y[i] = xs[i] * xs[i] * bg.A(rs[i]) * ev * ev - 1.0;
    }
    auto fit = fit_powers(xs, y, powers, true);
    dev = std::max(dev, std::fabs((n - 1.0) * fit.coef[0] - b.theta_xixi.eval(xi)));
    dev = std::max(dev, std::fabs(n * fit.coef[1] - b.kappa_xixi.eval(xi)));

    for (size_t ip = 0; ip < phi_take; ++ip) {
      std::vector<double> angles;
      angles.push_back(xi);
      angles.insert(angles.end(), grid.phi[ip].begin(), grid.phi[ip].end());
      for (int ci = 0; ci < n - 2; ++ci)
        for (int cj = ci; cj < n - 2; ++cj) {
          for (int i = 0; i < samples; ++i) {
            const Mat w = spec.w_hat_val(rs[i], angles);
            const double delta = ci == cj ? 1.0 : 0.0;
            y[i] = xs[i] * xs[i] * rs[i] * rs[i] * (delta + w(ci, cj)) - delta;
          }
          auto cfit = fit_powers(xs, y, powers, true);
          std::vector<double> ang2 = angles;
          dev = std::max(dev, std::fabs((n - 1.0) * cfit.coef[0] -
                                        b.theta_tt.value(ang2)(ci, cj)));
          dev = std::max(dev,
                         std::fabs(n * cfit.coef[1] - b.kappa_tt.value(ang2)(ci, cj)));
        }
    }
  }
  b.fit_deviation = dev;
  return b;
}

namespace {

// Boundary quadrature of f(xi, phi) against dV_{h0}; trapezoid on uniform
// periodic grids is exact for the stored Fourier content.
double boundary_integral(const MetricSpec& spec,
                         const std::function<double(double, const std::vector<double>&)>& f) {
  auto grid = boundary_grid(spec);
  double acc = 0;
  for (double xi : grid.xi)
    for (const auto& phi : grid.phi) acc += f(xi, phi);
  const double vol = spec.background().volume_boundary();
  return acc * vol / double(grid.xi.size() * grid.phi.size());
}

}  // namespace

double total_energy(const MetricSpec& spec) {
  BoundaryData b = boundary_tensors(spec, false);
  return boundary_integral(
      spec, [&](double xi, const std::vector<double>& phi) {
        return b.tr_kappa(xi, phi);
      });
}

double hm_energy(const MetricSpec& spec) {
  const Background& bg = spec.background();
  return -std::pow(bg.r_breve0(), double(bg.n())) * bg.volume_boundary();
}

double energy_difference(const MetricSpec& spec) {
  const Background& bg = spec.background();
  const int n = bg.n();
  const double rbn = std::pow(bg.r_breve0(), double(n));
  const double r0n = std::pow(bg.r0(), double(n));
  const double un = spec.u_coef(n);
  const AngularSeries vn = spec.v_coef(n);
  const TorusTensorSeries wn = spec.w_coef(n);
  return boundary_integral(
      spec, [&](double xi, const std::vector<double>& phi) {
        std::vector<double> angles;
        angles.push_back(xi);
        angles.insert(angles.end(), phi.begin(), phi.end());
        return rbn - r0n + 2.0 * (n - 1.0) * un + 2.0 * n * vn.eval(xi) +
               2.0 * n * wn.value(angles).trace();
      });
}

L1Result l1_condition(const MetricSpec& spec, double tol) {
  const int n = spec.n();
  const double unm1 = spec.u_coef(n - 1);
  const AngularSeries vnm1 = spec.v_coef(n - 1);
  const TorusTensorSeries wnm1 = spec.w_coef(n - 1);

  L1Result res;
  auto grid = boundary_grid(spec);
  for (double xi : grid.xi)
    for (const auto& phi : grid.phi) {
      std::vector<double> angles;
      angles.push_back(xi);
      angles.insert(angles.end(), phi.begin(), phi.end());
      const double f = unm1 + vnm1.eval(xi) + wnm1.value(angles).trace();
      res.sup = std::max(res.sup, std::fabs(f));
    }
  res.tr_theta_sup = 2.0 * (n - 1.0) * res.sup;
  res.pass = res.sup <= tol * (1.0 + std::fabs(unm1));
  return res;
}

PowerFit scalar_decay_order(const MetricSpec& spec, double r1, double r2) {
  const double scale = std::max(1.0, spec.r_plus());
  if (r1 <= 0) r1 = 5.0 * scale;
  if (r2 <= 0) r2 = 500.0 * scale;
  const double beta = spec.xi_period();
  std::vector<double> phi;
  for (double l : spec.background().torus_periods()) phi.push_back(0.23 * l);
  auto f = [&](double r) {
    return scalar_curvature_deficit(spec, Point{r, 0.37 * beta, phi});
  };
  return decay_order(f, r1, r2, 0);
}

ApeResult ape_deficit(const MetricSpec& spec, std::vector<double> x_samples,
                      double fd_step) {
  DefiningFunction df(spec);
  const double scale = std::max(1.0, spec.r_plus());
  if (x_samples.empty()) {
    for (int i = 0; i < 8; ++i) {
      const double r = 5.0 * scale * std::pow(10.0, double(i) / 7.0);
      x_samples.push_back(df.x_of_r(r));
    }
  }

  const double beta = spec.xi_period();
  std::vector<std::vector<double>> phis;
  {
    std::vector<double> p1, p2;
    for (double l : spec.background().torus_periods()) {
      p1.push_back(0.31 * l);
      p2.push_back(0.79 * l);
    }
    phis.push_back(p1);
    phis.push_back(p2);
  }

  std::vector<double> lx, ly;
  for (double x : x_samples) {
    const double r = df.r_of_x(x);
    double omega = 0;
    for (const auto& phi : phis) {
      omega = std::max(omega, omega_norm_fd(spec, Point{r, 0.17 * beta, phi}, fd_step));
      omega = std::max(omega, omega_norm_fd(spec, Point{r, 0.61 * beta, phi}, fd_step));
    }
    if (omega > 1e-280) {
      lx.push_back(std::log(x));
      ly.push_back(std::log(omega));
    }
  }
  if (lx.size() < 3) throw FitUnstable("ape_deficit: too few usable samples");

  const size_t m = lx.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < m; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double icept = (sy - slope * sx) / m;

  ApeResult res;
  res.order = slope;  // |Omega| ~ x^order
  for (size_t i = 0; i < m; ++i)
    res.residual = std::max(res.residual, std::fabs(ly[i] - slope * lx[i] - icept));
  res.tr_theta_zero = l1_condition(spec).pass;
  return res;
}

}  // namespace ahm
