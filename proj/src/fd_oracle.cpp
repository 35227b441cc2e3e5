#include "fd_oracle.hpp"

#include <cmath>

#include "curvature.hpp"

namespace ahm {

namespace {

struct Derivatives {
  Mat g;
  std::vector<Mat> dg;
  std::vector<std::vector<Mat>> d2g;
};

Derivatives fd_derivatives(const MetricFn& f, const std::vector<double>& q,
                           const FdOptions& opt) {
  const int d = int(q.size());
  if (int(opt.steps.size()) != d)
    throw Error("fd_derivatives: steps size mismatch");

  auto at = [&](const std::vector<int>& offs) {
    std::vector<double> p = q;
    for (int k = 0; k < d; ++k) p[k] += offs[k] * opt.steps[k];
    return f(p);
  };

  Derivatives out;
  out.g = f(q);
  const int dim = out.g.dim();
  out.dg.assign(d, Mat(dim));
  out.d2g.assign(d, std::vector<Mat>(d, Mat(dim)));

  std::vector<int> o(d, 0);
  if (opt.order == 2) {
    for (int k = 0; k < d; ++k) {
      o.assign(d, 0);
      o[k] = 1;
      const Mat fp = at(o);
      o[k] = -1;
      const Mat fm = at(o);
      out.dg[k] = (fp - fm) * (0.5 / opt.steps[k]);
      out.d2g[k][k] =
          (fp - out.g * 2.0 + fm) * (1.0 / (opt.steps[k] * opt.steps[k]));
    }
    for (int k = 0; k < d; ++k)
      for (int l = k + 1; l < d; ++l) {
        o.assign(d, 0);
        o[k] = 1;
        o[l] = 1;
        Mat s = at(o);
        o[l] = -1;
        s -= at(o);
        o[k] = -1;
        s += at(o);
        o[l] = 1;
        s -= at(o);
        out.d2g[k][l] = s * (0.25 / (opt.steps[k] * opt.steps[l]));
        out.d2g[l][k] = out.d2g[k][l];
      }
  } else if (opt.order == 4) {
    // D1: (-f2 + 8 f1 - 8 fm1 + fm2) / 12h ; D2 diag: (-f2 + 16 f1 - 30 f0 + 16 fm1 - fm2)/12h^2
    for (int k = 0; k < d; ++k) {
      Mat f1(0), f2(0), fm1(0), fm2(0);
      o.assign(d, 0);
      o[k] = 1;
      f1 = at(o);
      o[k] = 2;
      f2 = at(o);
      o[k] = -1;
      fm1 = at(o);
      o[k] = -2;
      fm2 = at(o);
      out.dg[k] = (f2 * (-1.0) + f1 * 8.0 - fm1 * 8.0 + fm2) *
                  (1.0 / (12.0 * opt.steps[k]));
      out.d2g[k][k] =
          (f2 * (-1.0) + f1 * 16.0 - out.g * 30.0 + fm1 * 16.0 - fm2 * 1.0) *
          (1.0 / (12.0 * opt.steps[k] * opt.steps[k]));
    }
    const int offs[4] = {-2, -1, 1, 2};
    const double coef[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
    for (int k = 0; k < d; ++k)
      for (int l = k + 1; l < d; ++l) {
        Mat acc(out.g.dim());
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            o.assign(d, 0);
            o[k] = offs[i];
            o[l] = offs[j];
            acc += at(o) * (coef[i] * coef[j]);
          }
        out.d2g[k][l] = acc * (1.0 / (opt.steps[k] * opt.steps[l]));
        out.d2g[l][k] = out.d2g[k][l];
      }
  } else {
    throw Error("fd_derivatives: order must be 2 or 4");
  }
  return out;
}

// step > 0: absolute step in every coordinate. step <= 0: the default
// 1e-3 * max(1, r).
std::vector<double> spec_steps(const MetricSpec& spec, const Point& p,
                               double step) {
  const int n = spec.n();
  const double h0 = step > 0 ? step : 1e-3 * std::max(1.0, p.r);
  return std::vector<double>(n, h0);
}

// Larger-radius variant for the APE diagnostic: relative in r, scaled by the
// periods in the angles.
std::vector<double> omega_steps(const MetricSpec& spec, const Point& p,
                                double step) {
  const int n = spec.n();
  std::vector<double> h(n);
  h[0] = step * std::max(1.0, p.r);
  h[1] = step * spec.xi_period() / (2.0 * M_PI);
  for (int i = 0; i < n - 2; ++i)
    h[2 + i] = step * spec.background().torus_periods()[i] / (2.0 * M_PI);
  return h;
}

}  // namespace

Mat ricci_fd(const MetricFn& metric, const std::vector<double>& q,
             const FdOptions& opt) {
  const Derivatives der = fd_derivatives(metric, q, opt);
  return ricci_from_derivatives(der.g, der.dg, der.d2g);
}

double scalar_curvature_fd(const MetricFn& metric, const std::vector<double>& q,
                           const FdOptions& opt) {
  const Derivatives der = fd_derivatives(metric, q, opt);
  return scalar_from_derivatives(der.g, der.dg, der.d2g);
}

MetricFn metric_fn(const MetricSpec& spec) {
  return [&spec](const std::vector<double>& q) {
    Point p;
    p.r = q[0];
    p.xi = q[1];
    p.phi.assign(q.begin() + 2, q.end());
    return spec.metric(p);
  };
}

double scalar_curvature_oracle(const MetricSpec& spec, const Point& p,
                               double step, int order) {
  FdOptions opt;
  opt.order = order;
  opt.steps = spec_steps(spec, p, step);
  const double reach = (order == 4 ? 2.0 : 1.0) * opt.steps[0];
  if (p.r - reach <= spec.r_plus())
    throw StencilOutOfDomain("FD stencil would cross r = r_plus");
  std::vector<double> q;
  q.push_back(p.r);
  q.push_back(p.xi);
  q.insert(q.end(), p.phi.begin(), p.phi.end());
  return scalar_curvature_fd(metric_fn(spec), q, opt);
}

double torus_scalar(const MetricSpec& spec, const Point& p, double step) {
  const int m = spec.n() - 2;
  if (m < 2) return 0.0;
  if (spec.w_hat_series().empty()) return 0.0;

  MetricFn gamma_fn = [&spec, &p](const std::vector<double>& phi) {
    Point q = p;
    q.phi = phi;
    return spec.gamma(q);
  };
  FdOptions opt;
  opt.order = 2;
  for (int i = 0; i < m; ++i)
    opt.steps.push_back(step * spec.background().torus_periods()[i] /
                        (2.0 * M_PI));
  return scalar_curvature_fd(gamma_fn, p.phi, opt);
}

double omega_norm_fd(const MetricSpec& spec, const Point& p, double step) {
  const int n = spec.n();
  FdOptions opt;
  opt.order = 4;
  opt.steps = omega_steps(spec, p, step);
  if (p.r - 2.0 * opt.steps[0] <= spec.r_plus())
    throw StencilOutOfDomain("FD stencil would cross r = r_plus");
  std::vector<double> q;
  q.push_back(p.r);
  q.push_back(p.xi);
  q.insert(q.end(), p.phi.begin(), p.phi.end());

  const Mat ric = ricci_fd(metric_fn(spec), q, opt);
  const Mat g = spec.metric(p);
  const Mat omega = ric + g * double(n - 1);
  const Mat ginv = g.inverse();
  // |Omega|_g^2 = g^{ik} g^{jl} Omega_ij Omega_kl
  const Mat t = ginv.mul(omega).mul(ginv).mul(omega);
  return std::sqrt(std::max(0.0, t.trace()));
}

}  // namespace ahm
