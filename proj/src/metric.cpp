#include "metric.hpp"

#include <algorithm>
#include <cmath>

namespace ahm {

MetricSpec::MetricSpec(Background bg, ScalarRadialSeries exp_u_hat,
                       AngularRadialSeries exp_v_hat, TensorRadialSeries w_hat)
    : bg_(std::move(bg)),
      exp_u_hat_(std::move(exp_u_hat)),
      exp_v_hat_(std::move(exp_v_hat)),
      w_hat_(std::move(w_hat)) {
  // The e^hat series carry constant term 1; insert it if the caller left it out.
  if (exp_u_hat_.coef(0) == 0.0) exp_u_hat_.set(0, 1.0);
  if (exp_u_hat_.coef(0) != 1.0)
    throw SpecError("exp_u_hat must have constant term 1");
  const AngularSeries* v0 = exp_v_hat_.coef(0);
  if (v0 == nullptr || v0->empty())
    exp_v_hat_.set(0, AngularSeries::constant(bg_.beta(), 1.0));
  else if (v0->max_mode() != 0 || v0->mean() != 1.0)
    throw SpecError("exp_v_hat must have constant term 1");
  if (w_hat_.dim() != bg_.n() - 2 && !(w_hat_.dim() == 0 && w_hat_.empty()))
    throw SpecError("w_hat dimension does not match n-2");
  if (w_hat_.dim() == 0) {
    std::vector<double> periods;
    periods.push_back(bg_.beta());
    for (double l : bg_.torus_periods()) periods.push_back(l);
    w_hat_ = TensorRadialSeries(bg_.n() - 2, periods);
  }
}

AngularSeries MetricSpec::v_coef(int order) const {
  const AngularSeries* s = exp_v_hat_.coef(order);
  return s ? *s : AngularSeries(bg_.beta());
}

TorusTensorSeries MetricSpec::w_coef(int order) const {
  // w_hat stores 2 w_m at order m.
  const TorusTensorSeries* t = w_hat_.coef(order);
  std::vector<double> periods;
  periods.push_back(bg_.beta());
  for (double l : bg_.torus_periods()) periods.push_back(l);
  TorusTensorSeries out(bg_.n() - 2, periods);
  if (t) {
    out += *t;
    out *= 0.5;
  }
  return out;
}

Mat MetricSpec::torus_m(double r, const std::vector<double>& angles) const {
  Mat m = Mat::identity(bg_.n() - 2);
  m += w_hat_.value(r, angles);
  return m;
}

Mat MetricSpec::gamma(const Point& p) const {
  Mat m = torus_m(p.r, p.angles());
  m *= p.r * p.r;
  return m;
}

Mat MetricSpec::metric(const Point& p) const {
  const int n = bg_.n();
  if (!(p.r > bg_.r_plus()))
    throw SingularAtHorizon("metric requested at r <= r_plus");
  Mat g(n);
  const double A = bg_.A(p.r);
  const double eu = exp_u_hat(p.r);
  const double ev = exp_v_hat(p.r, p.xi);
  g(0, 0) = eu * eu / A;
  g(1, 1) = A * ev * ev;
  const Mat gam = gamma(p);
  for (int i = 0; i < n - 2; ++i)
    for (int j = 0; j < n - 2; ++j) g(2 + i, 2 + j) = gam(i, j);
  return g;
}

int MetricSpec::suggested_xi_nodes(int at_least) const {
  int m = exp_v_hat_.max_xi_mode();
  m = std::max(m, w_hat_.max_mode(0));
  return std::max(at_least, 2 * m + 4);
}

int MetricSpec::suggested_phi_nodes(int at_least) const {
  int m = 0;
  for (size_t d = 1; d < size_t(bg_.n() - 1); ++d)
    m = std::max(m, w_hat_.max_mode(d));
  return std::max(at_least, 2 * m + 4);
}

MetricSpec::Grid MetricSpec::make_grid(int nr, int nxi, int nphi_circle) const {
  Grid grid;
  const double rp = bg_.r_plus();
  const double rlo = rp * (1.0 + 1e-6), rhi = 1e3 * rp;
  grid.r_nodes.resize(nr);
  for (int i = 0; i < nr; ++i)
    grid.r_nodes[i] = rlo * std::pow(rhi / rlo, double(i) / (nr - 1));

  const double beta = bg_.beta();
  grid.xi_nodes.resize(nxi);
  for (int i = 0; i < nxi; ++i) grid.xi_nodes[i] = beta * double(i) / nxi;

  // Tensor-product phi grid, capped so high n stays tractable.
  const int m = bg_.n() - 2;
  int per_circle = nphi_circle;
  while (per_circle > 2 && std::pow(double(per_circle), m) > 4096.0)
    per_circle /= 2;
  std::vector<double> tuple(m, 0.0);
  std::vector<int> idx(m, 0);
  while (true) {
    for (int d = 0; d < m; ++d)
      tuple[d] = bg_.torus_periods()[d] * double(idx[d]) / per_circle;
    grid.phi_nodes.push_back(tuple);
    int d = 0;
    while (d < m && ++idx[d] == per_circle) idx[d++] = 0;
    if (d == m) break;
  }
  return grid;
}

SpecDiagnostics validate_spec(const MetricSpec& spec, const ValidateOptions& opt) {
  SpecDiagnostics diag;
  const int n = spec.n();

  // Leading-order structure: nothing at orders 1..n-2.
  for (int m = 1; m <= n - 2; ++m) {
    if (spec.u_coef(m) != 0.0) diag.leading_orders_ok = false;
    const AngularSeries* vs = spec.exp_v_hat_series().coef(m);
    if (vs && !vs->empty()) diag.leading_orders_ok = false;
    const TorusTensorSeries* ws = spec.w_hat_series().coef(m);
    if (ws && !ws->empty()) diag.leading_orders_ok = false;
  }
  if (!diag.leading_orders_ok)
    diag.note = "series content at orders 1..n-2 violates the decay ansatz; ";

  const auto grid =
      spec.make_grid(opt.nr, std::max(opt.nxi, spec.suggested_xi_nodes(opt.nxi)),
                     std::max(opt.nphi, spec.suggested_phi_nodes(opt.nphi)));

  for (double r : grid.r_nodes) {
    if (spec.exp_u_hat(r) <= 0.0) {
      diag.exp_u_positive = false;
      diag.failure_point = Point{r, 0.0, {}};
    }
    for (double xi : grid.xi_nodes) {
      if (spec.exp_v_hat(r, xi) <= 0.0) {
        diag.exp_v_positive = false;
        if (!diag.failure_point) diag.failure_point = Point{r, xi, {}};
      }
    }
  }

  // gamma positive definite: check eigenvalues of delta + w_hat.
  if (!spec.w_hat_series().empty()) {
    for (double r : grid.r_nodes) {
      for (double xi : grid.xi_nodes) {
        for (const auto& phi : grid.phi_nodes) {
          std::vector<double> angles;
          angles.push_back(xi);
          angles.insert(angles.end(), phi.begin(), phi.end());
          const Mat m = spec.torus_m(r, angles);
          const auto ev = m.sym_eigenvalues();
          if (*std::min_element(ev.begin(), ev.end()) <= 0.0) {
            diag.gamma_positive = false;
            diag.failure_point = Point{r, xi, phi};
            break;
          }
        }
        if (!diag.gamma_positive) break;
      }
      if (!diag.gamma_positive) break;
    }
  }

  // Smoothness at the center: v_hat(r+, xi) = u_hat(r+) for all xi,
  // measured as sup_xi |ln(e^v_hat(r+,xi) / e^u_hat(r+))|.
  const double rp = spec.r_plus();
  const double eu_rp = spec.exp_u_hat(rp);
  double resid = 0;
  bool log_ok = eu_rp > 0;
  for (double xi : grid.xi_nodes) {
    const double ev_rp = spec.exp_v_hat(rp, xi);
    if (!(ev_rp > 0) || !log_ok) {
      log_ok = false;
      break;
    }
    resid = std::max(resid, std::fabs(std::log(ev_rp / eu_rp)));
  }
  diag.regularity_residual = log_ok ? resid : 1e300;
  diag.regularity_ok = log_ok && resid <= opt.regularity_tol;

  return diag;
}

}  // namespace ahm
