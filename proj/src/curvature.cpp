#include "curvature.hpp"

#include <cmath>

#include "fitting.hpp"
#include "quadrature.hpp"

namespace ahm {

namespace {

constexpr double kCondGuard = 1e12;

Mat checked_inverse(const Mat& m) {
  if (m.cond_sym() > kCondGuard)
    throw DegenerateGamma("torus block condition number exceeds 1e12");
  return m.inverse();
}

double trace_product(const Mat& a, const Mat& b) {
  double t = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) t += a(i, j) * b(j, i);
  return t;
}

}  // namespace

Mat ricci_from_derivatives(const Mat& g, const std::vector<Mat>& dg,
                           const std::vector<std::vector<Mat>>& d2g) {
  const int d = g.dim();
  const Mat ginv = g.inverse();

  // Christoffel symbols Gamma[m](i,j).
  std::vector<Mat> Gamma(d, Mat(d));
  for (int m = 0; m < d; ++m)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double s = 0;
        for (int k = 0; k < d; ++k)
          s += ginv(m, k) * (dg[i](j, k) + dg[j](i, k) - dg[k](i, j));
        Gamma[m](i, j) = 0.5 * s;
        Gamma[m](j, i) = Gamma[m](i, j);
      }

  // d_l g^{mk} = -g^{ma} (d_l g_ab) g^{bk}
  std::vector<Mat> dginv(d, Mat(d));
  for (int l = 0; l < d; ++l) {
    const Mat t = ginv.mul(dg[l]).mul(ginv);
    dginv[l] = t * (-1.0);
  }

  // dGamma[l][m](i,j) = d_l Gamma^m_ij
  std::vector<std::vector<Mat>> dGamma(d, std::vector<Mat>(d, Mat(d)));
  for (int l = 0; l < d; ++l)
    for (int m = 0; m < d; ++m)
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          double s = 0;
          for (int k = 0; k < d; ++k) {
            s += dginv[l](m, k) * (dg[i](j, k) + dg[j](i, k) - dg[k](i, j));
            s += ginv(m, k) *
                 (d2g[l][i](j, k) + d2g[l][j](i, k) - d2g[l][k](i, j));
          }
          dGamma[l][m](i, j) = 0.5 * s;
          dGamma[l][m](j, i) = dGamma[l][m](i, j);
        }

  Mat ric(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      double s = 0;
      for (int m = 0; m < d; ++m) {
        s += dGamma[m][m](i, j) - dGamma[i][m](m, j);
        for (int l = 0; l < d; ++l)
          s += Gamma[m](m, l) * Gamma[l](i, j) - Gamma[m](i, l) * Gamma[l](m, j);
      }
      ric(i, j) = s;
      ric(j, i) = s;
    }
  return ric;
}

double scalar_from_derivatives(const Mat& g, const std::vector<Mat>& dg,
                               const std::vector<std::vector<Mat>>& d2g) {
  const Mat ric = ricci_from_derivatives(g, dg, d2g);
  const Mat ginv = g.inverse();
  return trace_product(ginv, ric);
}

WQuantities w_quantities(const MetricSpec& spec, const Point& p) {
  const int m = spec.n() - 2;
  const auto angles = p.angles();
  const Mat M = spec.torus_m(p.r, angles);
  const Mat Minv = checked_inverse(M);
  const Mat wr = spec.w_hat_val(p.r, angles, 1);
  const Mat wxi = spec.w_hat_val(p.r, angles, 0, 0);

  WQuantities q;
  const Mat Minv_wr = Minv.mul(wr);
  const Mat Minv_wxi = Minv.mul(wxi);
  q.W_r_hat = 0.5 * Minv_wr.trace();
  q.W_r = (m) / p.r + q.W_r_hat;
  q.W_xi = 0.5 * Minv_wxi.trace();

  const double r2 = p.r * p.r;
  Mat off_r = wr - M * (2.0 * q.W_r_hat / m);
  off_r *= r2;
  Mat off_xi = wxi - M * (2.0 * q.W_xi / m);
  off_xi *= r2;
  q.W_r_traceless = off_r;
  q.W_xi_traceless = off_xi;

  // Reconstruction residuals for d gamma = (2W/(n-2)) gamma + ring W.
  const Mat gamma = M * r2;
  Mat dgamma_r = M * (2.0 * p.r) + wr * r2;
  Mat dgamma_xi = wxi * r2;
  Mat rec_r = dgamma_r - gamma * (2.0 * q.W_r / m) - off_r;
  Mat rec_xi = dgamma_xi - gamma * (2.0 * q.W_xi / m) - off_xi;
  q.recon_err_r = rec_r.max_abs();
  q.recon_err_xi = rec_xi.max_abs();
  return q;
}

double torus_scalar_exact(const MetricSpec& spec, const Point& p) {
  const int m = spec.n() - 2;
  if (m < 2) return 0.0;
  if (spec.w_hat_series().empty()) return 0.0;
  const auto angles = p.angles();
  const Mat M = spec.torus_m(p.r, angles);

  // phi directions are angle slots 1..m in the series layout.
  std::vector<Mat> dM(m);
  std::vector<std::vector<Mat>> d2M(m, std::vector<Mat>(m));
  for (int a = 0; a < m; ++a) {
    dM[a] = spec.w_hat_val(p.r, angles, 0, 1 + a);
    for (int b = a; b < m; ++b) {
      d2M[a][b] = spec.w_hat_val(p.r, angles, 0, 1 + a, 1 + b);
      d2M[b][a] = d2M[a][b];
    }
  }
  // R(r^2 M) = r^{-2} R(M)
  return scalar_from_derivatives(M, dM, d2M) / (p.r * p.r);
}

namespace {

// Uniform periodic product grid over the phi torus.
template <typename F>
double phi_torus_average(const MetricSpec& spec, F&& f, int per_circle) {
  const int m = spec.n() - 2;
  std::vector<int> idx(m, 0);
  std::vector<double> phi(m, 0.0);
  double acc = 0;
  long count = 0;
  while (true) {
    for (int d = 0; d < m; ++d)
      phi[d] = spec.background().torus_periods()[d] * double(idx[d]) / per_circle;
    acc += f(phi);
    ++count;
    int d = 0;
    while (d < m && ++idx[d] == per_circle) idx[d++] = 0;
    if (d == m) break;
  }
  return acc / double(count);
}

}  // namespace

double torus_scalar_integral(const MetricSpec& spec, double r, double xi) {
  const int m = spec.n() - 2;
  if (m < 2 || spec.w_hat_series().empty()) return 0.0;
  const int per_circle = spec.suggested_phi_nodes(16);
  double vol_coord = 1.0;
  for (double l : spec.background().torus_periods()) vol_coord *= l;
  const double avg = phi_torus_average(
      spec,
      [&](const std::vector<double>& phi) {
        return torus_scalar_exact(spec, Point{r, xi, phi});
      },
      per_circle);
  return avg * vol_coord;
}

double torus_scalar_integral_dv(const MetricSpec& spec, double r, double xi) {
  const int m = spec.n() - 2;
  if (m < 2 || spec.w_hat_series().empty()) return 0.0;
  const int per_circle = spec.suggested_phi_nodes(16);
  double vol_coord = 1.0;
  for (double l : spec.background().torus_periods()) vol_coord *= l;
  const double avg = phi_torus_average(
      spec,
      [&](const std::vector<double>& phi) {
        Point p{r, xi, phi};
        const Mat gam = spec.gamma(p);
        auto ev = gam.sym_eigenvalues();
        double det = 1.0;
        for (double e : ev) det *= e;
        return torus_scalar_exact(spec, p) * std::sqrt(std::max(det, 0.0));
      },
      per_circle);
  return avg * vol_coord;
}

PointQuantities point_quantities(const MetricSpec& spec, const Point& p) {
  const Background& bg = spec.background();
  const int n = bg.n();
  const int m = n - 2;
  const double r = p.r;
  if (!(r > bg.r_plus()))
    throw SingularAtHorizon("curvature requested at r <= r_plus");

  PointQuantities q;
  q.r = r;
  q.A = bg.A(r);
  q.A1 = bg.A_prime(r);
  q.A2 = bg.A_second(r);

  q.eum1 = spec.exp_u_hat_m1(r);
  q.eu = 1.0 + q.eum1;
  q.uh1 = spec.u_hat_prime(r);
  q.uh2 = spec.u_hat_second(r);

  q.evm1 = spec.exp_v_hat_m1(r, p.xi);
  q.ev = 1.0 + q.evm1;
  q.vh_r = spec.v_hat_r(r, p.xi);
  q.vh_rr = spec.v_hat_rr(r, p.xi);
  q.vh_xi = spec.v_hat_xi(r, p.xi);

  if (spec.w_hat_series().empty()) {
    q.What_r = q.dWhat_r = q.W_xi = q.dW_xi = 0;
    q.off_r2 = q.off_xi2 = 0;
    q.R_gamma = 0;
  } else {
    const auto angles = p.angles();
    const Mat M = spec.torus_m(r, angles);
    const Mat Minv = checked_inverse(M);
    const Mat wr = spec.w_hat_val(r, angles, 1);
    const Mat wrr = spec.w_hat_val(r, angles, 2);
    const Mat wxi = spec.w_hat_val(r, angles, 0, 0);
    const Mat wxixi = spec.w_hat_val(r, angles, 0, 0, 0);

    const Mat Minv_wr = Minv.mul(wr);
    const Mat Minv_wxi = Minv.mul(wxi);
    q.What_r = 0.5 * Minv_wr.trace();
    q.dWhat_r = 0.5 * trace_product(Minv, wrr) -
                0.5 * trace_product(Minv_wr, Minv_wr);
    q.W_xi = 0.5 * Minv_wxi.trace();
    q.dW_xi = 0.5 * trace_product(Minv, wxixi) -
              0.5 * trace_product(Minv_wxi, Minv_wxi);

    Mat tr_r = Minv_wr;
    for (int i = 0; i < m; ++i) tr_r(i, i) -= 2.0 * q.What_r / m;
    Mat tr_xi = Minv_wxi;
    for (int i = 0; i < m; ++i) tr_xi(i, i) -= 2.0 * q.W_xi / m;
    q.off_r2 = trace_product(tr_r, tr_r);
    q.off_xi2 = trace_product(tr_xi, tr_xi);

    q.R_gamma = torus_scalar_exact(spec, p);
  }

  // Deficit assembly; the flat-background part cancels symbolically through
  // A'' + 2(n-2) A'/r + (n-2)(n-3) A/r^2 = n(n-1).
  const double c1 = (n - 1.0) / (2.0 * m);
  const double u_hat = std::log1p(q.eum1);
  const double em2u = std::exp(-2.0 * u_hat);
  const double one_m_em2u = -std::expm1(-2.0 * u_hat);
  const double W_r = m / r + q.What_r;

  const double dS1 = 3.0 * q.vh_r - q.uh1 + 2.0 * q.What_r;
  const double dS2 = q.vh_rr + q.dWhat_r + (q.vh_r - q.uh1) * (q.vh_r + W_r) +
                     (n - 1.0) * q.What_r / r + c1 * sqr(q.What_r) +
                     q.off_r2 / 8.0;
  const double Y = q.dW_xi - q.vh_xi * q.W_xi + c1 * sqr(q.W_xi) +
                   q.off_xi2 / 8.0;
  const double em2v_over_A = std::exp(-2.0 * std::log1p(q.evm1)) / q.A;

  q.deficit = q.R_gamma + n * (n - 1.0) * one_m_em2u -
              em2u * (q.A1 * dS1 + 2.0 * q.A * dS2) - 2.0 * em2v_over_A * Y;
  return q;
}

double scalar_curvature_deficit(const MetricSpec& spec, const Point& p) {
  return point_quantities(spec, p).deficit;
}

double scalar_curvature_warped(const MetricSpec& spec, const Point& p) {
  const int n = spec.n();
  return scalar_curvature_deficit(spec, p) - n * (n - 1.0);
}

DeficitFit scalar_deficit_leading(const MetricSpec& spec, double xi,
                                  const std::vector<double>& phi) {
  const int n = spec.n();
  const double scale = std::max(1.0, spec.r_plus());
  const double r1 = 30.0 * scale, r2 = 3000.0 * scale;
  const int samples = 24;

  std::vector<double> x(samples), y(samples);
  for (int i = 0; i < samples; ++i) {
    const double r = r1 * std::pow(r2 / r1, double(i) / (samples - 1));
    x[i] = r;
    y[i] = scalar_curvature_deficit(spec, Point{r, xi, phi}) *
           std::pow(r, n - 1.0);
  }
  // y = c + d r^{-2} + e r^{-3}
  auto fit = fit_powers(x, y, {0.0, -2.0, -3.0}, false);

  DeficitFit out;
  out.c = fit.coef[0];
  out.fit_residual = fit.residual;
  const AngularSeries vnm1 = spec.v_coef(n - 1);
  const TorusTensorSeries wnm1 = spec.w_coef(n - 1);
  std::vector<double> angles;
  angles.push_back(xi);
  angles.insert(angles.end(), phi.begin(), phi.end());
  const double tr_w = wnm1.dim() > 0 ? wnm1.value(angles).trace() : 0.0;
  out.predicted_tr_theta =
      2.0 * (n - 1.0) * (spec.u_coef(n - 1) + vnm1.eval(xi) + tr_w);
  if (fit.residual > 1e-3 * (1.0 + std::fabs(out.c)))
    throw FitUnstable("scalar_deficit_leading: power fit did not stabilize");
  return out;
}

}  // namespace ahm
