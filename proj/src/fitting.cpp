#include "fitting.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace ahm {

namespace {
inline double sq(double x) { return x * x; }
}

LsqFit least_squares(const std::vector<std::vector<double>>& basis,
                     const std::vector<double>& y,
                     const std::vector<double>& w) {
  const size_t m = basis.size();
  if (m == 0 || y.size() != m) throw FitUnstable("least_squares: bad sizes");
  const size_t k = basis[0].size();

  // Column scaling keeps the normal equations well conditioned.
  std::vector<double> scale(k, 0.0);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < k; ++j)
      scale[j] = std::max(scale[j], std::fabs(basis[i][j]));
  for (size_t j = 0; j < k; ++j)
    if (scale[j] == 0.0) scale[j] = 1.0;

  std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
  std::vector<double> atb(k, 0.0);
  for (size_t i = 0; i < m; ++i) {
    const double wi = w.empty() ? 1.0 : w[i];
    for (size_t p = 0; p < k; ++p) {
      const double bp = basis[i][p] / scale[p];
      atb[p] += wi * bp * y[i];
      for (size_t q = p; q < k; ++q)
        ata[p][q] += wi * bp * basis[i][q] / scale[q];
    }
  }
  for (size_t p = 0; p < k; ++p)
    for (size_t q = 0; q < p; ++q) ata[p][q] = ata[q][p];

  // Cholesky solve.
  std::vector<std::vector<double>> L(k, std::vector<double>(k, 0.0));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      double s = ata[i][j];
      for (size_t p = 0; p < j; ++p) s -= L[i][p] * L[j][p];
      if (i == j) {
        if (s <= 0) throw FitUnstable("least_squares: singular normal matrix");
        L[i][i] = std::sqrt(s);
      } else {
        L[i][j] = s / L[j][j];
      }
    }
  }
  auto solve = [&](std::vector<double> b) {
    for (size_t i = 0; i < k; ++i) {
      for (size_t p = 0; p < i; ++p) b[i] -= L[i][p] * b[p];
      b[i] /= L[i][i];
    }
    for (size_t ii = k; ii-- > 0;) {
      for (size_t p = ii + 1; p < k; ++p) b[ii] -= L[p][ii] * b[p];
      b[ii] /= L[ii][ii];
    }
    return b;
  };

  LsqFit fit;
  fit.coef = solve(atb);

  double rss = 0, wsum = 0;
  for (size_t i = 0; i < m; ++i) {
    double pred = 0;
    for (size_t j = 0; j < k; ++j) pred += fit.coef[j] * basis[i][j] / scale[j];
    const double wi = w.empty() ? 1.0 : w[i];
    rss += wi * sq(y[i] - pred);
    wsum += wi;
  }
  fit.residual = std::sqrt(rss / std::max(wsum, 1e-300));

  const double sigma2 = rss / std::max<double>(1.0, double(m) - double(k));
  fit.err.resize(k);
  for (size_t j = 0; j < k; ++j) {
    std::vector<double> e(k, 0.0);
    e[j] = 1.0;
    auto col = solve(e);
    fit.err[j] = std::sqrt(std::max(0.0, sigma2 * col[j])) / scale[j];
  }
  for (size_t j = 0; j < k; ++j) fit.coef[j] /= scale[j];
  return fit;
}

LsqFit fit_powers(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& powers, bool relative_weights) {
  const size_t m = x.size();
  std::vector<std::vector<double>> basis(m, std::vector<double>(powers.size()));
  std::vector<double> w(m, 1.0);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < powers.size(); ++j)
      basis[i][j] = std::pow(x[i], powers[j]);
    if (relative_weights) {
      const double lead = std::pow(x[i], powers[0]);
      w[i] = 1.0 / std::max(lead * lead, 1e-300);
    }
  }
  return least_squares(basis, y, w);
}

PowerFit decay_order(const std::function<double(double)>& f, double r1,
                     double r2, int k_max, int samples) {
  if (!(r2 > r1 && r1 > 0)) throw FitUnstable("decay_order: bad range");
  PowerFit out;
  const double floor = 1e-280;

  auto slope_of = [&](const std::function<double(double)>& g, bool* floored) {
    std::vector<double> lx, ly;
    double fmax = 0;
    for (int i = 0; i < samples; ++i) {
      const double r = r1 * std::pow(r2 / r1, double(i) / (samples - 1));
      const double v = std::fabs(g(r));
      fmax = std::max(fmax, v);
      if (v > floor) {
        lx.push_back(std::log(r));
        ly.push_back(std::log(v));
      }
    }
    if (fmax <= floor || lx.size() < size_t(samples) / 2) {
      *floored = true;
      return std::pair<double, double>{0.0, 0.0};
    }
    *floored = false;
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
    double resid = 0;
    for (size_t i = 0; i < m; ++i)
      resid = std::max(resid, std::fabs(ly[i] - slope * lx[i] - icept));
    return std::pair<double, double>{-slope, resid};
  };

  bool floored = false;
  auto [order, resid] = slope_of(f, &floored);
  out.order = order;
  out.residual = resid;
  out.below_floor = floored;
  if (floored) return out;

  std::function<double(double)> g = f;
  for (int k = 1; k <= k_max; ++k) {
    std::function<double(double)> prev = g;
    g = [prev](double r) {
      const double h = 1e-4 * r;
      return (prev(r + h) - prev(r - h)) / (2.0 * h);
    };
    bool fl = false;
    auto [ok, rk] = slope_of(g, &fl);
    (void)rk;
    out.k_orders.push_back(fl ? 0.0 : ok);
  }
  return out;
}

}  // namespace ahm
