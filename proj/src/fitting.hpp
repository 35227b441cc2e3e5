#pragma once

#include <functional>
#include <vector>

namespace ahm {

struct LsqFit {
  std::vector<double> coef;
  std::vector<double> err;  // 1-sigma error bars from residual variance
  double residual = 0;      // rms of weighted residuals
};

// Weighted least squares: y_i ~ sum_k coef_k * basis[i][k], weight w_i.
LsqFit least_squares(const std::vector<std::vector<double>>& basis,
                     const std::vector<double>& y,
                     const std::vector<double>& w);

// Fit y ~ sum_k c_k x^{p_k}; with relative_weights the rows are scaled by the
// leading power so all samples count comparably.
LsqFit fit_powers(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& powers, bool relative_weights);

struct PowerFit {
  double order = 0;          // fitted exponent m in f ~ r^{-m}
  double residual = 0;       // max |log f - fit| over samples
  bool below_floor = false;  // |f| underflowed on the whole sample
  std::vector<double> k_orders;  // orders of d^k f/dr^k, k = 1..k_max
};

// Log-log slope of |f| on a geometric sample of [r1, r2]; derivative orders
// up to k_max estimated by centered differencing with relative step.
PowerFit decay_order(const std::function<double(double)>& f, double r1,
                     double r2, int k_max = 2, int samples = 33);

}  // namespace ahm
