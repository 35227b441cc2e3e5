#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace ahm {

struct QuadratureOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  int max_intervals = 4000;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

// Integral of f over [a, inf) for f = O(s^{-2}); substitutes s = a/tau.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             const QuadratureOptions& opt = {});

// Gauss-Legendre nodes and weights on [a, b].
std::vector<std::pair<double, double>> gauss_legendre(int npts, double a,
                                                      double b);

}  // namespace ahm
