#pragma once

#include <functional>

#include "metric.hpp"

namespace ahm {

using MetricFn = std::function<Mat(const std::vector<double>&)>;

struct FdOptions {
  std::vector<double> steps;  // per coordinate
  int order = 2;              // 2 or 4
};

// Ricci tensor / scalar curvature of an arbitrary metric evaluator by
// centered finite differences of the components.
Mat ricci_fd(const MetricFn& metric, const std::vector<double>& q,
             const FdOptions& opt);
double scalar_curvature_fd(const MetricFn& metric, const std::vector<double>& q,
                           const FdOptions& opt);

// Metric evaluator for a spec in (r, xi, phi...) coordinates.
MetricFn metric_fn(const MetricSpec& spec);

// Independent scalar-curvature oracle for a spec. step > 0 is the absolute
// per-coordinate stencil step; step <= 0 selects the default 1e-3 * max(1, r).
// Throws StencilOutOfDomain if the stencil would cross r = r_plus.
double scalar_curvature_oracle(const MetricSpec& spec, const Point& p,
                               double step = 0, int order = 2);

// FD path for the torus block curvature (phi differences only); 0 for n = 3.
double torus_scalar(const MetricSpec& spec, const Point& p, double step = 1e-4);

// |Ric + (n-1) g|_g by fourth-order differences (the APE diagnostic).
double omega_norm_fd(const MetricSpec& spec, const Point& p, double step = 3e-3);

}  // namespace ahm
