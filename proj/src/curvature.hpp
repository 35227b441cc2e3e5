#pragma once

#include "metric.hpp"

namespace ahm {

// Trace and trace-free parts of the radial/xi derivatives of the torus block.
struct WQuantities {
  double W_r = 0;        // (1/2) tr_gamma(d_r gamma)
  Mat W_r_traceless;     // matrix part of d_r gamma minus its trace part
  double W_xi = 0;
  Mat W_xi_traceless;
  double W_r_hat = 0;    // W_r - (n-2)/r
  double recon_err_r = 0;
  double recon_err_xi = 0;
};

WQuantities w_quantities(const MetricSpec& spec, const Point& p);

// Everything the curvature and energy identities need at one point, in the
// original (r, xi, phi) coordinates. All radial and xi derivatives are taken
// analytically from the series; phi enters only through R(gamma).
struct PointQuantities {
  double r = 0;
  double A = 0, A1 = 0, A2 = 0;              // A = r^2 Q and derivatives
  double eu = 0, eum1 = 0, uh1 = 0, uh2 = 0; // e^{u_hat}, e^{u_hat}-1, u_hat', u_hat''
  double ev = 0, evm1 = 0;                   // e^{v_hat}, e^{v_hat}-1
  double vh_r = 0, vh_rr = 0, vh_xi = 0;     // v_hat derivatives
  double What_r = 0, dWhat_r = 0;            // W^r - (n-2)/r and its d_r
  double W_xi = 0, dW_xi = 0;                // W^xi and its d_xi
  double off_r2 = 0, off_xi2 = 0;            // |ring W^r|^2_gamma, |ring W^xi|^2_gamma
  double R_gamma = 0;                        // scalar curvature of the torus block
  double deficit = 0;                        // R(g) + n(n-1)
};

PointQuantities point_quantities(const MetricSpec& spec, const Point& p);

// R(g) + n(n-1) assembled so the constant cancels symbolically; accurate in
// absolute terms down to the series tails at large r and at the horizon.
double scalar_curvature_deficit(const MetricSpec& spec, const Point& p);

// R(g) via the warped-product decomposition.
double scalar_curvature_warped(const MetricSpec& spec, const Point& p);

// Scalar curvature of the torus block gamma at fixed (r, xi): exact path
// (Fourier derivatives). Zero for n = 3.
double torus_scalar_exact(const MetricSpec& spec, const Point& p);

// Integral of R(gamma) over the phi torus with coordinate measure
// dphi^3...dphi^n at fixed (r, xi).
double torus_scalar_integral(const MetricSpec& spec, double r, double xi);

// Same integrand against the Riemannian measure dV_gamma (Gauss-Bonnet check).
double torus_scalar_integral_dv(const MetricSpec& spec, double r, double xi);

// Leading coefficient c of R + n(n-1) = c r^{1-n} at fixed angles, fitted over
// a large-r sample, together with the closed-form prediction tr_h0 theta.
struct DeficitFit {
  double c = 0;
  double predicted_tr_theta = 0;
  double fit_residual = 0;
};
DeficitFit scalar_deficit_leading(const MetricSpec& spec, double xi,
                                  const std::vector<double>& phi);

// Generic scalar curvature from a metric and its first/second coordinate
// derivatives (shared by the exact torus path and the FD oracle).
double scalar_from_derivatives(const Mat& g, const std::vector<Mat>& dg,
                               const std::vector<std::vector<Mat>>& d2g);
Mat ricci_from_derivatives(const Mat& g, const std::vector<Mat>& dg,
                           const std::vector<std::vector<Mat>>& d2g);

}  // namespace ahm
