#pragma once

#include <vector>

#include "errors.hpp"

namespace ahm {

struct BackgroundParams {
  int n = 3;                          // spatial dimension, >= 3
  double a = 0.0;                     // subleading constant (l = 1 units)
  double r0 = 1.0;                    // > 0
  std::vector<double> torus_periods;  // lambda_3..lambda_n, size n-2
};

// Largest positive root of Q(r) = 1 + a r^{1-n} - r0^n r^{-n}, to 1e-12
// relative. Scans a geometric grid, brackets the rightmost sign change,
// then bisects.
double find_r_plus(const BackgroundParams& p);
double period_beta(const BackgroundParams& p);   // 4pi / (r+ (n-1 + r0^n/r+^n))
double hm_reference(const BackgroundParams& p);  // 4pi / (n beta)

// Validated background with the derived radii cached and stable forms of
// A(r) = r^2 Q(r). Q r^n = r^n + a r - r0^n factors as (r - r+) D(r) with
// all-positive D coefficients, which keeps A cancellation-free at the root.
class Background {
 public:
  explicit Background(BackgroundParams p);

  int n() const { return p_.n; }
  double a() const { return p_.a; }
  double r0() const { return p_.r0; }
  const std::vector<double>& torus_periods() const { return p_.torus_periods; }
  const BackgroundParams& params() const { return p_; }

  double r_plus() const { return r_plus_; }
  double beta() const { return beta_; }
  double r_breve0() const { return r_breve0_; }
  double volume_boundary() const;  // beta * prod(lambda_i)

  double Q(double r) const;
  double Q_minus_1(double r) const;  // a r^{1-n} - r0^n r^{-n}, no cancellation
  double Q_prime(double r) const;
  double Q_second(double r) const;

  double A(double r) const;  // r^{2-n} (r - r+) D(r)
  double A_prime(double r) const;
  double A_second(double r) const;
  double D(double r) const;
  double D_prime(double r) const;

 private:
  BackgroundParams p_;
  double r_plus_, beta_, r_breve0_;
  std::vector<double> div_;  // D coefficients, highest power first
};

}  // namespace ahm
