#include "background.hpp"

#include <algorithm>
#include <cmath>

namespace ahm {

namespace {

double q_of(const BackgroundParams& p, double r) {
  return 1.0 + p.a * std::pow(r, 1.0 - p.n) -
         std::pow(p.r0, double(p.n)) * std::pow(r, double(-p.n));
}

void check_params(const BackgroundParams& p) {
  if (p.n < 3) throw SpecError("dimension n must be >= 3");
  if (!(p.r0 > 0)) throw SpecError("r0 must be positive");
  if (int(p.torus_periods.size()) != p.n - 2)
    throw SpecError("torus_periods must have n-2 entries");
  for (double l : p.torus_periods)
    if (!(l > 0)) throw SpecError("torus periods must be positive");
}

}  // namespace

double find_r_plus(const BackgroundParams& p) {
  check_params(p);
  const double lo = 1e-6 * p.r0;
  const double hi = 1e3 * std::max(p.r0, std::fabs(p.a) + 1.0);
  const int nscan = 4000;

  // Rightmost sign change on the geometric grid.
  double rb_hi = 0, rb_lo = 0;
  double prev_r = hi, prev_q = q_of(p, hi);
  bool found = false;
  for (int i = 1; i <= nscan; ++i) {
    const double r = hi * std::pow(lo / hi, double(i) / nscan);
    const double q = q_of(p, r);
    if (q == 0.0) return r;
    if (q * prev_q < 0.0) {
      rb_lo = r;
      rb_hi = prev_r;
      found = true;
      break;
    }
    prev_r = r;
    prev_q = q;
  }
  if (!found) throw NoRootError("Q(r) has no positive root in the scan window");

  double flo = q_of(p, rb_lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (rb_lo + rb_hi);
    if ((rb_hi - rb_lo) <= 1e-15 * mid) break;
    const double fm = q_of(p, mid);
    if (fm == 0.0) return mid;
    if (fm * flo < 0.0) {
      rb_hi = mid;
    } else {
      rb_lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (rb_lo + rb_hi);
}

double period_beta(const BackgroundParams& p) {
  const double rp = find_r_plus(p);
  const double ratio = std::pow(p.r0 / rp, double(p.n));
  return 4.0 * M_PI / (rp * (p.n - 1.0 + ratio));
}

double hm_reference(const BackgroundParams& p) {
  return 4.0 * M_PI / (p.n * period_beta(p));
}

Background::Background(BackgroundParams p) : p_(std::move(p)) {
  check_params(p_);
  r_plus_ = find_r_plus(p_);
  const double ratio = std::pow(p_.r0 / r_plus_, double(p_.n));
  beta_ = 4.0 * M_PI / (r_plus_ * (p_.n - 1.0 + ratio));
  r_breve0_ = 4.0 * M_PI / (p_.n * beta_);

  // Synthetic division of r^n + a r - r0^n by (r - r+):
  // b_0 = 1, b_k = b_{k-1} r+ + c_k with c_{n-1} = a.
  // All b_k > 0 (b_{n-1} = r0^n / r+ by Q(r+) = 0).
  div_.assign(p_.n, 0.0);
  div_[0] = 1.0;
  for (int k = 1; k < p_.n; ++k) {
    div_[k] = div_[k - 1] * r_plus_;
    if (k == p_.n - 1) div_[k] += p_.a;
  }
}

double Background::volume_boundary() const {
  double v = beta_;
  for (double l : p_.torus_periods) v *= l;
  return v;
}

double Background::Q(double r) const { return 1.0 + Q_minus_1(r); }

double Background::Q_minus_1(double r) const {
  return p_.a * std::pow(r, 1.0 - p_.n) -
         std::pow(p_.r0, double(p_.n)) * std::pow(r, double(-p_.n));
}

double Background::Q_prime(double r) const {
  const int n = p_.n;
  return (1.0 - n) * p_.a * std::pow(r, double(-n)) +
         n * std::pow(p_.r0, double(n)) * std::pow(r, double(-n - 1));
}

double Background::Q_second(double r) const {
  const int n = p_.n;
  return (1.0 - n) * (-n) * p_.a * std::pow(r, double(-n - 1)) +
         n * (-n - 1.0) * std::pow(p_.r0, double(n)) * std::pow(r, double(-n - 2));
}

double Background::D(double r) const {
  double acc = 0.0;
  for (double b : div_) acc = acc * r + b;
  return acc;
}

double Background::D_prime(double r) const {
  const int deg = p_.n - 1;
  double acc = 0.0;
  for (int k = 0; k < deg; ++k) acc = acc * r + div_[k] * (deg - k);
  return acc;
}

double Background::A(double r) const {
  return std::pow(r, 2.0 - p_.n) * (r - r_plus_) * D(r);
}

double Background::A_prime(double r) const {
  const int n = p_.n;
  // d/dr [r^2 + a r^{3-n} - r0^n r^{2-n}]
  return 2.0 * r + (3.0 - n) * p_.a * std::pow(r, 2.0 - n) -
         (2.0 - n) * std::pow(p_.r0, double(n)) * std::pow(r, 1.0 - n);
}

double Background::A_second(double r) const {
  const int n = p_.n;
  return 2.0 + (3.0 - n) * (2.0 - n) * p_.a * std::pow(r, 1.0 - n) -
         (2.0 - n) * (1.0 - n) * std::pow(p_.r0, double(n)) * std::pow(r, double(-n));
}

}  // namespace ahm
