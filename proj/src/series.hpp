#pragma once

#include <map>

#include "fourier.hpp"

namespace ahm {

// Falling-factorial factor of d^k/dr^k r^{-m}.
inline double inv_power_deriv_factor(int m, int k) {
  double f = 1.0;
  for (int j = 0; j < k; ++j) f *= double(-m - j);
  return f;
}

// f(r) = sum_m c_m r^{-m}, finite. Order 0 holds the constant term.
class ScalarRadialSeries {
 public:
  ScalarRadialSeries() = default;

  ScalarRadialSeries& set(int order, double c) {
    if (order < 0) throw SpecError("radial order must be >= 0");
    terms_[order] = c;
    return *this;
  }
  double coef(int order) const {
    auto it = terms_.find(order);
    return it == terms_.end() ? 0.0 : it->second;
  }
  const std::map<int, double>& terms() const { return terms_; }

  double eval(double r, int deriv = 0) const {
    double acc = 0;
    for (const auto& [m, c] : terms_) {
      if (deriv > 0 && m == 0) continue;
      acc += c * inv_power_deriv_factor(m, deriv) * std::pow(r, double(-m - deriv));
    }
    return acc;
  }

  // Sum of the orders >= min_order only; keeps small tails cancellation-free.
  double eval_from(double r, int min_order, int deriv = 0) const {
    double acc = 0;
    for (const auto& [m, c] : terms_) {
      if (m < min_order) continue;
      acc += c * inv_power_deriv_factor(m, deriv) * std::pow(r, double(-m - deriv));
    }
    return acc;
  }

  int min_positive_order() const {
    for (const auto& [m, c] : terms_)
      if (m > 0 && c != 0.0) return m;
    return 0;
  }

 private:
  std::map<int, double> terms_;
};

// f(r, xi) = sum_m v_m(xi) r^{-m}.
class AngularRadialSeries {
 public:
  AngularRadialSeries() = default;
  explicit AngularRadialSeries(double xi_period) : xi_period_(xi_period) {}

  double xi_period() const { return xi_period_; }

  AngularRadialSeries& set(int order, AngularSeries s) {
    if (order < 0) throw SpecError("radial order must be >= 0");
    terms_.insert_or_assign(order, std::move(s));
    return *this;
  }
  const AngularSeries* coef(int order) const {
    auto it = terms_.find(order);
    return it == terms_.end() ? nullptr : &it->second;
  }
  const std::map<int, AngularSeries>& terms() const { return terms_; }

  double eval(double r, double xi, int dr = 0, int dxi = 0) const {
    double acc = 0;
    for (const auto& [m, s] : terms_) {
      if (dr > 0 && m == 0) continue;
      acc += s.eval(xi, dxi) * inv_power_deriv_factor(m, dr) *
             std::pow(r, double(-m - dr));
    }
    return acc;
  }
  double eval_from(double r, double xi, int min_order, int dr = 0, int dxi = 0) const {
    double acc = 0;
    for (const auto& [m, s] : terms_) {
      if (m < min_order) continue;
      acc += s.eval(xi, dxi) * inv_power_deriv_factor(m, dr) *
             std::pow(r, double(-m - dr));
    }
    return acc;
  }

  int max_xi_mode() const {
    int k = 0;
    for (const auto& [m, s] : terms_) k = std::max(k, s.max_mode());
    return k;
  }

 private:
  double xi_period_ = 2.0 * M_PI;
  std::map<int, AngularSeries> terms_;
};

// w(r, xi, phi) = sum_m w_m(xi, phi) r^{-m}, symmetric tensor coefficients.
class TensorRadialSeries {
 public:
  TensorRadialSeries() : m_(0) {}
  TensorRadialSeries(int m, std::vector<double> periods)
      : m_(m), periods_(std::move(periods)) {}

  int dim() const { return m_; }
  const std::vector<double>& periods() const { return periods_; }
  bool empty() const { return terms_.empty(); }

  TensorRadialSeries& set(int order, TorusTensorSeries t) {
    if (order < 1) throw SpecError("tensor radial order must be >= 1");
    terms_.insert_or_assign(order, std::move(t));
    return *this;
  }
  const TorusTensorSeries* coef(int order) const {
    auto it = terms_.find(order);
    return it == terms_.end() ? nullptr : &it->second;
  }
  const std::map<int, TorusTensorSeries>& terms() const { return terms_; }

  // angles = (xi, phi_3..phi_n); dangle1/2 index into angles, -1 for none.
  Mat value(double r, const std::vector<double>& angles, int dr = 0,
            int dangle1 = -1, int dangle2 = -1) const {
    Mat out(m_);
    for (const auto& [m, t] : terms_) {
      const double f =
          inv_power_deriv_factor(m, dr) * std::pow(r, double(-m - dr));
      out += t.value(angles, dangle1, dangle2) * f;
    }
    return out;
  }

  int max_mode(size_t dimension) const {
    int k = 0;
    for (const auto& [m, t] : terms_) k = std::max(k, t.max_mode(dimension));
    return k;
  }

 private:
  int m_;
  std::vector<double> periods_;
  std::map<int, TorusTensorSeries> terms_;
};

}  // namespace ahm
