#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace ahm {

// Real Fourier series on one circle: f(x) = sum_k a_k cos(k w x) + b_k sin(k w x).
class AngularSeries {
 public:
  AngularSeries() : period_(2.0 * M_PI) {}
  explicit AngularSeries(double period) : period_(period) {
    if (!(period > 0)) throw SpecError("AngularSeries period must be positive");
  }
  static AngularSeries constant(double period, double value) {
    AngularSeries s(period);
    if (value != 0.0) s.add(0, value, 0.0);
    return s;
  }

  double period() const { return period_; }
  bool empty() const { return modes_.empty(); }
  int max_mode() const { return modes_.empty() ? 0 : modes_.rbegin()->first; }
  const std::map<int, std::pair<double, double>>& modes() const { return modes_; }

  AngularSeries& add(int k, double cos_amp, double sin_amp) {
    if (k < 0) throw SpecError("Fourier mode index must be >= 0");
    auto& m = modes_[k];
    m.first += cos_amp;
    m.second += sin_amp;
    return *this;
  }

  double eval(double x, int deriv = 0) const {
    const double w = 2.0 * M_PI / period_;
    double acc = 0;
    for (const auto& [k, ab] : modes_) {
      const double kw = k * w, p = kw * x;
      double c = std::cos(p), s = std::sin(p);
      // rotate (a cos + b sin) by deriv quarter-turns with the k w factor
      double a = ab.first, b = ab.second;
      for (int d = 0; d < deriv; ++d) {
        const double na = b * kw, nb = -a * kw;
        a = na;
        b = nb;
      }
      acc += a * c + b * s;
    }
    return acc;
  }
  double operator()(double x) const { return eval(x); }

  double mean() const {
    auto it = modes_.find(0);
    return it == modes_.end() ? 0.0 : it->second.first;
  }

  AngularSeries& operator+=(double c) { return add(0, c, 0.0); }
  AngularSeries& operator+=(const AngularSeries& o) {
    for (const auto& [k, ab] : o.modes_) add(k, ab.first, ab.second);
    return *this;
  }
  AngularSeries& operator*=(double c) {
    for (auto& [k, ab] : modes_) {
      ab.first *= c;
      ab.second *= c;
    }
    return *this;
  }
  friend AngularSeries operator+(AngularSeries a, const AngularSeries& b) { return a += b; }
  friend AngularSeries operator+(AngularSeries a, double c) { return a += c; }
  friend AngularSeries operator*(AngularSeries a, double c) { return a *= c; }

 private:
  double period_;
  std::map<int, std::pair<double, double>> modes_;
};

// Product-form multi-angle Fourier series over (xi, phi_3..phi_n):
// each term is amp * prod_d trig(k_d * 2pi/L_d * angle_d).
struct FourierTerm {
  double amp = 0;
  std::vector<int> k;           // per angle, >= 0
  std::vector<uint8_t> phase;   // 0 = cos, 1 = sin, per angle
};

class MultiFourier {
 public:
  MultiFourier() = default;
  explicit MultiFourier(std::vector<double> periods) : periods_(std::move(periods)) {}

  const std::vector<double>& periods() const { return periods_; }
  bool empty() const { return terms_.empty(); }
  const std::vector<FourierTerm>& terms() const { return terms_; }

  MultiFourier& add_term(FourierTerm t) {
    if (t.k.size() != periods_.size() || t.phase.size() != periods_.size())
      throw SpecError("FourierTerm rank does not match angle count");
    for (size_t d = 0; d < t.k.size(); ++d)
      if (t.k[d] < 0) throw SpecError("Fourier mode index must be >= 0");
    terms_.push_back(std::move(t));
    return *this;
  }
  MultiFourier& add_constant(double c) {
    FourierTerm t;
    t.amp = c;
    t.k.assign(periods_.size(), 0);
    t.phase.assign(periods_.size(), 0);
    return add_term(std::move(t));
  }

  // d1, d2 < 0 mean no derivative in that slot.
  double eval(const std::vector<double>& angles, int d1 = -1, int d2 = -1) const {
    double acc = 0;
    for (const auto& t : terms_) {
      double v = t.amp;
      for (size_t d = 0; d < periods_.size(); ++d) {
        const double kw = t.k[d] * 2.0 * M_PI / periods_[d];
        const double p = kw * angles[d];
        const int nder = (int(d) == d1) + (int(d) == d2);
        double factor = 1.0;
        for (int j = 0; j < nder; ++j) factor *= kw;
        // cos -> -sin -> -cos; sin -> cos -> -sin
        double base;
        if (t.phase[d] == 0) {
          base = nder == 0 ? std::cos(p) : (nder == 1 ? -std::sin(p) : -std::cos(p));
        } else {
          base = nder == 0 ? std::sin(p) : (nder == 1 ? std::cos(p) : -std::sin(p));
        }
        v *= factor * base;
      }
      acc += v;
    }
    return acc;
  }

  double mean() const {  // average over the torus
    double acc = 0;
    for (const auto& t : terms_) {
      bool constant = true;
      for (size_t d = 0; d < periods_.size(); ++d)
        if (t.k[d] != 0 || t.phase[d] != 0) {
          // sin with k=0 is identically zero; cos with k!=0 averages to 0
          if (t.k[d] == 0 && t.phase[d] == 1) constant = false;
          if (t.k[d] != 0) constant = false;
        }
      if (constant) acc += t.amp;
    }
    return acc;
  }

  int max_mode(size_t dim) const {
    int m = 0;
    for (const auto& t : terms_) m = std::max(m, t.k[dim]);
    return m;
  }

  MultiFourier& operator+=(const MultiFourier& o) {
    for (const auto& t : o.terms_) add_term(t);
    return *this;
  }
  MultiFourier& operator*=(double c) {
    for (auto& t : terms_) t.amp *= c;
    return *this;
  }

 private:
  std::vector<double> periods_;
  std::vector<FourierTerm> terms_;
};

// Symmetric (n-2)x(n-2) tensor with MultiFourier components over (xi, phi...).
class TorusTensorSeries {
 public:
  TorusTensorSeries() : m_(0) {}
  TorusTensorSeries(int m, std::vector<double> periods)
      : m_(m), periods_(std::move(periods)) {
    comp_.assign(m_ * (m_ + 1) / 2, MultiFourier(periods_));
  }

  int dim() const { return m_; }
  const std::vector<double>& periods() const { return periods_; }

  MultiFourier& at(int i, int j) { return comp_[idx(i, j)]; }
  const MultiFourier& at(int i, int j) const { return comp_[idx(i, j)]; }

  bool empty() const {
    for (const auto& c : comp_)
      if (!c.empty()) return false;
    return true;
  }

  Mat value(const std::vector<double>& angles, int d1 = -1, int d2 = -1) const {
    Mat out(m_);
    for (int i = 0; i < m_; ++i)
      for (int j = i; j < m_; ++j) {
        const double v = at(i, j).eval(angles, d1, d2);
        out(i, j) = v;
        out(j, i) = v;
      }
    return out;
  }

  double trace(const std::vector<double>& angles) const {
    double t = 0;
    for (int i = 0; i < m_; ++i) t += at(i, i).eval(angles);
    return t;
  }

  double trace_mean() const {
    double t = 0;
    for (int i = 0; i < m_; ++i) t += at(i, i).mean();
    return t;
  }

  int max_mode(size_t dimension) const {
    int m = 0;
    for (const auto& c : comp_) m = std::max(m, c.empty() ? 0 : c.max_mode(dimension));
    return m;
  }

  TorusTensorSeries& add_diag(double c) {  // += c * identity
    for (int i = 0; i < m_; ++i) at(i, i).add_constant(c);
    return *this;
  }
  TorusTensorSeries& operator+=(const TorusTensorSeries& o) {
    for (size_t k = 0; k < comp_.size(); ++k) comp_[k] += o.comp_[k];
    return *this;
  }
  TorusTensorSeries& operator*=(double c) {
    for (auto& comp : comp_) comp *= c;
    return *this;
  }

 private:
  int idx(int i, int j) const {
    if (i > j) std::swap(i, j);
    return i * m_ - i * (i - 1) / 2 + (j - i);
  }
  int m_;
  std::vector<double> periods_;
  std::vector<MultiFourier> comp_;
};

}  // namespace ahm
