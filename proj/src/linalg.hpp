#pragma once

#include <cmath>
#include <vector>

#include "errors.hpp"

namespace ahm {

// Small dense square matrix (metric blocks, dim <= 8). Row-major.
class Mat {
 public:
  Mat() : n_(0) {}
  explicit Mat(int n, double diag = 0.0) : n_(n), a_(n * n, 0.0) {
    for (int i = 0; i < n; ++i) (*this)(i, i) = diag;
  }
  static Mat identity(int n) { return Mat(n, 1.0); }

  int dim() const { return n_; }
  double& operator()(int i, int j) { return a_[i * n_ + j]; }
  double operator()(int i, int j) const { return a_[i * n_ + j]; }

  Mat& operator+=(const Mat& o) {
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Mat& operator*=(double c) {
    for (double& x : a_) x *= c;
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, double c) { return a *= c; }
  friend Mat operator*(double c, Mat a) { return a *= c; }

  Mat mul(const Mat& o) const {
    Mat r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        const double aik = (*this)(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  double trace() const {
    double t = 0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0;
    for (double x : a_) m = std::max(m, std::fabs(x));
    return m;
  }

  double sym_error() const {
    double m = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        m = std::max(m, std::fabs((*this)(i, j) - (*this)(j, i)));
    return m;
  }

  // Gauss-Jordan with partial pivoting.
  Mat inverse() const;

  // Jacobi rotations; matrix must be symmetric.
  std::vector<double> sym_eigenvalues() const;

  double cond_sym() const;

 private:
  int n_;
  std::vector<double> a_;
};

inline Mat Mat::inverse() const {
  const int n = n_;
  Mat a(*this), inv = Mat::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) throw DegenerateGamma("singular matrix in inverse()");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const double d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

inline std::vector<double> Mat::sym_eigenvalues() const {
  const int n = n_;
  Mat a(*this);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30 * (1.0 + a.max_abs() * a.max_abs())) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i);
  return ev;
}

inline double Mat::cond_sym() const {
  auto ev = sym_eigenvalues();
  double lo = 1e300, hi = 0;
  for (double e : ev) {
    lo = std::min(lo, std::fabs(e));
    hi = std::max(hi, std::fabs(e));
  }
  if (lo == 0.0) return 1e300;
  return hi / lo;
}

inline double sqr(double x) { return x * x; }

}  // namespace ahm
