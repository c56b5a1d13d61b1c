#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace sidext {

// Truncated Taylor expansion c[0] + c[1] h + ... + c[K] h^K about a point.
// c[j] = f^(j)(x) / j!. Arithmetic is Taylor-mode automatic differentiation.
template <class T>
class Jet {
 public:
  explicit Jet(std::size_t order = 0, T value = T(0)) : c_(order + 1, T(0)) { c_[0] = value; }

  static Jet variable(std::size_t order, T x) {
    Jet j(order, x);
    if (order >= 1) j.c_[1] = T(1);
    return j;
  }

  std::size_t order() const { return c_.size() - 1; }
  T& operator[](std::size_t k) { return c_[k]; }
  const T& operator[](std::size_t k) const { return c_[k]; }

  /// k-th derivative value.
  T derivative(std::size_t k) const {
    T f(1);
    for (std::size_t i = 2; i <= k; ++i) f *= T(static_cast<double>(i));
    return c_[k] * f;
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(T s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, T s) { return a *= s; }
  friend Jet operator*(T s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, T s) {
    a.c_[0] += s;
    return a;
  }
  friend Jet operator-(T s, const Jet& a) {
    Jet r = a * T(-1);
    r.c_[0] += s;
    return r;
  }
  friend Jet operator-(Jet a, T s) {
    a.c_[0] -= s;
    return a;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const std::size_t K = a.order();
    Jet r(K);
    for (std::size_t i = 0; i <= K; ++i) {
      if (a.c_[i] == T(0)) continue;
      for (std::size_t j = 0; i + j <= K; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  friend Jet reciprocal(const Jet& a) {
    const std::size_t K = a.order();
    Jet r(K);
    r.c_[0] = T(1) / a.c_[0];
    for (std::size_t k = 1; k <= K; ++k) {
      T s(0);
      for (std::size_t j = 1; j <= k; ++j) s += a.c_[j] * r.c_[k - j];
      r.c_[k] = -s * r.c_[0];
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  friend Jet exp(const Jet& a) {
    using std::exp;
    const std::size_t K = a.order();
    Jet r(K);
    r.c_[0] = exp(a.c_[0]);
    // r' = a' r
    for (std::size_t k = 1; k <= K; ++k) {
      T s(0);
      for (std::size_t j = 1; j <= k; ++j) s += T(static_cast<double>(j)) * a.c_[j] * r.c_[k - j];
      r.c_[k] = s / T(static_cast<double>(k));
    }
    return r;
  }

  friend void sincos(const Jet& a, Jet& s, Jet& c) {
    using std::cos;
    using std::sin;
    const std::size_t K = a.order();
    s = Jet(K);
    c = Jet(K);
    s.c_[0] = sin(a.c_[0]);
    c.c_[0] = cos(a.c_[0]);
    for (std::size_t k = 1; k <= K; ++k) {
      T ss(0), cc(0);
      for (std::size_t j = 1; j <= k; ++j) {
        T w = T(static_cast<double>(j)) * a.c_[j];
        ss += w * c.c_[k - j];
        cc += w * s.c_[k - j];
      }
      s.c_[k] = ss / T(static_cast<double>(k));
      c.c_[k] = -cc / T(static_cast<double>(k));
    }
  }
  friend Jet sin(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return s;
  }
  friend Jet cos(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return c;
  }

  friend Jet pow(const Jet& a, int n) {
    Jet r(a.order(), T(1));
    for (int i = 0; i < n; ++i) r = r * a;
    return r;
  }

 private:
  std::vector<T> c_;
};

}  // namespace sidext
