#pragma once

// Truncated Taylor arithmetic. A jet of order K holds c_0..c_K of
// f(center + h) = sum c_i h^i; every operation is exact through the smallest
// order among its operands.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "kgaim/errors.hpp"

namespace kgaim {

template <typename T = double>
class SeriesJet {
 public:
  SeriesJet() = default;

  SeriesJet(T center, std::vector<T> coeffs) : center_(center), c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(T(0));
  }

  static SeriesJet constant(T center, T value, int order) {
    std::vector<T> c(static_cast<std::size_t>(order) + 1, T(0));
    c[0] = value;
    return SeriesJet(center, std::move(c));
  }

  /// The identity function h -> center + h.
  static SeriesJet variable(T center, int order) {
    std::vector<T> c(static_cast<std::size_t>(order) + 1, T(0));
    c[0] = center;
    if (order >= 1) c[1] = T(1);
    return SeriesJet(center, std::move(c));
  }

  T center() const { return center_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  T value() const { return c_[0]; }
  T coeff(int i) const { return i <= order() ? c_[static_cast<std::size_t>(i)] : T(0); }
  const std::vector<T>& coeffs() const { return c_; }

  /// k-th derivative at the center: k! c_k.
  T derivative_value(int k) const {
    T f = T(1);
    for (int i = 2; i <= k; ++i) f *= T(i);
    return f * coeff(k);
  }

  SeriesJet derivative() const {
    if (order() < 1)
      fail(ErrorCode::JetOrderExhausted, "cannot differentiate an order-0 jet");
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = T(i + 1) * c_[i + 1];
    return SeriesJet(center_, std::move(d));
  }

  SeriesJet truncated(int order) const {
    std::vector<T> c(c_.begin(), c_.begin() + std::min<std::size_t>(c_.size(), order + 1));
    return SeriesJet(center_, std::move(c));
  }

  SeriesJet& operator+=(const SeriesJet& o) { return combine(o, T(1)); }
  SeriesJet& operator-=(const SeriesJet& o) { return combine(o, T(-1)); }

  SeriesJet& operator*=(const SeriesJet& o) {
    const int k = std::min(order(), o.order());
    std::vector<T> r(static_cast<std::size_t>(k) + 1, T(0));
    for (int i = 0; i <= k; ++i)
      for (int j = 0; i + j <= k; ++j) r[i + j] += c_[i] * o.c_[j];
    c_ = std::move(r);
    return *this;
  }

  SeriesJet& operator/=(const SeriesJet& o) { return *this *= o.reciprocal(); }

  SeriesJet& operator+=(T s) { c_[0] += s; return *this; }
  SeriesJet& operator-=(T s) { c_[0] -= s; return *this; }
  SeriesJet& operator*=(T s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  SeriesJet& operator/=(T s) {
    for (auto& x : c_) x /= s;
    return *this;
  }

  SeriesJet operator-() const {
    SeriesJet r = *this;
    r *= T(-1);
    return r;
  }

  SeriesJet reciprocal() const {
    if (c_[0] == T(0))
      fail(ErrorCode::InvalidParameter, "reciprocal of a jet with zero value");
    const int k = order();
    std::vector<T> r(c_.size(), T(0));
    r[0] = T(1) / c_[0];
    for (int n = 1; n <= k; ++n) {
      T s = T(0);
      for (int j = 1; j <= n; ++j) s += c_[j] * r[n - j];
      r[n] = -s / c_[0];
    }
    return SeriesJet(center_, std::move(r));
  }

  SeriesJet exp() const {
    const int k = order();
    std::vector<T> r(c_.size(), T(0));
    r[0] = std::exp(c_[0]);
    // r' = f' r
    for (int n = 1; n <= k; ++n) {
      T s = T(0);
      for (int j = 1; j <= n; ++j) s += T(j) * c_[j] * r[n - j];
      r[n] = s / T(n);
    }
    return SeriesJet(center_, std::move(r));
  }

  SeriesJet log() const {
    if (!(c_[0] > T(0)))
      fail(ErrorCode::InvalidParameter, "log of a jet with nonpositive value");
    const int k = order();
    std::vector<T> r(c_.size(), T(0));
    r[0] = std::log(c_[0]);
    // f r' = f'
    for (int n = 1; n <= k; ++n) {
      T s = T(n) * c_[n];
      for (int j = 1; j < n; ++j) s -= T(j) * r[j] * c_[n - j];
      r[n] = s / (T(n) * c_[0]);
    }
    return SeriesJet(center_, std::move(r));
  }

  /// f^p for a jet with positive value.
  SeriesJet pow(T p) const { return (log() * p).exp(); }

  friend SeriesJet operator+(SeriesJet a, const SeriesJet& b) { return a += b; }
  friend SeriesJet operator-(SeriesJet a, const SeriesJet& b) { return a -= b; }
  friend SeriesJet operator*(SeriesJet a, const SeriesJet& b) { return a *= b; }
  friend SeriesJet operator/(SeriesJet a, const SeriesJet& b) { return a /= b; }
  friend SeriesJet operator+(SeriesJet a, T s) { return a += s; }
  friend SeriesJet operator+(T s, SeriesJet a) { return a += s; }
  friend SeriesJet operator-(SeriesJet a, T s) { return a -= s; }
  friend SeriesJet operator-(T s, SeriesJet a) { return (-a) += s; }
  friend SeriesJet operator*(SeriesJet a, T s) { return a *= s; }
  friend SeriesJet operator*(T s, SeriesJet a) { return a *= s; }
  friend SeriesJet operator/(SeriesJet a, T s) { return a /= s; }
  friend SeriesJet operator/(T s, const SeriesJet& a) { return a.reciprocal() * s; }

 private:
  SeriesJet& combine(const SeriesJet& o, T sign) {
    const int k = std::min(order(), o.order());
    c_.resize(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) c_[i] += sign * o.c_[i];
    return *this;
  }

  T center_ = T(0);
  std::vector<T> c_{T(0)};
};

using Jet = SeriesJet<double>;

}  // namespace kgaim
