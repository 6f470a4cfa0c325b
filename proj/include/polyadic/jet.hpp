#pragma once

// Truncated Taylor series c_0 + c_1 e + ... + c_K e^K. Products and
// reciprocals truncate at the common order K.

#include <cstddef>
#include <vector>

#include "polyadic/error.hpp"

namespace polyadic {

class Jet {
 public:
  explicit Jet(int order, double value = 0.0) : c_(static_cast<std::size_t>(check(order)) + 1, 0.0) {
    c_[0] = value;
  }

  // The expansion point itself: (at, 1, 0, ...).
  static Jet variable(int order, double at) {
    Jet j(order, at);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
  double& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
  const std::vector<double>& coeffs() const noexcept { return c_; }

  Jet& operator+=(const Jet& o) {
    same_order(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    same_order(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator-(Jet a) { return a *= -1.0; }

  friend Jet operator*(const Jet& f, const Jet& g) {
    f.same_order(g);
    Jet out(f.order());
    for (std::size_t k = 0; k < f.c_.size(); ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i <= k; ++i) sum += f.c_[i] * g.c_[k - i];
      out.c_[k] = sum;
    }
    return out;
  }

  Jet reciprocal() const {
    if (c_[0] == 0.0) throw Error(ErrorKind::DivisionByZeroJet, "reciprocal of a jet with zero constant term");
    Jet out(order());
    out.c_[0] = 1.0 / c_[0];
    for (std::size_t k = 1; k < c_.size(); ++k) {
      double sum = 0.0;
      for (std::size_t i = 1; i <= k; ++i) sum += c_[i] * out.c_[k - i];
      out.c_[k] = -sum * out.c_[0];
    }
    return out;
  }

  friend Jet operator/(const Jet& f, const Jet& g) { return f * g.reciprocal(); }

  // Integer power; negative exponents go through the reciprocal.
  Jet pow(int e) const {
    if (e < 0) return reciprocal().pow(-e);
    Jet result(order(), 1.0);
    Jet base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

 private:
  static int check(int order) {
    if (order < 0) throw Error(ErrorKind::InvalidArgument, "jet order must be non-negative");
    return order;
  }
  void same_order(const Jet& o) const {
    if (o.c_.size() != c_.size()) throw Error(ErrorKind::InvalidArgument, "jet orders differ");
  }

  std::vector<double> c_;
};

}  // namespace polyadic
