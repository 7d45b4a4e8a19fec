#pragma once

#include <cmath>
#include <limits>
#include <ostream>

namespace outerlp {

// Nonnegative extended real [0, +inf] with measure-theoretic conventions:
// 0 * inf = 0 inside sums, and the infimum of an empty feasible set is +inf.
class ExtReal {
 public:
  ExtReal() : v_(0.0) {}
  ExtReal(double v) : v_(v) {}

  static ExtReal inf() { return ExtReal(std::numeric_limits<double>::infinity()); }

  double value() const { return v_; }
  bool is_inf() const { return std::isinf(v_); }
  bool is_finite() const { return std::isfinite(v_); }

  friend ExtReal operator+(ExtReal a, ExtReal b) { return ExtReal(a.v_ + b.v_); }

  friend ExtReal operator*(ExtReal a, ExtReal b) {
    if (a.v_ == 0.0 || b.v_ == 0.0) return ExtReal(0.0);
    return ExtReal(a.v_ * b.v_);
  }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtReal a, ExtReal b) { return a.v_ != b.v_; }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, ExtReal x) {
    if (x.is_inf()) return os << "inf";
    return os << x.v_;
  }

 private:
  double v_;
};

inline bool approx_eq(double a, double b, double rel_tol = 1e-9) {
  if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= rel_tol * scale;
}

inline bool approx_eq(ExtReal a, ExtReal b, double rel_tol = 1e-9) {
  return approx_eq(a.value(), b.value(), rel_tol);
}

}  // namespace outerlp
