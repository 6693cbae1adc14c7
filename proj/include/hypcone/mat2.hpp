#pragma once

#include <cmath>
#include <complex>

namespace hypcone {

using Complex = std::complex<double>;

/// Real 2x2 matrix (a b; c d). Used both for SL(2,R) algebra with explicit
/// signs and, through Isometry, for canonical PSL(2,R) representatives.
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 diag(double x, double y) { return {x, 0.0, 0.0, y}; }
  /// Linear rotation of R^2 by `phi`; acts on the half-plane as a rotation about i.
  static Mat2 rotation(double phi) {
    return {std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi)};
  }

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }

  /// Inverse for determinant +-1 matrices (adjugate divided by det).
  Mat2 inverse() const {
    const double k = 1.0 / det();
    return {d * k, -b * k, -c * k, a * k};
  }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  Mat2 scaled(double s) const { return {a * s, b * s, c * s, d * s}; }

  /// Mobius action z -> (az + b) / (cz + d).
  Complex apply(Complex z) const { return (a * z + b) / (c * z + d); }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline double frobenius_distance(const Mat2& x, const Mat2& y) {
  return std::sqrt((x.a - y.a) * (x.a - y.a) + (x.b - y.b) * (x.b - y.b) +
                   (x.c - y.c) * (x.c - y.c) + (x.d - y.d) * (x.d - y.d));
}

/// Distance to the nearer of +I and -I; the PSL(2,R) identity residual.
inline double distance_to_pm_identity(const Mat2& m) {
  const Mat2 id = Mat2::identity();
  return std::min(frobenius_distance(m, id), frobenius_distance(m, -id));
}

/// Rescale a positive-determinant matrix to determinant 1.
inline Mat2 to_unit_det(const Mat2& m) { return m.scaled(1.0 / std::sqrt(m.det())); }

/// Commutator g h g^-1 h^-1 in SL(2,R); independent of the signs of g and h.
inline Mat2 commutator(const Mat2& g, const Mat2& h) {
  return g * h * g.inverse() * h.inverse();
}

}  // namespace hypcone
