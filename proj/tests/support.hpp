#pragma once

// Random generators shared by the property tests.

#include <cmath>
#include <random>

#include <vector>

#include "hypcone/isometries.hpp"

namespace testsupport {

using hypcone::Complex;
using hypcone::HPoint;
using hypcone::Isometry;
using hypcone::Mat2;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// K A K decomposition with bounded stretch.
inline Isometry random_isometry(std::mt19937_64& rng, double max_log_stretch = 2.0) {
  const double t = uniform(rng, -max_log_stretch, max_log_stretch);
  const Mat2 k1 = Mat2::rotation(uniform(rng, 0.0, hypcone::kPi));
  const Mat2 k2 = Mat2::rotation(uniform(rng, 0.0, hypcone::kPi));
  return Isometry(k1 * Mat2::diag(std::exp(t), std::exp(-t)) * k2);
}

/// Signed SL(2,R) matrix, no canonicalization.
inline Mat2 random_sl2(std::mt19937_64& rng, double max_log_stretch = 2.0) {
  Mat2 m = random_isometry(rng, max_log_stretch).matrix();
  if (uniform(rng, 0.0, 1.0) < 0.5) m = -m;
  return m;
}

inline HPoint random_point(std::mt19937_64& rng) {
  return HPoint(uniform(rng, -3.0, 3.0), std::exp(uniform(rng, -2.0, 2.0)));
}

/// Hyperbolic area of a polygon with finite vertices by Green's theorem:
/// dx dy / y^2 integrates to the contour integral of dx / y, which along a
/// semicircle of centre c is minus the change of arg(z - c).
inline double green_area(const std::vector<HPoint>& v) {
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex a = v[i].z(), b = v[(i + 1) % v.size()].z();
    if (std::abs(a.real() - b.real()) < 1e-14 * (1.0 + std::abs(a.real()))) continue;
    const double c = (std::norm(a) - std::norm(b)) / (2.0 * (a.real() - b.real()));
    total -= std::arg(b - c) - std::arg(a - c);
  }
  return std::abs(total);
}

/// Points along the geodesic segment from a to b in the disc model.
inline std::vector<Complex> sample_side(const HPoint& a, const HPoint& b, int n) {
  // Unit-speed parametrization via the carrier of [a, b] from the imaginary axis.
  const double d = hypcone::dist(a, b);
  const Isometry m = hypcone::segment_carrier(HPoint(0, 1), HPoint(0, std::exp(d)), a, b);
  std::vector<Complex> out;
  for (int k = 0; k <= n; ++k) {
    out.push_back(hypcone::to_disk(m.apply(HPoint(0, std::exp(d * k / n)))));
  }
  return out;
}

inline bool polylines_cross(const std::vector<Complex>& p, const std::vector<Complex>& q) {
  auto cross = [](Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); };
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    for (std::size_t j = 0; j + 1 < q.size(); ++j) {
      const Complex a = p[i], b = p[i + 1], c = q[j], d = q[j + 1];
      const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
      const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
      if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
    }
  }
  return false;
}

/// Brute-force simplicity oracle: non-adjacent sides, sampled as disc-model
/// polylines, never cross.
inline bool sampled_simple(const std::vector<HPoint>& v, int n = 200) {
  std::vector<std::vector<Complex>> sides;
  for (std::size_t i = 0; i < v.size(); ++i) sides.push_back(sample_side(v[i], v[(i + 1) % v.size()], n));
  for (std::size_t i = 0; i < sides.size(); ++i) {
    for (std::size_t j = i + 2; j < sides.size(); ++j) {
      if (i == 0 && j + 1 == sides.size()) continue;
      if (polylines_cross(sides[i], sides[j])) return false;
    }
  }
  return true;
}

}  // namespace testsupport
