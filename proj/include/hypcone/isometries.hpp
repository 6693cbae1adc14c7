#pragma once

// Orientation-preserving isometries of the upper half-plane, PSL(2,R).

#include <optional>
#include <string>

#include "hypcone/mat2.hpp"
#include "hypcone/plane_geometry.hpp"

namespace hypcone {

/// Trace tolerance separating elliptic / parabolic / hyperbolic.
inline constexpr double kClassifyTol = 1e-9;

/// Canonical PSL(2,R) representative: Tr > 0; for trace ~0, c > 0; then b > 0.
Mat2 canonical_sign(const Mat2& m);

class Isometry {
 public:
  Isometry() = default;
  /// Rescales to determinant 1 and canonicalizes the sign.
  /// Throws OrientationReversing for det <= 0.
  explicit Isometry(const Mat2& m);
  Isometry(double a, double b, double c, double d) : Isometry(Mat2{a, b, c, d}) {}

  const Mat2& matrix() const { return m_; }
  double trace() const { return m_.trace(); }
  double det() const { return m_.det(); }

  Isometry inverse() const { return Isometry(m_.inverse()); }
  friend Isometry operator*(const Isometry& x, const Isometry& y) {
    return Isometry(x.m_ * y.m_);
  }

  Complex apply(Complex z) const { return m_.apply(z); }
  HPoint apply(const HPoint& p) const { return apply_point(m_, p); }
  BoundaryPoint apply(const BoundaryPoint& p) const { return apply_boundary(m_, p); }
  PlanePoint apply(const PlanePoint& p) const { return apply_plane(m_, p); }
  Geodesic apply(const Geodesic& l) const { return apply_geodesic(m_, l); }

 private:
  Mat2 m_ = Mat2::identity();
};

/// Frobenius distance between canonical representatives.
double distance(const Isometry& x, const Isometry& y);
bool is_identity(const Isometry& x, double tol = 1e-8);

enum class IsoLabel { IDENTITY, ELLIPTIC, PARABOLIC, HYPERBOLIC };

std::string to_string(IsoLabel label);

struct IsoClass {
  IsoLabel label = IsoLabel::IDENTITY;
  /// Elliptic rotation angle in (0, 2pi). A linear rotation R(phi) with
  /// phi in (0, pi) has angle 2 phi; as a map of the half-plane it turns
  /// clockwise about its center.
  double angle = 0.0;
  /// Hyperbolic translation length 2 acosh(|Tr| / 2).
  double length = 0.0;
  /// Parabolic direction: +1 when the lifted circle map moves points forward.
  int parabolic_sign = 0;
  /// | |Tr| - 2 | below the classification tolerance.
  bool near_parabolic_ambiguous = false;
};

IsoClass classify(const Isometry& a, double tau = kClassifyTol);

struct FixedData {
  IsoLabel label = IsoLabel::IDENTITY;
  std::optional<Geodesic> axis;             // hyperbolic, oriented repelling -> attracting
  std::optional<BoundaryPoint> attracting;  // hyperbolic
  std::optional<BoundaryPoint> repelling;   // hyperbolic
  std::optional<HPoint> center;             // elliptic
  std::optional<BoundaryPoint> fixed;       // parabolic
};

FixedData fixed_data(const Isometry& a, double tau = kClassifyTol);

/// The orientation-preserving isometry with p1 -> p2 and q1 -> q2.
Isometry segment_carrier(const HPoint& p1, const HPoint& q1, const HPoint& p2, const HPoint& q2,
                         double tol = kGeomEps);

/// Anti-holomorphic reflection in a geodesic, z -> M conj(z) with det M = -1.
Mat2 reflection_matrix(const Geodesic& l);
Complex reflect(const Geodesic& l, Complex z);
HPoint reflect(const Geodesic& l, const HPoint& p);
BoundaryPoint reflect(const Geodesic& l, const BoundaryPoint& p);
Geodesic reflect(const Geodesic& l, const Geodesic& m);

/// reflect(l2) after reflect(l1).
Isometry compose_reflections(const Geodesic& l1, const Geodesic& l2);

Isometry commutator(const Isometry& g, const Isometry& h);
Isometry conjugate(const Isometry& a, const Isometry& g);

/// Hyperbolic translation by `length` along l, toward l.hi().
Isometry translation_along(const Geodesic& l, double length);
/// Elliptic with center c and rotation angle `angle` in the classify convention.
Isometry rotation_about(const HPoint& c, double angle);

}  // namespace hypcone
