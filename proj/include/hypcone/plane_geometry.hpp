#pragma once

// Hyperbolic plane primitives in the upper half-plane model.
//
// Points are complex numbers with positive imaginary part. Ideal points are
// either a real number or the point at infinity. Every geodesic is stored with
// its endpoints sorted (infinity last), which fixes the Fermi-coordinate
// convention: the base point is the Euclidean-topmost point of the semicircle
// (or x + i for a vertical line), arclength increases toward the larger
// endpoint and positive offsets lie to the left of the direction of travel.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypcone/mat2.hpp"

namespace hypcone {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Default incidence/angle tolerance.
inline constexpr double kGeomEps = 1e-9;

/// Finite point of the upper half-plane.
class HPoint {
 public:
  HPoint() : z_(0.0, 1.0) {}
  /// Throws NotHalfPlanePoint unless Im z > 0.
  explicit HPoint(Complex z);
  HPoint(double x, double y) : HPoint(Complex(x, y)) {}

  Complex z() const { return z_; }
  double x() const { return z_.real(); }
  double y() const { return z_.imag(); }

 private:
  Complex z_;
};

/// Point of the circle at infinity: a real number or infinity.
class BoundaryPoint {
 public:
  static BoundaryPoint infinity() { return BoundaryPoint(true, 0.0); }
  static BoundaryPoint real(double x) { return BoundaryPoint(false, x); }

  bool is_infinite() const { return infinite_; }
  /// Real coordinate; meaningless for infinity.
  double x() const { return x_; }

  /// Total order with infinity as the maximum.
  friend bool operator<(const BoundaryPoint& p, const BoundaryPoint& q);
  friend bool operator==(const BoundaryPoint& p, const BoundaryPoint& q);

  /// Equality up to `eps` (relative to magnitude for large reals).
  bool near(const BoundaryPoint& other, double eps = kGeomEps) const;

 private:
  BoundaryPoint(bool inf, double x) : infinite_(inf), x_(x) {}
  bool infinite_;
  double x_;
};

/// A polygon vertex or other point of the closed disc.
using PlanePoint = std::variant<HPoint, BoundaryPoint>;

bool is_ideal(const PlanePoint& p);

/// Complete geodesic; endpoints stored sorted (lo < hi, infinity last).
class Geodesic {
 public:
  /// Throws CoincidentPoints if the endpoints agree.
  Geodesic(BoundaryPoint p, BoundaryPoint q);

  const BoundaryPoint& lo() const { return lo_; }
  const BoundaryPoint& hi() const { return hi_; }
  bool is_vertical() const { return hi_.is_infinite(); }

  /// Euclidean center and radius of the carrying semicircle (non-vertical only).
  double center() const { return 0.5 * (lo_.x() + hi_.x()); }
  double radius() const { return 0.5 * (hi_.x() - lo_.x()); }

  /// Orientation-preserving isometry taking this line to the imaginary axis,
  /// lo -> 0, hi -> infinity, base point -> i.
  Mat2 normalizer() const;

  /// Euclidean distance from `p` to the carrying circle/line (incidence check).
  double incidence_error(Complex p) const;

 private:
  BoundaryPoint lo_, hi_;
};

Geodesic imaginary_axis();

// --- Mobius action on all kinds of points -----------------------------------

BoundaryPoint apply_boundary(const Mat2& m, const BoundaryPoint& p);
HPoint apply_point(const Mat2& m, const HPoint& p);
PlanePoint apply_plane(const Mat2& m, const PlanePoint& p);
Geodesic apply_geodesic(const Mat2& m, const Geodesic& l);

// --- Metric --------------------------------------------------------------------

/// Hyperbolic distance; cosh d = 1 + |p - q|^2 / (2 Im p Im q).
double dist(const HPoint& p, const HPoint& q);

/// The geodesic through two distinct points (at most one ideal, or two ideal).
Geodesic geodesic_through(const PlanePoint& p, const PlanePoint& q);

/// Unit tangent direction (as a Euclidean complex number in the half-plane
/// picture) at `from` of the geodesic ray toward `to`.
Complex direction_toward(const HPoint& from, const PlanePoint& to);

/// Unsigned angle at b between the geodesic segments b->a and b->c, in [0, pi].
double interior_angle(const PlanePoint& a, const HPoint& b, const PlanePoint& c);

/// Wrap an angle into (-pi, pi].
double wrap_angle(double a);

// --- Fermi coordinates -------------------------------------------------------

struct FermiCoords {
  double arclength;
  double offset;
};

HPoint fermi_point(const Geodesic& l, double arclength, double offset);
FermiCoords fermi_coordinates(const Geodesic& l, const HPoint& p);

double distance_to_geodesic(const Geodesic& l, const HPoint& p);
/// +1 left of the oriented line, -1 right, 0 on it (within eps).
int side_of(const Geodesic& l, const HPoint& p, double eps = kGeomEps);

/// Point where two geodesics cross, if they do.
std::optional<HPoint> crossing_point(const Geodesic& l1, const Geodesic& l2);

/// Common perpendicular of ultraparallel lines; NotUltraparallel otherwise.
Geodesic common_perpendicular(const Geodesic& l1, const Geodesic& l2);

/// Hyperbolic distance between ultraparallel lines.
double line_distance(const Geodesic& l1, const Geodesic& l2);

/// Collar half-width of a closed geodesic with boundary trace t > 2:
/// sinh w = 1 / sinh(acosh(t / 2)).
double collar_width(double trace);
/// Translation length d(t) = 2 acosh(t / 2).
double translation_length_of_trace(double trace);

// --- Model conversions ---------------------------------------------------------

/// Cayley transform to the Poincare disc, z -> (z - i) / (z + i).
Complex to_disk(const PlanePoint& p);
Complex disk_to_halfplane(Complex w);
/// Beltrami-Klein model; geodesics become straight chords.
Complex to_klein(const PlanePoint& p);

// --- Polygons --------------------------------------------------------------------

enum class Orientation { CCW, CW };

std::string to_string(Orientation o);

struct GeodesicPolygon {
  std::vector<PlanePoint> vertices;
};

struct ValidityReport {
  bool nondegenerate = false;
  bool simple = false;
  Orientation orientation = Orientation::CCW;
  std::vector<double> interior_angles;
  double angle_sum = 0.0;
  double area = 0.0;
  std::vector<std::string> reasons;

  bool valid() const { return nondegenerate && simple && area > 0.0; }
};

/// Checks non-degeneracy, simplicity (pairwise side intersection in the Klein
/// model) and orientation, and measures interior angles and area.
ValidityReport polygon_validate(const GeodesicPolygon& polygon, double eps = kGeomEps);

/// Signed Euclidean area of the Klein-model image; positive for CCW.
double klein_signed_area(const GeodesicPolygon& polygon);

/// Whether closed geodesic segments [p1,q1] and [p2,q2] meet (Klein-model test).
bool segments_intersect(const PlanePoint& p1, const PlanePoint& q1, const PlanePoint& p2,
                        const PlanePoint& q2, double eps = kGeomEps);

}  // namespace hypcone
