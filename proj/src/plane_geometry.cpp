#include "hypcone/plane_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hypcone/errors.hpp"

namespace hypcone {

namespace {

const Complex kI(0.0, 1.0);

// Angles are resolved to ~1e-16; thin polygons legitimately have corners far
// below the incidence tolerance.
constexpr double kFoldTol = 1e-13;

double positive_mod(double a, double m) {
  double r = std::fmod(a, m);
  if (r < 0.0) r += m;
  return r;
}

}  // namespace

HPoint::HPoint(Complex z) : z_(z) {
  if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    std::ostringstream os;
    os << "point " << z << " is not in the upper half-plane";
    throw Error(ErrorCode::NotHalfPlanePoint, os.str());
  }
}

bool operator<(const BoundaryPoint& p, const BoundaryPoint& q) {
  if (p.infinite_) return false;
  if (q.infinite_) return true;
  return p.x_ < q.x_;
}

bool operator==(const BoundaryPoint& p, const BoundaryPoint& q) {
  if (p.infinite_ || q.infinite_) return p.infinite_ == q.infinite_;
  return p.x_ == q.x_;
}

bool BoundaryPoint::near(const BoundaryPoint& other, double eps) const {
  return std::abs(to_disk(*this) - to_disk(other)) <= eps;
}

bool is_ideal(const PlanePoint& p) { return std::holds_alternative<BoundaryPoint>(p); }

Geodesic::Geodesic(BoundaryPoint p, BoundaryPoint q) : lo_(p), hi_(q) {
  if (p == q) throw Error(ErrorCode::CoincidentPoints, "geodesic endpoints coincide");
  if (q < p) std::swap(lo_, hi_);
}

Mat2 Geodesic::normalizer() const {
  if (hi_.is_infinite()) return {1.0, -lo_.x(), 0.0, 1.0};
  const double s = 1.0 / std::sqrt(hi_.x() - lo_.x());
  return Mat2{1.0, -lo_.x(), -1.0, hi_.x()}.scaled(s);
}

double Geodesic::incidence_error(Complex p) const {
  if (is_vertical()) return std::abs(p.real() - lo_.x());
  return std::abs(std::abs(p - center()) - radius());
}

Geodesic imaginary_axis() { return Geodesic(BoundaryPoint::real(0.0), BoundaryPoint::infinity()); }

BoundaryPoint apply_boundary(const Mat2& m, const BoundaryPoint& p) {
  if (p.is_infinite()) {
    if (m.c == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::real(m.a / m.c);
  }
  const double denom = m.c * p.x() + m.d;
  if (denom == 0.0) return BoundaryPoint::infinity();
  return BoundaryPoint::real((m.a * p.x() + m.b) / denom);
}

HPoint apply_point(const Mat2& m, const HPoint& p) { return HPoint(m.apply(p.z())); }

PlanePoint apply_plane(const Mat2& m, const PlanePoint& p) {
  if (const auto* h = std::get_if<HPoint>(&p)) return apply_point(m, *h);
  return apply_boundary(m, std::get<BoundaryPoint>(p));
}

Geodesic apply_geodesic(const Mat2& m, const Geodesic& l) {
  return Geodesic(apply_boundary(m, l.lo()), apply_boundary(m, l.hi()));
}

double dist(const HPoint& p, const HPoint& q) {
  const double half = std::abs(p.z() - q.z()) / (2.0 * std::sqrt(p.y() * q.y()));
  return 2.0 * std::asinh(half);
}

Geodesic geodesic_through(const PlanePoint& p, const PlanePoint& q) {
  const bool pi = is_ideal(p), qi = is_ideal(q);
  if (pi && qi) {
    return Geodesic(std::get<BoundaryPoint>(p), std::get<BoundaryPoint>(q));
  }
  if (pi || qi) {
    const HPoint& f = std::get<HPoint>(pi ? q : p);
    const BoundaryPoint& b = std::get<BoundaryPoint>(pi ? p : q);
    if (b.is_infinite()) return Geodesic(BoundaryPoint::real(f.x()), BoundaryPoint::infinity());
    const double x0 = b.x();
    const double dx = f.x() - x0;
    if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(f.z()))) {
      return Geodesic(BoundaryPoint::real(x0), BoundaryPoint::infinity());
    }
    const double c = (std::norm(f.z()) - x0 * x0) / (2.0 * dx);
    return Geodesic(BoundaryPoint::real(x0), BoundaryPoint::real(2.0 * c - x0));
  }
  const HPoint& a = std::get<HPoint>(p);
  const HPoint& b = std::get<HPoint>(q);
  if (std::abs(a.z() - b.z()) == 0.0) {
    throw Error(ErrorCode::CoincidentPoints, "geodesic through a single point is undefined");
  }
  const double dx = a.x() - b.x();
  const double scale = std::max({1.0, std::abs(a.z()), std::abs(b.z())});
  if (std::abs(dx) <= 1e-15 * scale) {
    return Geodesic(BoundaryPoint::real(0.5 * (a.x() + b.x())), BoundaryPoint::infinity());
  }
  const double c = (std::norm(a.z()) - std::norm(b.z())) / (2.0 * dx);
  const double r = std::abs(a.z() - c);
  return Geodesic(BoundaryPoint::real(c - r), BoundaryPoint::real(c + r));
}

Complex direction_toward(const HPoint& from, const PlanePoint& to) {
  // Move `from` to i by a real affine map (which preserves directions), then
  // Cayley-transform to the disc, where geodesics through 0 are diameters.
  Complex w;
  if (const auto* h = std::get_if<HPoint>(&to)) {
    const Complex t = (h->z() - from.x()) / from.y();
    w = (t - kI) / (t + kI);
  } else {
    const auto& b = std::get<BoundaryPoint>(to);
    if (b.is_infinite()) {
      w = 1.0;
    } else {
      const double t = (b.x() - from.x()) / from.y();
      w = (t - kI) / (t + kI);
    }
  }
  const double len = std::abs(w);
  if (!(len > 0.0)) throw Error(ErrorCode::DegenerateVertex, "direction toward the same point");
  // The Cayley transform rotates tangent vectors at i by -pi/2.
  return kI * w / len;
}

double wrap_angle(double a) {
  double r = positive_mod(a + kPi, kTwoPi) - kPi;
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double interior_angle(const PlanePoint& a, const HPoint& b, const PlanePoint& c) {
  auto close_to_b = [&](const PlanePoint& p) {
    const auto* h = std::get_if<HPoint>(&p);
    return h && std::abs(h->z() - b.z()) <= kGeomEps * std::max(1.0, std::abs(b.z()));
  };
  if (close_to_b(a) || close_to_b(c)) {
    throw Error(ErrorCode::DegenerateVertex, "neighbouring vertex coincides with the apex");
  }
  const Complex da = direction_toward(b, a);
  const Complex dc = direction_toward(b, c);
  return std::abs(wrap_angle(std::arg(da) - std::arg(dc)));
}

HPoint fermi_point(const Geodesic& l, double arclength, double offset) {
  const Complex local = std::exp(arclength) * Complex(-std::tanh(offset), 1.0 / std::cosh(offset));
  return HPoint(l.normalizer().inverse().apply(local));
}

FermiCoords fermi_coordinates(const Geodesic& l, const HPoint& p) {
  const Complex w = l.normalizer().apply(p.z());
  return {std::log(std::abs(w)), std::asinh(-w.real() / w.imag())};
}

double distance_to_geodesic(const Geodesic& l, const HPoint& p) {
  return std::abs(fermi_coordinates(l, p).offset);
}

int side_of(const Geodesic& l, const HPoint& p, double eps) {
  const double h = fermi_coordinates(l, p).offset;
  if (h > eps) return 1;
  if (h < -eps) return -1;
  return 0;
}

std::optional<HPoint> crossing_point(const Geodesic& l1, const Geodesic& l2) {
  const Mat2 n = l1.normalizer();
  const Geodesic m = apply_geodesic(n, l2);
  if (m.hi().is_infinite()) return std::nullopt;
  const double u = m.lo().x(), v = m.hi().x();
  if (!(u < 0.0 && v > 0.0)) return std::nullopt;
  return HPoint(n.inverse().apply(Complex(0.0, std::sqrt(-u * v))));
}

Geodesic common_perpendicular(const Geodesic& l1, const Geodesic& l2) {
  const Mat2 n = l1.normalizer();
  const Geodesic m = apply_geodesic(n, l2);
  if (m.hi().is_infinite()) {
    throw Error(ErrorCode::NotUltraparallel, "lines share an endpoint at infinity");
  }
  const double u = m.lo().x(), v = m.hi().x();
  const double scale = std::max({1.0, std::abs(u), std::abs(v)});
  if (std::abs(u) <= 1e-14 * scale || std::abs(v) <= 1e-14 * scale) {
    throw Error(ErrorCode::NotUltraparallel, "lines are asymptotic");
  }
  if (u < 0.0 && v > 0.0) throw Error(ErrorCode::NotUltraparallel, "lines cross");
  const double r = std::sqrt(u * v);
  const Mat2 back = n.inverse();
  return Geodesic(apply_boundary(back, BoundaryPoint::real(-r)),
                  apply_boundary(back, BoundaryPoint::real(r)));
}

double line_distance(const Geodesic& l1, const Geodesic& l2) {
  const Mat2 n = l1.normalizer();
  const Geodesic m = apply_geodesic(n, l2);
  if (m.hi().is_infinite()) throw Error(ErrorCode::NotUltraparallel, "lines are asymptotic");
  const double u = m.lo().x(), v = m.hi().x();
  if (u * v <= 0.0) throw Error(ErrorCode::NotUltraparallel, "lines cross or are asymptotic");
  // The perpendicular is |z| = sqrt(uv); its feet are i*sqrt(uv) and the
  // intersection with the circle through u and v.
  const double r2 = u * v;
  const double mid = 0.5 * (u + v);
  const double fx = r2 / mid;
  const double fy = std::sqrt(std::max(0.0, r2 - fx * fx));
  return dist(HPoint(0.0, std::sqrt(r2)), HPoint(fx, fy));
}

double translation_length_of_trace(double trace) {
  if (!(trace > 2.0)) throw Error(ErrorCode::TraceNotHyperbolic, "trace must exceed 2");
  return 2.0 * std::acosh(trace / 2.0);
}

double collar_width(double trace) {
  if (!(trace > 2.0)) throw Error(ErrorCode::TraceNotHyperbolic, "collar width needs trace > 2");
  // sinh(acosh(t/2)) = sqrt(t^2/4 - 1), written to stay accurate near t = 2.
  const double half = 0.5 * trace;
  const double sh = std::sqrt((half - 1.0) * (half + 1.0));
  return std::asinh(1.0 / sh);
}

Complex to_disk(const PlanePoint& p) {
  if (const auto* h = std::get_if<HPoint>(&p)) return (h->z() - kI) / (h->z() + kI);
  const auto& b = std::get<BoundaryPoint>(p);
  if (b.is_infinite()) return 1.0;
  return (Complex(b.x()) - kI) / (Complex(b.x()) + kI);
}

Complex disk_to_halfplane(Complex w) { return kI * (1.0 + w) / (1.0 - w); }

Complex to_klein(const PlanePoint& p) {
  const Complex w = to_disk(p);
  if (is_ideal(p)) return w / std::abs(w);
  return 2.0 * w / (1.0 + std::norm(w));
}

std::string to_string(Orientation o) { return o == Orientation::CCW ? "CCW" : "CW"; }

double klein_signed_area(const GeodesicPolygon& polygon) {
  const auto& v = polygon.vertices;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex p = to_klein(v[i]);
    const Complex q = to_klein(v[(i + 1) % v.size()]);
    s += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * s;
}

namespace {

// Position of a point relative to the imaginary axis: signed hyperbolic
// offset (positive for Re z > 0) and log of the modulus, which is the
// arclength of its projection. Ideal points get infinite values.
struct AxisCoords {
  double offset;
  double height;
};

AxisCoords axis_coords(const Mat2& n, const PlanePoint& p) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (const auto* h = std::get_if<HPoint>(&p)) {
    const Complex z = n.apply(h->z());
    return {std::asinh(z.real() / z.imag()), std::log(std::abs(z))};
  }
  const BoundaryPoint b = apply_boundary(n, std::get<BoundaryPoint>(p));
  if (b.is_infinite()) return {0.0, inf};
  if (b.x() == 0.0) return {0.0, -inf};
  return {b.x() > 0.0 ? inf : -inf, std::log(std::abs(b.x()))};
}

}  // namespace

bool segments_intersect(const PlanePoint& p1, const PlanePoint& q1, const PlanePoint& p2,
                        const PlanePoint& q2, double eps) {
  const Geodesic line = geodesic_through(p1, q1);
  const Mat2 n = line.normalizer();
  const AxisCoords a = axis_coords(n, p1), b = axis_coords(n, q1);
  const AxisCoords c = axis_coords(n, p2), d = axis_coords(n, q2);
  const double lo = std::min(a.height, b.height) - eps, hi = std::max(a.height, b.height) + eps;
  auto on_line = [eps](const AxisCoords& x) { return std::abs(x.offset) <= eps; };
  auto within = [&](double h) { return h >= lo && h <= hi; };
  if ((c.offset > eps && d.offset > eps) || (c.offset < -eps && d.offset < -eps)) return false;
  if (on_line(c) && on_line(d)) {
    // Collinear: compare the arclength intervals.
    return std::max(c.height, d.height) >= lo && std::min(c.height, d.height) <= hi;
  }
  if (on_line(c)) return within(c.height);
  if (on_line(d)) return within(d.height);
  // Strictly opposite sides: [c, d] crosses the axis exactly once.
  const Geodesic other = geodesic_through(p2, q2);
  const Geodesic moved = apply_geodesic(n, other);
  if (moved.is_vertical()) return false;  // parallel to the axis cannot cross it
  const double x0 = moved.center(), r = moved.radius();
  const double y2 = (r - x0) * (r + x0);
  if (!(y2 > 0.0)) return false;
  return within(0.5 * std::log(y2));
}

ValidityReport polygon_validate(const GeodesicPolygon& polygon, double eps) {
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  if (n < 3) throw Error(ErrorCode::TooFewVertices, "a polygon needs at least 3 vertices");

  ValidityReport report;
  report.nondegenerate = true;
  report.simple = true;

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const auto* a = std::get_if<HPoint>(&v[i]);
    const auto* b = std::get_if<HPoint>(&v[j]);
    bool same = false;
    if (a && b) {
      same = dist(*a, *b) <= eps;
    } else if (!a && !b) {
      same = std::get<BoundaryPoint>(v[i]).near(std::get<BoundaryPoint>(v[j]), eps);
    }
    if (same) {
      report.nondegenerate = false;
      report.reasons.push_back("vertices " + std::to_string(i) + " and " + std::to_string(j) +
                               " coincide");
    }
  }
  if (!report.nondegenerate) {
    report.simple = false;
    report.interior_angles.assign(n, 0.0);
    report.angle_sum = 0.0;
    report.area = 0.0;
    return report;
  }

  // Angles measured as if counterclockwise; the clockwise reading of a
  // finite angle a is 2 pi - a.
  std::vector<double> ccw(n, 0.0);
  double sum_ccw = 0.0;
  int finite = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto* h = std::get_if<HPoint>(&v[i]);
    if (!h) continue;  // ideal vertex: angle 0
    ++finite;
    const Complex dn = direction_toward(*h, v[(i + 1) % n]);
    const Complex dp = direction_toward(*h, v[(i + n - 1) % n]);
    ccw[i] = positive_mod(std::arg(dp) - std::arg(dn), kTwoPi);
    sum_ccw += ccw[i];
  }
  const double flat = static_cast<double>(n - 2) * kPi;
  const double sum_cw = kTwoPi * finite - sum_ccw;
  if (sum_ccw < flat) {
    report.orientation = Orientation::CCW;
  } else if (sum_cw < flat) {
    report.orientation = Orientation::CW;
  } else {
    report.orientation = klein_signed_area(polygon) >= 0.0 ? Orientation::CCW : Orientation::CW;
  }

  report.interior_angles.resize(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_ideal(v[i])) continue;
    const double angle = report.orientation == Orientation::CCW ? ccw[i] : kTwoPi - ccw[i];
    if (angle <= kFoldTol || angle >= kTwoPi - kFoldTol) {
      report.nondegenerate = false;
      report.simple = false;
      report.reasons.push_back("sides fold back at vertex " + std::to_string(i));
    }
    report.interior_angles[i] = angle;
    report.angle_sum += angle;
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through vertex 0
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n], eps)) {
        report.simple = false;
        report.reasons.push_back("sides " + std::to_string(i) + " and " + std::to_string(j) +
                                 " intersect");
      }
    }
  }

  report.area = flat - report.angle_sum;
  if (report.simple && !(report.area > 0.0)) {
    report.reasons.push_back("non-positive area");
  }
  return report;
}

}  // namespace hypcone
