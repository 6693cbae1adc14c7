#include "hypcone/isometries.hpp"

#include <algorithm>
#include <cmath>

#include "hypcone/errors.hpp"

namespace hypcone {

namespace {

constexpr double kSignTol = 1e-12;

// Isometry taking the oriented segment p -> q onto i -> e^d i.
Mat2 segment_normalizer(const HPoint& p, const HPoint& q) {
  const Geodesic l = geodesic_through(p, q);
  const Mat2 n = l.normalizer();
  const double sp = std::log(std::abs(n.apply(p.z())));
  const double sq = std::log(std::abs(n.apply(q.z())));
  Mat2 f = Mat2::diag(std::exp(-0.5 * sp), std::exp(0.5 * sp)) * n;
  if (sq < sp) f = Mat2{0.0, -1.0, 1.0, 0.0} * f;
  return f;
}

}  // namespace

Mat2 canonical_sign(const Mat2& m) {
  const double tr = m.trace();
  bool flip;
  if (std::abs(tr) >= kSignTol) {
    flip = tr < 0.0;
  } else if (std::abs(m.c) >= kSignTol) {
    flip = m.c < 0.0;
  } else {
    flip = m.b < 0.0;
  }
  return flip ? -m : m;
}

Isometry::Isometry(const Mat2& m) {
  const double det = m.det();
  if (!(det > 0.0)) throw Error(ErrorCode::OrientationReversing, "matrix determinant is not positive");
  m_ = canonical_sign(to_unit_det(m));
}

double distance(const Isometry& x, const Isometry& y) {
  return frobenius_distance(x.matrix(), y.matrix());
}

bool is_identity(const Isometry& x, double tol) {
  return distance_to_pm_identity(x.matrix()) < tol;
}

std::string to_string(IsoLabel label) {
  switch (label) {
    case IsoLabel::IDENTITY: return "IDENTITY";
    case IsoLabel::ELLIPTIC: return "ELLIPTIC";
    case IsoLabel::PARABOLIC: return "PARABOLIC";
    case IsoLabel::HYPERBOLIC: return "HYPERBOLIC";
  }
  return "UNKNOWN";
}

IsoClass classify(const Isometry& a, double tau) {
  IsoClass out;
  const Mat2& m = a.matrix();
  const double tr = m.trace();  // >= 0 by canonicalization
  out.near_parabolic_ambiguous = std::abs(tr - 2.0) < tau;
  if (distance_to_pm_identity(m) < tau) {
    out.label = IsoLabel::IDENTITY;
    return out;
  }
  if (tr > 2.0 + tau) {
    out.label = IsoLabel::HYPERBOLIC;
    out.length = 2.0 * std::acosh(tr / 2.0);
  } else if (tr < 2.0 - tau) {
    out.label = IsoLabel::ELLIPTIC;
    // Representative with c > 0 is conjugate to R(phi), phi in (0, pi).
    const double trc = m.c > 0.0 ? tr : -tr;
    out.angle = 2.0 * std::acos(std::clamp(trc / 2.0, -1.0, 1.0));
  } else {
    out.label = IsoLabel::PARABOLIC;
    // For the trace +2 representative, c - b > 0 means vectors turn forward.
    out.parabolic_sign = (m.c - m.b) > 0.0 ? 1 : -1;
  }
  return out;
}

FixedData fixed_data(const Isometry& a, double tau) {
  FixedData out;
  const IsoClass cls = classify(a, tau);
  out.label = cls.label;
  const Mat2& m = a.matrix();
  const double tr = m.trace();
  const double scale = std::max({1.0, std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  const bool c_zero = std::abs(m.c) <= 1e-14 * scale;
  switch (cls.label) {
    case IsoLabel::IDENTITY:
      break;
    case IsoLabel::ELLIPTIC: {
      const double s = std::sqrt(std::max(0.0, 4.0 - tr * tr));
      const double sg = m.c > 0.0 ? 1.0 : -1.0;
      out.center = HPoint(Complex(m.a - m.d, sg * s) / (2.0 * m.c));
      break;
    }
    case IsoLabel::PARABOLIC:
      out.fixed = c_zero ? BoundaryPoint::infinity() : BoundaryPoint::real((m.a - m.d) / (2.0 * m.c));
      break;
    case IsoLabel::HYPERBOLIC: {
      const double disc = std::sqrt(tr * tr - 4.0);
      BoundaryPoint att = BoundaryPoint::infinity(), rep = BoundaryPoint::infinity();
      if (c_zero) {
        const BoundaryPoint fin = BoundaryPoint::real(m.b / (m.d - m.a));
        if (std::abs(m.a) > std::abs(m.d)) {
          att = BoundaryPoint::infinity();
          rep = fin;
        } else {
          att = fin;
          rep = BoundaryPoint::infinity();
        }
      } else {
        // Roots of c x^2 + (d - a) x - b = 0, written to avoid cancellation.
        const double bq = m.d - m.a;
        const double sgn = bq >= 0.0 ? 1.0 : -1.0;
        const double qv = -0.5 * (bq + sgn * disc);
        const double x1 = qv / m.c;
        const double x2 = -m.b / qv;
        const bool x1_att = std::abs(m.c * x1 + m.d) > 1.0;
        att = BoundaryPoint::real(x1_att ? x1 : x2);
        rep = BoundaryPoint::real(x1_att ? x2 : x1);
      }
      out.attracting = att;
      out.repelling = rep;
      out.axis = Geodesic(rep, att);
      break;
    }
  }
  return out;
}

Isometry segment_carrier(const HPoint& p1, const HPoint& q1, const HPoint& p2, const HPoint& q2,
                         double tol) {
  const double d1 = dist(p1, q1);
  const double d2 = dist(p2, q2);
  if (d1 <= tol || d2 <= tol) throw Error(ErrorCode::DegenerateSegment, "segment has zero length");
  if (std::abs(d1 - d2) > tol * std::max(1.0, d1)) {
    throw Error(ErrorCode::LengthMismatch, "segments have different lengths");
  }
  const Mat2 f1 = segment_normalizer(p1, q1);
  const Mat2 f2 = segment_normalizer(p2, q2);
  return Isometry(f2.inverse() * f1);
}

Mat2 reflection_matrix(const Geodesic& l) {
  const Mat2 n = l.normalizer();
  return n.inverse() * Mat2::diag(-1.0, 1.0) * n;
}

Complex reflect(const Geodesic& l, Complex z) {
  return reflection_matrix(l).apply(std::conj(z));
}

HPoint reflect(const Geodesic& l, const HPoint& p) { return HPoint(reflect(l, p.z())); }

BoundaryPoint reflect(const Geodesic& l, const BoundaryPoint& p) {
  return apply_boundary(reflection_matrix(l), p);
}

Geodesic reflect(const Geodesic& l, const Geodesic& m) {
  return Geodesic(reflect(l, m.lo()), reflect(l, m.hi()));
}

Isometry compose_reflections(const Geodesic& l1, const Geodesic& l2) {
  if (l1.lo().near(l2.lo()) && l1.hi().near(l2.hi())) {
    throw Error(ErrorCode::IdenticalLines, "reflection lines coincide");
  }
  const Mat2 m1 = reflection_matrix(l1);
  const Mat2 m2 = reflection_matrix(l2);
  return Isometry(m2 * m1);
}

Isometry commutator(const Isometry& g, const Isometry& h) {
  return Isometry(commutator(g.matrix(), h.matrix()));
}

Isometry conjugate(const Isometry& a, const Isometry& g) {
  return Isometry(a.matrix() * g.matrix() * a.matrix().inverse());
}

Isometry translation_along(const Geodesic& l, double length) {
  const Mat2 n = l.normalizer();
  const Mat2 t = Mat2::diag(std::exp(0.5 * length), std::exp(-0.5 * length));
  return Isometry(n.inverse() * t * n);
}

Isometry rotation_about(const HPoint& c, double angle) {
  const Mat2 to_c{std::sqrt(c.y()), c.x() / std::sqrt(c.y()), 0.0, 1.0 / std::sqrt(c.y())};
  return Isometry(to_c * Mat2::rotation(0.5 * angle) * to_c.inverse());
}

}  // namespace hypcone
