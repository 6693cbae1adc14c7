#include "hypcone/covering_group.hpp"

#include <cmath>
#include <sstream>

#include "hypcone/errors.hpp"

namespace hypcone {

namespace {

constexpr double kCentralTol = 1e-8;

double angle_mod_pi(double x, double y) {
  double a = std::atan2(y, x);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a -= kPi;
  return a;
}

std::int64_t round_to_int(double v) { return static_cast<std::int64_t>(std::llround(v)); }

}  // namespace

double principal_lift(const Mat2& a, double x) {
  const double g0 = angle_mod_pi(a.a, a.c);
  const double n = std::floor(x / kPi);
  const double x0 = x - n * kPi;
  const double cx = std::cos(x0), sx = std::sin(x0);
  const double vx = a.a * cx + a.b * sx;
  const double vy = a.c * cx + a.d * sx;
  // For x0 in [0, pi) the signed angle from A e1 to A v has sine det(A) sin x0 >= 0,
  // so atan2 lands in [0, pi) without a branch decision.
  const double dot = a.a * vx + a.c * vy;
  const double cross = a.det() * sx;
  double step = std::atan2(cross, dot);
  if (step < 0.0) step = 0.0;
  return g0 + step + n * kPi;
}

double Lift::operator()(double x) const {
  return principal_lift(base.matrix(), x) + static_cast<double>(winding) * kPi;
}

Lift lift_multiply(const Lift& l1, const Lift& l2) {
  const Isometry prod = l1.base * l2.base;
  const double composed = principal_lift(l1.base.matrix(), principal_lift(l2.base.matrix(), 0.0));
  const double direct = principal_lift(prod.matrix(), 0.0);
  const std::int64_t m = round_to_int((composed - direct) / kPi);
  return {prod, l1.winding + l2.winding + m};
}

Lift lift_inverse(const Lift& l) {
  const Isometry inv = l.base.inverse();
  const double back = principal_lift(l.base.matrix(), principal_lift(inv.matrix(), 0.0));
  return {inv, -l.winding - round_to_int(back / kPi)};
}

Lift commutator_lift(const Isometry& g, const Isometry& h) {
  const Lift gl{g, 0}, hl{h, 0};
  return gl * hl * lift_inverse(gl) * lift_inverse(hl);
}

double theta(const Lift& l) {
  const Mat2& m = l.base.matrix();
  const double polar = std::atan2(m.c - m.b, m.a + m.d);
  const double f0 = l(0.0);
  return polar + kPi * std::round((f0 - polar) / kPi);
}

Lift simplest_lift(const Isometry& a) {
  const IsoClass cls = classify(a);
  if (cls.label == IsoLabel::ELLIPTIC) {
    throw Error(ErrorCode::EllipticHasNoPreferredLift, "elliptic isometries have no simplest lift");
  }
  if (cls.label == IsoLabel::IDENTITY) return {a, 0};
  const Mat2& m = a.matrix();
  const double tr = m.trace();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0));
  const double lambda = 0.5 * (tr + disc);
  // Eigenvector from whichever row of (A - lambda I) is better conditioned.
  const double v1x = m.b, v1y = lambda - m.a;
  const double v2x = lambda - m.d, v2y = m.c;
  const bool first = v1x * v1x + v1y * v1y >= v2x * v2x + v2y * v2y;
  const double u = first ? std::atan2(v1y, v1x) : std::atan2(v2y, v2x);
  const double gu = principal_lift(m, u);
  return {a, -round_to_int((gu - u) / kPi)};
}

double translation_number(const Lift& l) {
  const IsoClass cls = classify(l.base);
  if (cls.label == IsoLabel::ELLIPTIC) {
    return 0.5 * cls.angle + static_cast<double>(l.winding) * kPi;
  }
  const Lift s = simplest_lift(l.base);
  return static_cast<double>(l.winding - s.winding) * kPi;
}

std::string to_string(const RegionLabel& r) {
  std::ostringstream os;
  switch (r.kind) {
    case RegionKind::CENTRAL: os << "CENTRAL"; break;
    case RegionKind::HYP: os << "HYP"; break;
    case RegionKind::PAR_PLUS: os << "PAR_PLUS"; break;
    case RegionKind::PAR_MINUS: os << "PAR_MINUS"; break;
    case RegionKind::ELL: os << "ELL"; break;
  }
  os << "(" << r.index << ")";
  return os.str();
}

RegionLabel region(const Lift& l) {
  RegionLabel out;
  if (distance_to_pm_identity(l.base.matrix()) < kCentralTol) {
    out.kind = RegionKind::CENTRAL;
    out.index = round_to_int(l(0.0) / kPi);
    return out;
  }
  const IsoClass cls = classify(l.base);
  out.ambiguous = cls.near_parabolic_ambiguous;
  switch (cls.label) {
    case IsoLabel::IDENTITY:
      out.kind = RegionKind::CENTRAL;
      out.index = round_to_int(l(0.0) / kPi);
      break;
    case IsoLabel::HYPERBOLIC:
      out.kind = RegionKind::HYP;
      out.index = l.winding - simplest_lift(l.base).winding;
      break;
    case IsoLabel::PARABOLIC:
      out.kind = cls.parabolic_sign > 0 ? RegionKind::PAR_PLUS : RegionKind::PAR_MINUS;
      out.index = l.winding - simplest_lift(l.base).winding;
      break;
    case IsoLabel::ELLIPTIC:
      out.kind = RegionKind::ELL;
      out.index = l.winding >= 0 ? l.winding + 1 : l.winding;
      break;
  }
  return out;
}

std::vector<std::string> generator_names(int genus, int boundary_count) {
  std::vector<std::string> names;
  for (int i = 1; i <= genus; ++i) {
    names.push_back("G" + std::to_string(i));
    names.push_back("H" + std::to_string(i));
  }
  for (int j = 1; j <= boundary_count; ++j) names.push_back("C" + std::to_string(j));
  return names;
}

Isometry relator(const SurfaceRep& rep) {
  Mat2 acc = Mat2::identity();
  for (int i = 0; i < rep.genus; ++i) acc = acc * commutator(rep.g(i).matrix(), rep.h(i).matrix());
  for (int j = 0; j < rep.boundary_count; ++j) acc = acc * rep.c(j).matrix();
  return Isometry(acc);
}

double relator_residual(const SurfaceRep& rep) {
  return distance_to_pm_identity(relator(rep).matrix());
}

Lift relator_lift(const SurfaceRep& rep) {
  if (rep.generators.size() != static_cast<std::size_t>(2 * rep.genus + rep.boundary_count)) {
    throw Error(ErrorCode::MalformedInput, "generator count does not match the surface");
  }
  Lift acc = Lift::identity();
  for (int i = 0; i < rep.genus; ++i) acc = acc * commutator_lift(rep.g(i), rep.h(i));
  for (int j = 0; j < rep.boundary_count; ++j) {
    if (classify(rep.c(j)).label == IsoLabel::ELLIPTIC) {
      throw Error(ErrorCode::EllipticBoundary, "boundary image C" + std::to_string(j + 1) +
                                                   " is elliptic");
    }
    acc = acc * simplest_lift(rep.c(j));
  }
  return acc;
}

std::int64_t euler_class(const SurfaceRep& rep, double relator_tol) {
  const Lift r = relator_lift(rep);
  const double residual = distance_to_pm_identity(r.base.matrix());
  if (residual >= relator_tol) {
    std::ostringstream os;
    os << "relator residual " << residual << " exceeds " << relator_tol;
    throw Error(ErrorCode::RelatorNotIdentity, os.str());
  }
  const std::int64_t m = round_to_int(r(0.0) / kPi);
  const int chi = rep.euler_characteristic();
  if (std::abs(m) > std::abs(chi)) {
    throw Error(ErrorCode::InvariantViolation,
                "Milnor-Wood bound violated: |" + std::to_string(m) + "| > |" +
                    std::to_string(chi) + "|");
  }
  return m;
}

double twist(const Lift& l, const HPoint& p) {
  const Mat2& m = l.base.matrix();
  const Complex qz = m.apply(p.z());
  if (std::abs(qz - p.z()) <= kGeomEps * std::max(1.0, std::abs(p.z()))) {
    throw Error(ErrorCode::FixedBasepoint, "base isometry fixes the basepoint");
  }
  const HPoint q(qz);
  const Complex v = direction_toward(p, q);
  const Complex deriv = 1.0 / ((m.c * p.z() + m.d) * (m.c * p.z() + m.d));
  const Complex dv = v * deriv / std::abs(deriv);
  const Complex transported = -direction_toward(q, p);
  // Clockwise in the half-plane picture is the positive sense of RP^1.
  const double tau0 = -std::arg(dv / transported);
  const double target = 2.0 * translation_number(l);
  double k = std::ceil((target - kPi - tau0) / kTwoPi);
  double val = tau0 + kTwoPi * k;
  if (val <= target - kPi) val += kTwoPi;
  if (val > target + kPi) val -= kTwoPi;
  return val;
}

}  // namespace hypcone
