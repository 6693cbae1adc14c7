#include "hypcone/domain_builder.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include "hypcone/errors.hpp"

namespace hypcone {

namespace {

Pentagon make_pentagon(const Isometry& g, const Isometry& h, const HPoint& p, double eps,
                       bool with_twist) {
  Pentagon pent;
  pent.g = g;
  pent.h = h;
  pent.p = p;
  const Isometry gi = g.inverse(), hi = h.inverse();
  const HPoint s = h.apply(p);
  const HPoint r = g.apply(s);
  const HPoint q = hi.apply(r);
  const HPoint t = gi.apply(hi.apply(r));
  pent.polygon.vertices = {p, q, r, s, t};
  pent.report = polygon_validate(pent.polygon, eps);
  pent.corner_angle = pent.report.angle_sum;
  pent.pairing_error = std::max({dist(g.apply(t), q), dist(g.apply(s), r), dist(h.apply(p), s),
                                 dist(h.apply(q), r)});
  if (!with_twist) return pent;
  try {
    pent.twist = twist(commutator_lift(gi, hi), p);
    // Mirroring keeps the corner angle and negates the twist.
    const double sense = pent.report.orientation == Orientation::CCW ? 1.0 : -1.0;
    pent.twist_residual = wrap_angle(3.0 * kPi - pent.corner_angle - sense * pent.twist);
  } catch (const Error&) {
    pent.twist = std::numeric_limits<double>::quiet_NaN();
    pent.twist_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return pent;
}

Mat2 square_root(const Isometry& c) {
  const Mat2& m = c.matrix();
  const double s = std::sqrt(m.trace() + 2.0);
  return Mat2{(m.a + 1.0) / s, m.b / s, m.c / s, (m.d + 1.0) / s};
}

/// Line through the ideal point p perpendicular to l.
Geodesic perpendicular_from_ideal(const BoundaryPoint& p, const Geodesic& l) {
  const Mat2 n = l.normalizer();
  const BoundaryPoint u = apply_boundary(n, p);
  if (u.is_infinite() || u.x() == 0.0) {
    throw Error(ErrorCode::AxesNotDisjoint, "parabolic fixed point lies on the other axis");
  }
  const double r = std::abs(u.x());
  return apply_geodesic(n.inverse(), Geodesic(BoundaryPoint::real(-r), BoundaryPoint::real(r)));
}

std::optional<BoundaryPoint> common_endpoint(const Geodesic& a, const Geodesic& b) {
  for (const BoundaryPoint& x : {a.lo(), a.hi()}) {
    for (const BoundaryPoint& y : {b.lo(), b.hi()}) {
      if (x.near(y, 1e-7)) return x;
    }
  }
  return std::nullopt;
}

HPoint must_cross(const Geodesic& a, const Geodesic& b, const char* what) {
  const auto x = crossing_point(a, b);
  if (!x) throw Error(ErrorCode::InvariantViolation, std::string("lines do not meet: ") + what);
  return *x;
}

double point_gap(const PlanePoint& a, const PlanePoint& b) {
  return std::abs(to_disk(a) - to_disk(b));
}

}  // namespace

bool Pentagon::valid(std::optional<Orientation> orientation) const {
  if (!report.valid()) return false;
  return !orientation || report.orientation == *orientation;
}

Pentagon build_pentagon(const Isometry& g, const Isometry& h, const HPoint& p, double eps) {
  return make_pentagon(g, h, p, eps, true);
}

PantsDomain build_pants(const Isometry& c1, const Isometry& c2) {
  PantsDomain dom;
  dom.c1 = c1;
  dom.c2 = c2;
  dom.c3 = (c1 * c2).inverse();
  const Isometry* cs[] = {&dom.c1, &dom.c2, &dom.c3};
  FixedData fd[3];
  for (int i = 0; i < 3; ++i) {
    const IsoClass k = classify(*cs[i]);
    if (k.label == IsoLabel::IDENTITY) {
      throw Error(ErrorCode::PreconditionFailed, "boundary image c" + std::to_string(i + 1) +
                                                     " is the identity");
    }
    if (k.label == IsoLabel::ELLIPTIC) {
      throw Error(ErrorCode::EllipticBoundary, "boundary image c" + std::to_string(i + 1) +
                                                   " is elliptic");
    }
    dom.parabolic[i] = k.label == IsoLabel::PARABOLIC;
    fd[i] = fixed_data(*cs[i]);
  }
  const double tr_comm = commutator(c1.matrix(), c2.matrix()).trace();
  if (!(tr_comm > 2.0 + kClassifyTol)) {
    std::ostringstream os;
    os << "Tr[c1,c2] = " << tr_comm << " <= 2";
    throw Error(ErrorCode::AxesNotDisjoint, os.str());
  }
  const double product = c1.trace() * c2.trace() * (c1.matrix() * c2.matrix()).trace();
  if (product > -8.0 + kClassifyTol) {
    std::ostringstream os;
    os << "Tr(c1) Tr(c2) Tr(c1 c2) = " << product << " > -8";
    throw Error(ErrorCode::TraceProductCondition, os.str());
  }
  SurfaceRep rep{0, 3, {dom.c1, dom.c2, dom.c3}};
  const std::int64_t m = euler_class(rep);
  if (m == -1) {
    throw Error(ErrorCode::WrongEulerSide, "relator lift is z^-1; reverse the orientation");
  }
  if (m != 1) throw Error(ErrorCode::PreconditionFailed, "relative Euler class is 0");

  // The first reflection line joins the two boundary axes (or cusps).
  if (!dom.parabolic[0] && !dom.parabolic[1]) {
    dom.l0 = common_perpendicular(*fd[0].axis, *fd[1].axis);
  } else if (dom.parabolic[0] && dom.parabolic[1]) {
    dom.l0 = Geodesic(*fd[0].fixed, *fd[1].fixed);
  } else if (dom.parabolic[0]) {
    dom.l0 = perpendicular_from_ideal(*fd[0].fixed, *fd[1].axis);
  } else {
    dom.l0 = perpendicular_from_ideal(*fd[1].fixed, *fd[0].axis);
  }
  dom.a1 = apply_geodesic(square_root(c1), dom.l0);
  dom.a2 = apply_geodesic(square_root(c2).inverse(), dom.l0);
  dom.recompose_error = std::max({distance(compose_reflections(dom.l0, dom.a1), c1),
                                  distance(compose_reflections(dom.a2, dom.l0), c2),
                                  distance(compose_reflections(dom.a1, dom.a2), dom.c3)});

  const Geodesic& l0 = dom.l0;
  const PlanePoint x1 = dom.parabolic[0] ? PlanePoint(*fd[0].fixed)
                                         : PlanePoint(must_cross(dom.a1, *fd[0].axis, "A1, Ax1"));
  const PlanePoint x2 = dom.parabolic[1] ? PlanePoint(*fd[1].fixed)
                                         : PlanePoint(must_cross(dom.a2, *fd[1].axis, "A2, Ax2"));
  PlanePoint y31, y23;
  if (dom.parabolic[2]) {
    const auto y = common_endpoint(dom.a1, dom.a2);
    if (!y) throw Error(ErrorCode::InvariantViolation, "A1 and A2 are not asymptotic");
    y31 = y23 = *y;
  } else {
    y31 = must_cross(dom.a1, *fd[2].axis, "A1, Ax3");
    y23 = must_cross(dom.a2, *fd[2].axis, "A2, Ax3");
  }
  auto sigma = [&](const PlanePoint& v) -> PlanePoint {
    if (const auto* h = std::get_if<HPoint>(&v)) return reflect(l0, *h);
    return reflect(l0, std::get<BoundaryPoint>(v));
  };

  // Cyclic vertex list; a parabolic side collapses to one ideal vertex.
  std::vector<PlanePoint>& vs = dom.octagon.vertices;
  const int ix1 = 0;
  vs.push_back(x1);
  int isx1 = ix1;
  if (!dom.parabolic[0]) {
    vs.push_back(sigma(x1));
    isx1 = 1;
  }
  const int isy31 = static_cast<int>(vs.size());
  vs.push_back(sigma(y31));
  int isy23 = isy31;
  if (!dom.parabolic[2]) {
    vs.push_back(sigma(y23));
    isy23 = isy31 + 1;
  }
  const int isx2 = static_cast<int>(vs.size());
  vs.push_back(sigma(x2));
  int ix2 = isx2;
  if (!dom.parabolic[1]) {
    vs.push_back(x2);
    ix2 = isx2 + 1;
  }
  const int iy23 = static_cast<int>(vs.size());
  vs.push_back(y23);
  int iy31 = iy23;
  if (!dom.parabolic[2]) {
    vs.push_back(y31);
    iy31 = iy23 + 1;
  }
  dom.c1_pairs = {{isx1, ix1}, {isy31, iy31}};
  dom.c2_pairs = {{ix2, isx2}, {iy23, isy23}};
  for (const auto& [from, to] : dom.c1_pairs) {
    dom.pairing_error = std::max(dom.pairing_error, point_gap(c1.apply(vs[from]), vs[to]));
  }
  for (const auto& [from, to] : dom.c2_pairs) {
    dom.pairing_error = std::max(dom.pairing_error, point_gap(c2.apply(vs[from]), vs[to]));
  }
  dom.report = polygon_validate(dom.octagon);
  return dom;
}

GoodRep good_rep(double t, double epsilon, Orientation orientation) {
  if (!(t > 2.0) || !(epsilon > 0.0)) {
    throw Error(ErrorCode::PreconditionFailed, "good_rep needs t > 2 and epsilon > 0");
  }
  const double d = translation_length_of_trace(t);
  const Geodesic l = imaginary_axis();
  double eps = epsilon;
  for (int halving = 0; halving <= 40; ++halving, eps *= 0.5) {
    for (double e : {eps, -eps}) {
      const HPoint p = fermi_point(l, -d / 2, e);
      const HPoint q = fermi_point(l, -d / 4, 0.0);
      const HPoint r = fermi_point(l, 0.0, -e);
      const HPoint s = fermi_point(l, d / 4, 0.0);
      const HPoint tt = fermi_point(l, d / 2, e);
      Isometry g, h;
      try {
        g = segment_carrier(tt, s, q, r);
        h = segment_carrier(p, q, s, r);
      } catch (const Error&) {
        continue;
      }
      if (classify(g).label != IsoLabel::ELLIPTIC || classify(h).label != IsoLabel::ELLIPTIC) {
        continue;
      }
      if (std::abs(commutator(g.matrix(), h.matrix()).trace() - t) > 1e-9 * std::max(1.0, t)) {
        continue;
      }
      Pentagon pent = build_pentagon(g, h, p);
      if (!pent.valid(orientation)) continue;
      return {g, h, p, e, std::move(pent)};
    }
  }
  throw Error(ErrorCode::EpsilonUnderflow, "no valid construction after 40 halvings");
}

std::string word_inverse(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (char& c : out) c = std::islower(static_cast<unsigned char>(c)) ? std::toupper(c) : std::tolower(c);
  return out;
}

std::string word_reduce(const std::string& w) {
  std::string out;
  for (char c : w) {
    if (!out.empty() && out.back() != c && std::tolower(out.back()) == std::tolower(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Isometry evaluate_word(const std::string& w, const Isometry& g, const Isometry& h) {
  const Isometry gi = g.inverse(), hi = h.inverse();
  Mat2 acc = Mat2::identity();
  for (char c : w) {
    switch (c) {
      case 'g': acc = acc * g.matrix(); break;
      case 'G': acc = acc * gi.matrix(); break;
      case 'h': acc = acc * h.matrix(); break;
      case 'H': acc = acc * hi.matrix(); break;
      default: throw Error(ErrorCode::MalformedInput, std::string("bad word letter '") + c + "'");
    }
  }
  return Isometry(acc);
}

namespace {

constexpr double kOffsetFractions[] = {0.25, 0.5, 0.75, 1.0 - 1e-3};

struct Basis {
  Isometry g, h;
  std::string gw, hw;
  int depth;
};

double max_trace(const Isometry& g, const Isometry& h) {
  return std::max({std::abs(g.trace()), std::abs(h.trace()),
                   std::abs((g.matrix() * h.matrix()).trace())});
}

/// Largest Frobenius norm of the pair. Commutators of matrices beyond
/// kNormCap lose their determinant to cancellation.
constexpr double kNormCap = 1e3;

double max_norm(const Isometry& g, const Isometry& h) {
  const Mat2 zero{0.0, 0.0, 0.0, 0.0};
  return std::max(frobenius_distance(g.matrix(), zero), frobenius_distance(h.matrix(), zero));
}

int boundary_orientation(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c) {
  const Complex u = to_disk(a), v = to_disk(b), w = to_disk(c);
  const double s = std::imag(std::conj(v - u) * (w - u));
  return s > 1e-12 ? 1 : (s < -1e-12 ? -1 : 0);
}

// Conjugacy invariant of a basis under orientation-preserving isometries:
// unsigned traces, the sign of xyz, and the orientation of the commutator's
// fixed points against their images.
using BasisKey = std::tuple<long long, long long, long long, int, int, int>;

BasisKey basis_key(const Isometry& g, const Isometry& h, const FixedData& fd) {
  const double x = g.trace(), y = h.trace(), z = (g.matrix() * h.matrix()).trace();
  auto q = [](double v) { return std::llround(std::abs(v) * 1e7); };
  const int sgn = x * y * z > 0 ? 1 : -1;
  int og = 0, oh = 0;
  if (fd.repelling && fd.attracting) {
    og = boundary_orientation(*fd.repelling, *fd.attracting, g.apply(*fd.attracting));
    oh = boundary_orientation(*fd.repelling, *fd.attracting, h.apply(*fd.attracting));
  }
  return {q(x), q(y), q(z), sgn, og, oh};
}

/// Arclength along `axis` of the point nearest to the fixed set of `a`.
std::optional<double> anchor_on(const Isometry& a, const Geodesic& axis) {
  const FixedData fd = fixed_data(a);
  auto foot_of_ideal = [&](const BoundaryPoint& x) -> std::optional<double> {
    if (x.near(axis.lo()) || x.near(axis.hi())) return std::nullopt;
    const Geodesic perp = perpendicular_from_ideal(x, axis);
    const auto c = crossing_point(perp, axis);
    if (!c) return std::nullopt;
    return fermi_coordinates(axis, *c).arclength;
  };
  switch (fd.label) {
    case IsoLabel::ELLIPTIC: return fermi_coordinates(axis, *fd.center).arclength;
    case IsoLabel::PARABOLIC: return foot_of_ideal(*fd.fixed);
    case IsoLabel::HYPERBOLIC: {
      if (const auto c = crossing_point(*fd.axis, axis)) return fermi_coordinates(axis, *c).arclength;
      try {
        const auto c = crossing_point(common_perpendicular(*fd.axis, axis), axis);
        if (c) return fermi_coordinates(axis, *c).arclength;
      } catch (const Error&) {
      }
      if (auto f = foot_of_ideal(fd.axis->lo())) return f;
      return foot_of_ideal(fd.axis->hi());
    }
    default: return std::nullopt;
  }
}

}  // namespace

std::optional<GoodnessCertificate> try_good_search(const Isometry& g, const Isometry& h,
                                                   double epsilon,
                                                   const SearchOptions& options) {
  const double t = commutator(g.matrix(), h.matrix()).trace();
  if (!(t > 2.0 + kClassifyTol)) {
    std::ostringstream os;
    os << "Tr[g,h] = " << t << " is not > 2";
    throw Error(ErrorCode::PreconditionFailed, os.str());
  }
  const double cap =
      options.trace_cap > 0.0 ? options.trace_cap : std::max({8.0, 2.0 * t, max_trace(g, h)});
  const double norm_cap = std::max(kNormCap, max_norm(g, h));
  options.bases_examined = 0;

  std::set<BasisKey> seen;
  std::deque<Basis> queue{{g, h, "g", "h", 0}};
  while (!queue.empty()) {
    Basis b = std::move(queue.front());
    queue.pop_front();
    // Skip bases whose commutator has lost its determinant to cancellation.
    const Mat2 km = commutator(b.g.inverse().matrix(), b.h.inverse().matrix());
    if (!(std::abs(km.det() - 1.0) < 1e-6)) continue;
    const Isometry k(km);
    const FixedData fd = fixed_data(k);
    if (!fd.axis) continue;
    if (!seen.insert(basis_key(b.g, b.h, fd)).second) continue;
    ++options.bases_examined;

    // Stations span one period of the commutator, centred half a period
    // behind the midpoint of the generators' anchors on the axis.
    const double d = classify(k).length;
    const auto ag = anchor_on(b.g, *fd.axis), ah = anchor_on(b.h, *fd.axis);
    const double mid = ag && ah ? 0.5 * (*ag + *ah) : (ag ? *ag : (ah ? *ah : 0.0));
    // Fermi coordinates run toward the larger endpoint; measure along the
    // translation direction instead so that the stations are equivariant.
    const double dir = fd.axis->hi().near(*fd.attracting) ? 1.0 : -1.0;
    for (int st = 0; st < options.stations; ++st) {
      const double s = mid + dir * (-d + d * st / options.stations);
      for (int oi = 0; oi < 8; ++oi) {
        const double off = dir * (oi < 4 ? 1.0 : -1.0) * kOffsetFractions[oi % 4] * epsilon;
        const HPoint p = fermi_point(*fd.axis, s, off);
        const Pentagon quick = make_pentagon(b.g, b.h, p, kGeomEps, false);
        if (!quick.valid(options.orientation)) continue;
        GoodnessCertificate cert;
        cert.g_word = b.gw;
        cert.h_word = b.hw;
        cert.depth = b.depth;
        cert.station = st;
        cert.offset_index = oi;
        cert.p = p;
        cert.distance_to_axis = distance_to_geodesic(*fd.axis, p);
        cert.pentagon = build_pentagon(b.g, b.h, p);
        return cert;
      }
    }

    if (b.depth >= options.depth) continue;
    const Isometry gi = b.g.inverse(), hi = b.h.inverse();
    const std::string giw = word_inverse(b.gw), hiw = word_inverse(b.hw);
    const Basis next[] = {
        {b.g * b.h, b.h, b.gw + b.hw, b.hw, 0},
        {b.g * hi, b.h, b.gw + hiw, b.hw, 0},
        {b.h * b.g, b.h, b.hw + b.gw, b.hw, 0},
        {hi * b.g, b.h, hiw + b.gw, b.hw, 0},
        {b.g, b.h * b.g, b.gw, b.hw + b.gw, 0},
        {b.g, b.h * gi, b.gw, b.hw + giw, 0},
        {b.g, b.g * b.h, b.gw, b.gw + b.hw, 0},
        {b.g, gi * b.h, b.gw, giw + b.hw, 0},
    };
    for (const Basis& n : next) {
      if (max_trace(n.g, n.h) > cap || max_norm(n.g, n.h) > norm_cap) continue;
      queue.push_back({n.g, n.h, word_reduce(n.gw), word_reduce(n.hw), b.depth + 1});
    }
  }
  return std::nullopt;
}

GoodnessCertificate good_search(const Isometry& g, const Isometry& h, double epsilon,
                                const SearchOptions& options) {
  auto cert = try_good_search(g, h, epsilon, options);
  if (!cert) {
    throw Error(ErrorCode::NotFound, "no good basis within depth " +
                                         std::to_string(options.depth));
  }
  return std::move(*cert);
}

}  // namespace hypcone
