#include "hypcone/surface_glue.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "hypcone/character_dynamics.hpp"
#include "hypcone/errors.hpp"

namespace hypcone {

namespace {

constexpr double kRelatorTol = 1e-8;
constexpr double kTraceTol = 1e-8;
constexpr double kVertexMatch = 1e-6;

Mat2 mirror(const Mat2& m) { return {m.a, -m.b, -m.c, m.d}; }

/// z -> (z - x) / y, sending c to i.
Mat2 point_normalizer(const HPoint& c) {
  return Mat2{1.0, -c.x(), 0.0, c.y()}.scaled(1.0 / std::sqrt(c.y()));
}

/// Sends a boundary point to infinity.
Mat2 to_infinity(const BoundaryPoint& r) {
  if (r.is_infinite()) return Mat2::identity();
  return {0.0, -1.0, 1.0, -r.x()};
}

BoundaryPoint boundary_from_disk(Complex w) {
  if (std::abs(1.0 - w) < 1e-15) return BoundaryPoint::infinity();
  return BoundaryPoint::real((Complex(0.0, 1.0) * (1.0 + w) / (1.0 - w)).real());
}

double sl_trace_of_commutator(const Isometry& g, const Isometry& h) {
  return commutator(g.matrix(), h.matrix()).trace();
}

GeodesicPolygon union_octagon(const Pentagon& p0, const Pentagon& p1) {
  GeodesicPolygon o;
  for (int i = 0; i < 5; ++i) o.vertices.push_back(p0.vertex(i));
  for (int i = 1; i < 4; ++i) o.vertices.push_back(p1.vertex(i));
  return o;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// Both pentagons valid with equal orientation and the octagon simple.
std::optional<GluedDomain> try_glue(const Pentagon& p0, const Pentagon& p1, GlueCase kase) {
  if (!p0.valid() || !p1.valid()) return std::nullopt;
  if (p0.report.orientation != p1.report.orientation) return std::nullopt;
  GluedDomain d;
  d.octagon = union_octagon(p0, p1);
  d.report = polygon_validate(d.octagon);
  if (!d.report.valid()) return std::nullopt;
  d.kase = kase;
  d.pent0 = p0;
  d.pent1 = p1;
  d.pairings = {p0.g, p0.h, p1.g, p1.h};
  d.side_piece = {0, 0, 0, 0, 1, 1, 1, 1};
  d.cone_angle = d.report.angle_sum;
  d.area = d.report.area;

  std::vector<HPoint> v;
  for (const auto& x : d.octagon.vertices) v.push_back(std::get<HPoint>(x));
  // g0: t0->q0, s0->r0; h0: p0->s0, q0->r0; g1: p0->q1, s1->r1; h1: t0->s1, q1->r1.
  static constexpr int kPairs[4][2][2] = {
      {{4, 1}, {3, 2}}, {{0, 3}, {1, 2}}, {{0, 5}, {7, 6}}, {{4, 7}, {5, 6}}};
  for (int k = 0; k < 4; ++k) {
    for (const auto& pr : kPairs[k]) {
      d.pairing_error = std::max(d.pairing_error, dist(d.pairings[k].apply(v[pr[0]]), v[pr[1]]));
    }
  }
  UnionFind uf(8);
  for (const auto& a : d.pairings) {
    for (const Isometry& m : {a, a.inverse()}) {
      for (int i = 0; i < 8; ++i) {
        const HPoint img = m.apply(v[i]);
        for (int j = 0; j < 8; ++j) {
          if (dist(img, v[j]) < kVertexMatch) uf.unite(i, j);
        }
      }
    }
  }
  for (int i = 0; i < 8; ++i) d.vertex_orbit += uf.find(i) == uf.find(0) ? 1 : 0;
  return d;
}

/// Image of a glued domain under an isometry; angles and errors are invariant.
Pentagon transformed(const Pentagon& pent, const Isometry& m) {
  Pentagon out = pent;
  out.g = conjugate(m, pent.g);
  out.h = conjugate(m, pent.h);
  out.p = m.apply(pent.p);
  for (auto& v : out.polygon.vertices) v = m.apply(v);
  return out;
}

GluedDomain transformed(const GluedDomain& d, const Isometry& m) {
  GluedDomain out = d;
  for (auto& v : out.octagon.vertices) v = m.apply(v);
  for (auto& a : out.pairings) a = conjugate(m, a);
  out.pent0 = transformed(d.pent0, m);
  out.pent1 = transformed(d.pent1, m);
  return out;
}

std::vector<std::pair<std::string, std::string>> commutator_preserving_bases(int limit) {
  // h -> h g^+-1 and g -> g h^+-1 all fix [g, h].
  std::vector<std::pair<std::string, std::string>> out;
  std::deque<std::pair<std::string, std::string>> queue{{"g", "h"}};
  std::set<std::pair<std::string, std::string>> seen{{"g", "h"}};
  while (!queue.empty() && static_cast<int>(out.size()) < limit) {
    const auto cur = queue.front();
    queue.pop_front();
    out.push_back(cur);
    const auto& [a, b] = cur;
    for (const auto& next : {std::pair{a, word_reduce(b + a)}, std::pair{a, word_reduce(b + word_inverse(a))},
                             std::pair{word_reduce(a + b), b}, std::pair{word_reduce(a + word_inverse(b)), b}}) {
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return out;
}

std::vector<BoundaryPoint> finite_fixed_points(const Isometry& a) {
  std::vector<BoundaryPoint> out;
  const FixedData fd = fixed_data(a);
  for (const auto& p : {fd.attracting, fd.repelling, fd.fixed}) {
    if (p && !p->is_infinite()) out.push_back(*p);
  }
  return out;
}

/// Pentagon for an extremal one-holed torus: p on the axis of [g^-1, h^-1].
std::optional<Pentagon> torus_pentagon(const Isometry& g, const Isometry& h, int stations,
                                       std::optional<Orientation> orientation) {
  const Isometry k = commutator(g.inverse(), h.inverse());
  const FixedData fd = fixed_data(k);
  if (fd.label != IsoLabel::HYPERBOLIC) return std::nullopt;
  const double d = classify(k).length;
  for (int s = 0; s < stations; ++s) {
    const HPoint p = fermi_point(*fd.axis, d * s / stations, 0.0);
    Pentagon pent = build_pentagon(g, h, p);
    if (pent.valid(orientation)) return pent;
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(GlueCase c) {
  switch (c) {
    case GlueCase::ELLIPTIC: return "ELLIPTIC";
    case GlueCase::PARABOLIC: return "PARABOLIC";
    case GlueCase::HYPERBOLIC: return "HYPERBOLIC";
  }
  return "?";
}

std::string to_string(PieceKind k) {
  return k == PieceKind::PANTS ? "PANTS" : "PUNCTURED_TORUS";
}

Isometry aligning_conjugator(const Isometry& x, const Isometry& y) {
  const IsoClass cx = classify(x), cy = classify(y);
  if (cx.label != cy.label) {
    throw Error(ErrorCode::PreconditionFailed,
                "cannot align " + to_string(cx.label) + " with " + to_string(cy.label));
  }
  if (cx.label == IsoLabel::IDENTITY) return Isometry();
  const Mat2& xm = x.matrix();
  const Mat2& ym = y.matrix();
  const double t = xm.trace();
  if (std::abs(t - ym.trace()) > kTraceTol * std::max(1.0, std::abs(t))) {
    throw Error(ErrorCode::PreconditionFailed, "traces differ");
  }
  // By Cayley-Hamilton, a = y m + m x - t m satisfies y a = a x for every m.
  std::vector<Mat2> sol;
  for (const Mat2& m : {Mat2{1, 0, 0, 0}, Mat2{0, 1, 0, 0}, Mat2{0, 0, 1, 0}, Mat2{0, 0, 0, 1}}) {
    const Mat2 ym_ = ym * m, mx = m * xm;
    sol.push_back({ym_.a + mx.a - t * m.a, ym_.b + mx.b - t * m.b, ym_.c + mx.c - t * m.c,
                   ym_.d + mx.d - t * m.d});
  }
  // The solutions span the commutant coset, two-dimensional away from the
  // identity. Take an orthonormal basis and maximize det on its unit circle.
  auto dot = [](const Mat2& u, const Mat2& v) { return u.a * v.a + u.b * v.b + u.c * v.c + u.d * v.d; };
  auto axpy = [](double s, const Mat2& u, const Mat2& v) {
    return Mat2{s * u.a + v.a, s * u.b + v.b, s * u.c + v.c, s * u.d + v.d};
  };
  std::sort(sol.begin(), sol.end(), [&](const Mat2& u, const Mat2& v) { return dot(u, u) > dot(v, v); });
  const Mat2 u = sol[0].scaled(1.0 / std::sqrt(dot(sol[0], sol[0])));
  Mat2 v{0, 0, 0, 0};
  for (std::size_t i = 1; i < sol.size(); ++i) {
    const Mat2 w = axpy(-dot(u, sol[i]), u, sol[i]);
    if (dot(w, w) > dot(v, v)) v = w;
  }
  Mat2 pick = u;
  if (dot(v, v) > 1e-20 * dot(sol[0], sol[0])) {
    v = v.scaled(1.0 / std::sqrt(dot(v, v)));
    const double p = u.det(), q = v.det(), r = axpy(1.0, u, v).det() - p - q;
    // Largest eigenvalue of [[p, r/2], [r/2, q]] and its eigenvector.
    const double theta = 0.5 * std::atan2(r, p - q);
    pick = axpy(std::sin(theta), v, u.scaled(std::cos(theta)));
  }
  // Orientation-preserving conjugators have positive determinant; none
  // exist when the rotation sense or parabolic direction differs.
  if (!(pick.det() > 1e-10 * dot(pick, pick))) {
    throw Error(ErrorCode::PreconditionFailed,
                "no orientation-preserving conjugator (rotation sense or direction differs)");
  }
  return Isometry(pick.scaled(1.0 / std::sqrt(pick.det())));
}

MatrixPair pair_with_commutator(const Mat2& q, double x, double y) {
  const double tau = q.trace();
  const double b = x * y, c = x * x + y * y - 2.0 - tau;
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) {
    throw Error(ErrorCode::PreconditionFailed, "no real character with these traces");
  }
  const double z = 0.5 * (b + std::sqrt(disc));
  for (int mirrored = 0; mirrored < 2; ++mirrored) {
    MatrixPair p = char_to_rep({x, y, z});
    if (mirrored) p = {mirror(p.g), mirror(p.h)};
    Isometry a;
    try {
      a = aligning_conjugator(Isometry(commutator(p.g, p.h)), Isometry(q));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PreconditionFailed) throw;
      continue;
    }
    const Mat2& m = a.matrix();
    MatrixPair out{m * p.g * m.inverse(), m * p.h * m.inverse()};
    if (distance(Isometry(commutator(out.g, out.h)), Isometry(q)) < 1e-7) return out;
  }
  throw Error(ErrorCode::PreconditionFailed, "commutator could not be aligned");
}

Genus2Split split_genus2(const Genus2Rep& rep) {
  const double residual = rep.relator_residual();
  if (!(residual < kRelatorTol)) {
    std::ostringstream os;
    os << "relator residual " << residual;
    throw Error(ErrorCode::RelatorViolation, os.str());
  }
  if (is_identity(commutator(rep.g0, rep.h0))) {
    throw Error(ErrorCode::IdentityCommutator, "[g0, h0] is the identity");
  }
  Genus2Split out;
  out.euler = rep.euler();
  const IsoClass cls = classify(commutator(rep.g0, rep.h0));
  out.kase = cls.label == IsoLabel::ELLIPTIC    ? GlueCase::ELLIPTIC
             : cls.label == IsoLabel::PARABOLIC ? GlueCase::PARABOLIC
                                                : GlueCase::HYPERBOLIC;
  if (out.kase != GlueCase::HYPERBOLIC && std::abs(out.euler) != 1) {
    throw Error(ErrorCode::PreconditionFailed,
                "euler class " + std::to_string(out.euler) + " with a non-hyperbolic separating curve");
  }

  Isometry g0 = rep.g0, h0 = rep.h0, g1 = rep.g1, h1 = rep.h1;
  Lift l0 = commutator_lift(g0, h0), l1 = commutator_lift(g1, h1);
  if (out.kase == GlueCase::ELLIPTIC) {
    out.swapped = std::abs(theta(l0)) > 0.5 * kPi + 1e-12;
  } else if (out.kase == GlueCase::PARABOLIC) {
    out.swapped = region(l0).index != 0;
  }
  if (out.swapped) {
    std::swap(g0, g1);
    std::swap(h0, h1);
    std::swap(l0, l1);
  }
  out.region0 = region(l0);
  out.region1 = region(l1);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.theta0 = out.kase == GlueCase::ELLIPTIC ? theta(l0) : nan;
  out.theta1 = out.kase == GlueCase::ELLIPTIC ? theta(l1) : nan;

  if (out.kase == GlueCase::ELLIPTIC) {
    const RegionLabel want{RegionKind::ELL, out.euler};
    const double sum = out.theta0 + out.theta1;
    if (!(out.region0 == want) || !(out.region1 == want) ||
        std::abs(sum - static_cast<double>(out.euler) * kPi) > 1e-8) {
      throw Error(ErrorCode::InvariantViolation,
                  "commutator lifts " + to_string(out.region0) + ", " + to_string(out.region1));
    }
  } else if (out.kase == GlueCase::PARABOLIC) {
    const double t0 = sl_trace_of_commutator(g0, h0), t1 = sl_trace_of_commutator(g1, h1);
    if (std::abs(t0 - 2.0) > kTraceTol || std::abs(t1 + 2.0) > kTraceTol) {
      std::ostringstream os;
      os << "commutator traces " << t0 << ", " << t1;
      throw Error(ErrorCode::InvariantViolation, os.str());
    }
  }

  out.l = g0.inverse() * h0.inverse() * g1 * h1;
  out.g0 = g0;
  out.h0 = h0;
  out.g1 = conjugate(out.l, g1);
  out.h1 = conjugate(out.l, h1);
  return out;
}

GluedDomain glue_genus2(const Genus2Rep& rep, const GlueOptions& options) {
  const Genus2Split sp = split_genus2(rep);
  if (sp.kase == GlueCase::HYPERBOLIC) {
    throw Error(ErrorCode::PreconditionFailed, "hyperbolic separating curve; use glue_hyperbolic");
  }
  const Isometry k0 = commutator(sp.g0.inverse(), sp.h0.inverse());
  int tried = 0;
  auto attempt = [&](const HPoint& p0, double scale, int station) -> std::optional<GluedDomain> {
    ++tried;
    const Pentagon a = build_pentagon(sp.g0, sp.h0, p0);
    if (!a.valid()) return std::nullopt;
    auto d = try_glue(a, build_pentagon(sp.g1, sp.h1, k0.apply(p0)), sp.kase);
    if (d) {
      d->euler_certificate = sp.euler;
      d->scale = scale;
      d->station = station;
      d->stations_tried = tried;
    }
    return d;
  };

  if (sp.kase == GlueCase::ELLIPTIC) {
    const HPoint r = *fixed_data(k0).center;
    const Mat2 n = point_normalizer(r);
    HPoint ref = sp.g0.apply(r);
    if (dist(ref, r) < 1e-9) ref = sp.h0.apply(r);
    const double phi0 = dist(ref, r) < 1e-9 ? 0.0 : std::arg(to_disk(HPoint(n.apply(ref.z()))));
    auto on_circle = [&](double eps, double phi) {
      const Complex w = std::tanh(0.5 * eps) * std::polar(1.0, phi0 + phi);
      return HPoint(n.inverse().apply(disk_to_halfplane(w)));
    };
    const Pentagon probe = build_pentagon(sp.g0, sp.h0, on_circle(1.0, 0.0));
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) gap = std::min(gap, dist(probe.vertex(i), probe.vertex(j)));
    }
    const double eps0 = gap > 0.0 && std::isfinite(gap) ? std::min(1.0, 0.5 * gap) : 1.0;
    for (int j = 0; j <= options.halvings; ++j) {
      const double eps = std::ldexp(eps0, -j);
      for (int k = 0; k < options.stations; ++k) {
        if (auto d = attempt(on_circle(eps, kTwoPi * k / options.stations), eps, k)) return *d;
      }
    }
  } else {
    const BoundaryPoint r = *fixed_data(k0).fixed;
    const Mat2 n = to_infinity(r);
    const Mat2 kn = n * k0.matrix() * n.inverse();
    const double shift = kn.b / kn.a;
    std::vector<double> xs;
    for (const Isometry& a : {sp.g0, sp.h0}) {
      for (const auto& f : finite_fixed_points(Isometry(n * a.matrix() * n.inverse()))) {
        xs.push_back(f.x());
      }
    }
    double mid = 0.0, spread = 0.0;
    if (!xs.empty()) {
      const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
      mid = 0.5 * (*lo + *hi);
      spread = *hi - *lo;
    }
    const double half = 2.0 * std::max(std::abs(shift), spread);
    for (int j = 0; j <= options.halvings; ++j) {
      const double height = std::ldexp(half, j);
      for (int k = 0; k < options.stations; ++k) {
        const double x = mid - half + 2.0 * half * (k + 0.5) / options.stations;
        const HPoint p0(n.inverse().apply(Complex(x, height)));
        if (auto d = attempt(p0, height, k)) return *d;
      }
    }
  }
  std::ostringstream os;
  os << "no compatible basepoint after " << tried << " stations";
  throw Error(ErrorCode::SearchExhausted, os.str());
}

GluedDomain glue_hyperbolic(const std::optional<Pentagon>& certificate, const Isometry& gw,
                            const Isometry& hw, double t, const GlueOptions& options) {
  if (!certificate || !certificate->valid()) {
    throw Error(ErrorCode::CertificateMissing, "no valid pentagon for the S1 side");
  }
  if (!(t > 2.0)) throw Error(ErrorCode::PreconditionFailed, "boundary trace must exceed 2");
  const Isometry& g1 = certificate->g;
  const Isometry& h1 = certificate->h;
  const double t1 = sl_trace_of_commutator(g1, h1), tw = sl_trace_of_commutator(gw, hw);
  const double tol = 1e-9 * std::max(1.0, t);
  if (std::abs(std::abs(t1) - t) > tol || std::abs(std::abs(tw) - t) > tol) {
    std::ostringstream os;
    os << "boundary traces " << t1 << ", " << tw << " do not match " << t;
    throw Error(ErrorCode::PreconditionFailed, os.str());
  }
  const Isometry k1 = commutator(g1.inverse(), h1.inverse());
  const HPoint& p = certificate->p;
  const double offset = distance_to_geodesic(*fixed_data(k1).axis, p);
  if (offset > collar_width(t)) {
    std::ostringstream os;
    os << "basepoint at distance " << offset << " lies outside the collar of width "
       << collar_width(t);
    throw Error(ErrorCode::NoCompatibleBasepoint, os.str());
  }
  const std::int64_t want = certificate->report.orientation == Orientation::CCW ? 1 : -1;
  // Work where p = i; far from p the generator entries grow and the relator
  // loses precision.
  const Isometry n(point_normalizer(p));
  const Isometry ng1 = conjugate(n, g1), nh1 = conjugate(n, h1), nk1 = conjugate(n, k1);
  const Pentagon ncert = build_pentagon(ng1, nh1, HPoint(0.0, 1.0));
  const Isometry target = commutator(ng1, nh1).inverse();

  int tried = 0, skipped = 0;
  std::int64_t e = 0;
  for (const auto& [gword, hword] : commutator_preserving_bases(options.stations)) {
    ++tried;
    const Isometry a = evaluate_word(gword, gw, hw), b = evaluate_word(hword, gw, hw);
    const Isometry align = aligning_conjugator(commutator(a, b), target);
    const Genus2Rep rep{ng1, nh1, conjugate(align, a), conjugate(align, b)};
    // The moves preserve the Euler class; later bases only need the relator.
    if (tried == 1) {
      e = rep.euler();
      if (e != want) {
        throw Error(ErrorCode::PreconditionFailed,
                    "glued euler class " + std::to_string(e) + " but the certificate needs " +
                        std::to_string(want));
      }
    } else if (!(rep.relator_residual() < kRelatorTol)) {
      ++skipped;
      continue;
    }
    const Isometry l = ng1.inverse() * nh1.inverse() * rep.g1 * rep.h1;
    const Isometry gl = conjugate(l, rep.g1), hl = conjugate(l, rep.h1);
    const Pentagon pw = build_pentagon(gl, hl, nk1.apply(HPoint(0.0, 1.0)));
    auto d = try_glue(ncert, pw, GlueCase::HYPERBOLIC);
    if (!d) continue;
    *d = transformed(*d, n.inverse());
    d->euler_certificate = e;
    d->scale = offset;
    d->station = tried - 1;
    d->stations_tried = tried;
    d->w_g_word = gword;
    d->w_h_word = hword;
    return *d;
  }
  std::ostringstream os;
  os << "no W basis among " << tried << " gives a compatible pentagon (" << skipped
     << " skipped for relator precision)";
  throw Error(ErrorCode::NoCompatibleBasepoint, os.str());
}

Genus2Rep regular_octagon_rep() {
  // Side k has its midpoint in direction k pi / 4 at distance rho from the
  // centre, cosh rho = cot(pi / 8); its ideal endpoints sit at angles
  // k pi / 4 +- alpha in the disc.
  const double rho = std::acosh(1.0 / std::tan(kPi / 8.0));
  const double m = std::tanh(0.5 * rho);
  const double alpha = std::acos(2.0 * m / (1.0 + m * m));
  auto side = [&](int k) {
    const double c = k * kPi / 4.0;
    return Geodesic(boundary_from_disk(std::polar(1.0, c - alpha)),
                    boundary_from_disk(std::polar(1.0, c + alpha)));
  };
  // Reflect in the diameter bisecting sides i and j, then in side j.
  auto pairing = [&](int i, int j) {
    const double c = (i + j) * kPi / 8.0;
    const Geodesic bisector(boundary_from_disk(std::polar(1.0, c)),
                            boundary_from_disk(std::polar(1.0, c + kPi)));
    return compose_reflections(bisector, side(j));
  };
  return {pairing(0, 2).inverse(), pairing(1, 3), pairing(4, 6).inverse(), pairing(5, 7)};
}

Isometry evaluate_surface_word(const SurfaceRep& rep, const std::string& word) {
  const auto names = generator_names(rep.genus, rep.boundary_count);
  std::string cleaned = word;
  std::replace(cleaned.begin(), cleaned.end(), '*', ' ');
  std::istringstream in(cleaned);
  Mat2 acc = Mat2::identity();
  std::string token;
  while (in >> token) {
    bool inverse = false;
    if (token.size() > 3 && token.compare(token.size() - 3, 3, "^-1") == 0) {
      inverse = true;
      token.resize(token.size() - 3);
    }
    const auto it = std::find(names.begin(), names.end(), token);
    if (it == names.end()) throw Error(ErrorCode::MalformedInput, "unknown generator '" + token + "'");
    const Mat2& m = rep.generators[static_cast<std::size_t>(it - names.begin())].matrix();
    acc = acc * (inverse ? m.inverse() : m);
  }
  return Isometry(acc);
}

std::vector<GeodesicPolygon> tiling_preview(const GeodesicPolygon& polygon,
                                            const std::vector<Isometry>& pairings, int n) {
  std::vector<Isometry> letters;
  for (const auto& a : pairings) {
    letters.push_back(a);
    letters.push_back(a.inverse());
  }
  std::vector<GeodesicPolygon> out{polygon};
  // Frontier of reduced words: (element, index of the last letter).
  std::vector<std::pair<Isometry, int>> frontier{{Isometry(), -1}};
  for (int len = 1; len <= n; ++len) {
    std::vector<std::pair<Isometry, int>> next;
    for (const auto& [w, last] : frontier) {
      for (int i = 0; i < static_cast<int>(letters.size()); ++i) {
        if (last >= 0 && (i ^ 1) == last) continue;
        const Isometry x = w * letters[i];
        GeodesicPolygon tile;
        for (const auto& v : polygon.vertices) tile.vertices.push_back(x.apply(v));
        out.push_back(std::move(tile));
        next.emplace_back(x, i);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

namespace {

PieceDomain pants_piece(const Isometry& c1, const Isometry& c2, std::int64_t sign) {
  PieceDomain piece;
  piece.kind = PieceKind::PANTS;
  piece.generators = {c1, c2};
  piece.boundary = {c1, c2, (c1 * c2).inverse()};
  if (sign > 0) {
    const PantsDomain d = build_pants(c1, c2);
    piece.polygon = d.octagon;
  } else {
    // Build the mirror image and reflect it back with z -> -conj(z).
    const PantsDomain d = build_pants(Isometry(mirror(c1.matrix())), Isometry(mirror(c2.matrix())));
    for (const auto& v : d.octagon.vertices) {
      if (const auto* b = std::get_if<BoundaryPoint>(&v)) {
        piece.polygon.vertices.push_back(b->is_infinite() ? *b : BoundaryPoint::real(-b->x()));
      } else {
        const HPoint& q = std::get<HPoint>(v);
        piece.polygon.vertices.push_back(HPoint(-q.x(), q.y()));
      }
    }
  }
  piece.report = polygon_validate(piece.polygon);
  return piece;
}

/// Side of the polygon whose endpoints lie on the axis, and the side of the
/// axis its remaining vertices occupy.
std::pair<int, int> incidence(const GeodesicPolygon& poly, const Geodesic& axis, double& err) {
  const int n = static_cast<int>(poly.vertices.size());
  auto on_axis = [&](const PlanePoint& v, double& e) {
    if (const auto* q = std::get_if<HPoint>(&v)) {
      e = distance_to_geodesic(axis, *q);
      return e < 1e-7;
    }
    const auto& b = std::get<BoundaryPoint>(v);
    e = 0.0;
    return b.near(axis.lo()) || b.near(axis.hi());
  };
  int side = -1;
  for (int i = 0; i < n && side < 0; ++i) {
    double e1 = 0.0, e2 = 0.0;
    if (on_axis(poly.vertices[i], e1) && on_axis(poly.vertices[(i + 1) % n], e2)) {
      side = i;
      err = std::max(e1, e2);
    }
  }
  if (side < 0) return {-1, 0};
  int sign = 0;
  for (const auto& v : poly.vertices) {
    double e = 0.0;
    if (on_axis(v, e)) continue;
    const auto* q = std::get_if<HPoint>(&v);
    if (!q) continue;
    const int s = side_of(axis, *q);
    if (s == 0) continue;
    if (sign == 0) {
      sign = s;
    } else if (sign != s) {
      return {side, 0};
    }
  }
  return {side, sign};
}

}  // namespace

Assembly assemble_extremal(const SurfaceRep& rep, const Decomposition& dec, int preview_length) {
  Assembly out;
  out.chi = rep.euler_characteristic();
  std::vector<Isometry> curves;
  for (const auto& e : dec.edges) {
    const Isometry c = evaluate_surface_word(rep, e.curve);
    const IsoLabel label = classify(c).label;
    if (label == IsoLabel::ELLIPTIC) {
      throw Error(ErrorCode::EllipticDecompositionCurve, "curve '" + e.curve + "' is elliptic");
    }
    if (label != IsoLabel::HYPERBOLIC) {
      throw Error(ErrorCode::PreconditionFailed, "curve '" + e.curve + "' is not hyperbolic");
    }
    curves.push_back(c);
  }

  out.euler = euler_class(rep);
  if (std::abs(out.euler) != std::abs(out.chi)) {
    throw Error(ErrorCode::NonExtremal, "euler class " + std::to_string(out.euler) +
                                            " is not +-chi = " + std::to_string(out.chi));
  }
  const std::int64_t sign = out.euler > 0 ? 1 : -1;

  std::int64_t total = 0;
  for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
    const Piece& pc = dec.pieces[i];
    if (pc.words.size() != 2) throw Error(ErrorCode::MalformedInput, "a piece needs two words");
    const Isometry tr = evaluate_surface_word(rep, pc.transport);
    const Isometry a = conjugate(tr, evaluate_surface_word(rep, pc.words[0]));
    const Isometry b = conjugate(tr, evaluate_surface_word(rep, pc.words[1]));
    std::int64_t e = 0;
    PieceDomain piece;
    if (pc.kind == PieceKind::PANTS) {
      e = euler_class({0, 3, {a, b, (a * b).inverse()}});
      if (e != sign) {
        throw Error(ErrorCode::PieceEulerMismatch,
                    "piece " + std::to_string(i) + " has euler class " + std::to_string(e));
      }
      piece = pants_piece(a, b, sign);
    } else {
      e = euler_class({1, 1, {a, b, commutator(a, b).inverse()}});
      if (e != sign) {
        throw Error(ErrorCode::PieceEulerMismatch,
                    "piece " + std::to_string(i) + " has euler class " + std::to_string(e));
      }
      const auto pent = torus_pentagon(a, b, 64, std::nullopt);
      if (!pent) throw Error(ErrorCode::SearchExhausted, "no pentagon for torus piece " + std::to_string(i));
      piece.kind = PieceKind::PUNCTURED_TORUS;
      piece.polygon = pent->polygon;
      piece.report = pent->report;
      piece.generators = {a, b};
      piece.boundary = {commutator(a.inverse(), b.inverse())};
    }
    piece.euler = e;
    total += e;
    out.pieces.push_back(std::move(piece));
  }
  if (total != out.euler) {
    throw Error(ErrorCode::PieceEulerMismatch, "piece classes sum to " + std::to_string(total) +
                                                   ", surface class " + std::to_string(out.euler));
  }

  for (std::size_t k = 0; k < dec.edges.size(); ++k) {
    const auto& e = dec.edges[k];
    const Geodesic axis = *fixed_data(curves[k]).axis;
    EdgeCheck check;
    check.edge = static_cast<int>(k);
    double ea = 0.0, eb = 0.0;
    std::tie(check.side_a, check.sign_a) = incidence(out.pieces.at(e.piece_a).polygon, axis, ea);
    std::tie(check.side_b, check.sign_b) = incidence(out.pieces.at(e.piece_b).polygon, axis, eb);
    check.incidence_error = std::max(ea, eb);
    check.ok = check.side_a >= 0 && check.side_b >= 0 && check.sign_a != 0 &&
               check.sign_a == -check.sign_b;
    out.edges.push_back(check);
  }
  for (const auto& p : out.pieces) {
    out.tiling.push_back(tiling_preview(p.polygon, p.generators, preview_length));
  }
  return out;
}

ConeEulerReport cone_euler_check(int chi, const std::vector<double>& cone_angles,
                                 std::int64_t euler) {
  ConeEulerReport r;
  r.chi = chi;
  r.cone_angles = cone_angles;
  r.euler = euler;
  double sum = 0.0;
  for (double theta : cone_angles) {
    r.s.push_back(theta / kTwoPi - 1.0);
    sum += r.s.back();
  }
  r.predicted = std::abs(chi + sum);
  r.consistent = std::abs(r.predicted - std::abs(static_cast<double>(euler))) < 1e-6;
  return r;
}

ConeEulerReport cone_euler_check(const GluedDomain& domain) {
  return cone_euler_check(-2, {domain.cone_angle}, domain.euler_certificate);
}

std::vector<ConeEulerReport> cone_euler_check(const Assembly& assembly) {
  std::vector<ConeEulerReport> out;
  for (const auto& p : assembly.pieces) out.push_back(cone_euler_check(-1, {}, p.euler));
  out.push_back(cone_euler_check(assembly.chi, {}, assembly.euler));
  return out;
}

}  // namespace hypcone
