#pragma once

// Fundamental domains: pentagons for one-holed tori, right-angled octagons
// for pants, and the search for good pentagons.

#include <optional>
#include <string>
#include <vector>

#include "hypcone/covering_group.hpp"
#include "hypcone/isometries.hpp"
#include "hypcone/plane_geometry.hpp"

namespace hypcone {

/// Pent(g, h; p) with vertices p, q = h^-1 g h p, r = g h p, s = h p,
/// t = [g^-1, h^-1] p. g carries t -> q, s -> r; h carries p -> s, q -> r.
/// The side p -> t is the boundary edge.
struct Pentagon {
  Isometry g, h;
  HPoint p;
  GeodesicPolygon polygon;
  ValidityReport report;
  double corner_angle = 0.0;
  /// Largest distance between a paired vertex image and its target.
  double pairing_error = 0.0;
  /// Twist of the canonical lift of [g^-1, h^-1] at p; NaN when p is fixed.
  double twist = 0.0;
  /// 3 pi - corner_angle - twist, wrapped into (-pi, pi].
  double twist_residual = 0.0;

  const HPoint& vertex(int i) const { return std::get<HPoint>(polygon.vertices[i]); }
  /// Non-degenerate, simple and, if requested, of the given orientation.
  bool valid(std::optional<Orientation> orientation = std::nullopt) const;
};

Pentagon build_pentagon(const Isometry& g, const Isometry& h, const HPoint& p,
                        double eps = kGeomEps);

/// Right-angled octagon for a pair of pants with boundary holonomy c1, c2,
/// c3 = (c1 c2)^-1. Sides in order: Ax1, s(A1), s(Ax3), s(A2), Ax2, A2, Ax3,
/// A1 where s is reflection in L0. Parabolic boundaries collapse their side
/// to an ideal vertex.
struct PantsDomain {
  Isometry c1, c2, c3;
  GeodesicPolygon octagon;
  ValidityReport report;
  /// c1 = reflection in A1 after reflection in L0; c2 = L0 after A2.
  Geodesic l0 = imaginary_axis(), a1 = imaginary_axis(), a2 = imaginary_axis();
  /// Largest Frobenius error of the recomposed reflections.
  double recompose_error = 0.0;
  /// Largest incidence error of the paired sides.
  double pairing_error = 0.0;
  /// Vertex correspondences realized by c1 (side on s(A1) onto side on A1)
  /// and by c2 (side on A2 onto side on s(A2)), as (from, to) index pairs.
  std::vector<std::pair<int, int>> c1_pairs, c2_pairs;
  /// Which boundary elements are parabolic (their side is an ideal vertex).
  bool parabolic[3] = {false, false, false};
};

/// Throws EllipticBoundary, AxesNotDisjoint, TraceProductCondition,
/// WrongEulerSide (relator lift z^-1) or PreconditionFailed.
PantsDomain build_pants(const Isometry& c1, const Isometry& c2);

struct GoodRep {
  Isometry g, h;
  HPoint p;
  double epsilon = 0.0;  // the offset actually used, sign included
  Pentagon pentagon;
};

/// The Fermi-coordinate construction on the imaginary axis. Halves epsilon
/// up to 40 times; throws EpsilonUnderflow.
GoodRep good_rep(double t, double epsilon, Orientation orientation);

/// Basis change words are over g, h with capitals for inverses.
std::string word_inverse(const std::string& w);
std::string word_reduce(const std::string& w);
Isometry evaluate_word(const std::string& w, const Isometry& g, const Isometry& h);

struct GoodnessCertificate {
  std::string g_word, h_word;
  bool orientation_preserving = true;
  int depth = 0;
  int station = 0;
  int offset_index = 0;
  HPoint p;
  double distance_to_axis = 0.0;
  Pentagon pentagon;
};

struct SearchOptions {
  int depth = 12;
  int stations = 64;
  /// Required pentagon orientation; nullopt accepts either.
  std::optional<Orientation> orientation;
  /// Bases whose largest |trace| exceeds this, or whose matrices have norm
  /// above max(1e3, initial norm), are not expanded.
  double trace_cap = 0.0;  // 0 selects max(8, 2 t, initial max)
  /// Number of bases examined, for diagnostics.
  mutable long bases_examined = 0;
};

/// Breadth-first search over orientation-preserving Nielsen moves, sampling
/// basepoints at offsets epsilon * {1/4, 1/2, 3/4, 1 - 1e-3} on both sides of
/// Axis[g'^-1, h'^-1]. Throws PreconditionFailed (commutator not hyperbolic)
/// or NotFound.
GoodnessCertificate good_search(const Isometry& g, const Isometry& h, double epsilon,
                                const SearchOptions& options);

/// Non-throwing variant.
std::optional<GoodnessCertificate> try_good_search(const Isometry& g, const Isometry& h,
                                                   double epsilon, const SearchOptions& options);

}  // namespace hypcone
