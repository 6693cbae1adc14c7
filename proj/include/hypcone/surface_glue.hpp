#pragma once

// Cone-manifold structures on closed genus-2 surfaces from two one-holed
// tori, and assembly of extremal structures from pants and tori.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypcone/character_dynamics.hpp"
#include "hypcone/covering_group.hpp"
#include "hypcone/domain_builder.hpp"

namespace hypcone {

/// Generator images with [g0,h0][g1,h1] = 1.
struct Genus2Rep {
  Isometry g0, h0, g1, h1;

  SurfaceRep surface() const { return {2, 0, {g0, h0, g1, h1}}; }
  double relator_residual() const { return hypcone::relator_residual(surface()); }
  std::int64_t euler() const { return euler_class(surface()); }
};

enum class GlueCase { ELLIPTIC, PARABOLIC, HYPERBOLIC };

std::string to_string(GlueCase c);

struct Genus2Split {
  GlueCase kase = GlueCase::ELLIPTIC;
  /// rho0 and rho1 after the second pair is conjugated by rho(L),
  /// L = G0^-1 H0^-1 G1 H1. Then [g0^-1,h0^-1] [g1^-1,h1^-1] = 1.
  Isometry g0, h0, g1, h1;
  Isometry l;
  /// The input pairs were exchanged so that rho0 is the pair the gluing
  /// expects first (|Theta| <= pi/2, or the trace 2 commutator).
  bool swapped = false;
  std::int64_t euler = 0;
  RegionLabel region0, region1;
  /// Theta of the canonical commutator lifts; NaN unless elliptic.
  double theta0 = 0.0, theta1 = 0.0;
};

/// Throws RelatorViolation, IdentityCommutator, PreconditionFailed (euler not
/// +-1 with a non-hyperbolic commutator) or InvariantViolation.
Genus2Split split_genus2(const Genus2Rep& rep);

struct GlueOptions {
  int stations = 64;
  int halvings = 30;
};

/// Octagon p0 q0 r0 s0 t0 q1 r1 s1 made of Pent(g0,h0;p0) and
/// Pent(g1,h1;p1) glued along their boundary edges, t0 = p1 and t1 = p0.
struct GluedDomain {
  GlueCase kase = GlueCase::ELLIPTIC;
  GeodesicPolygon octagon;
  ValidityReport report;
  /// g0, h0, g1, h1 in the frame of the octagon.
  std::array<Isometry, 4> pairings;
  /// For side i (vertex i to i+1), the pentagon it came from.
  std::array<int, 8> side_piece{};
  Pentagon pent0, pent1;
  double cone_angle = 0.0;
  double area = 0.0;
  std::int64_t euler_certificate = 0;
  /// Size of the orbit of vertex 0 under the pairings and their inverses.
  int vertex_orbit = 0;
  /// Largest distance between a paired vertex image and its target.
  double pairing_error = 0.0;
  /// Search coordinates of the accepted station: radius about the fixed point
  /// (elliptic), horocycle height in normalized coordinates (parabolic) or
  /// the collar offset of the certificate (hyperbolic).
  double scale = 0.0;
  int station = 0;
  int stations_tried = 0;
  /// Hyperbolic case: basis words of the W side over g, h.
  std::string w_g_word = "g", w_h_word = "h";
};

/// Throws the split errors, PreconditionFailed for the hyperbolic case or
/// SearchExhausted.
GluedDomain glue_genus2(const Genus2Rep& rep, const GlueOptions& options = {});

/// Genus-2 gluing across a hyperbolic separating curve of trace t. The
/// certificate is a valid Pent(g1,h1;p) with p within the collar of
/// Axis[g1^-1,h1^-1]; the W side is a one-holed torus of boundary trace t and
/// relative Euler class matching the certificate orientation. W is aligned
/// so that its commutator is [g1,h1]^-1 and its bases are searched by
/// commutator-preserving moves. Throws PreconditionFailed,
/// CertificateMissing or NoCompatibleBasepoint.
GluedDomain glue_hyperbolic(const std::optional<Pentagon>& certificate, const Isometry& gw,
                            const Isometry& hw, double t, const GlueOptions& options = {});

/// Conjugator a with a x a^-1 = y for non-elliptic or elliptic x, y with
/// the same trace and the same rotation sense or parabolic direction.
/// Throws PreconditionFailed.
Isometry aligning_conjugator(const Isometry& x, const Isometry& y);

/// A pair (g, h) with character (x, y, z) and [g, h] = q in SL(2,R), z being
/// the larger root of kappa(x, y, z) = Tr q. The pair is mirrored when the
/// rotation sense or parabolic direction does not match. Throws
/// PreconditionFailed.
MatrixPair pair_with_commutator(const Mat2& q, double x, double y);

/// The closed genus-2 surface as the regular octagon with interior angles
/// pi/4, sides paired 0-2, 1-3, 4-6, 5-7.
Genus2Rep regular_octagon_rep();

/// Words over generator names such as "G1 H1^-1 C2", separated by spaces or '*'.
Isometry evaluate_surface_word(const SurfaceRep& rep, const std::string& word);

enum class PieceKind { PANTS, PUNCTURED_TORUS };

std::string to_string(PieceKind k);

struct Piece {
  PieceKind kind = PieceKind::PANTS;
  /// PANTS: c1, c2 (c3 = (c1 c2)^-1). PUNCTURED_TORUS: g, h.
  std::vector<std::string> words;
  /// Conjugates every piece word: w -> transport w transport^-1.
  std::string transport;
};

struct DecompositionEdge {
  int piece_a = 0, piece_b = 0;
  std::string curve;
};

struct Decomposition {
  std::vector<Piece> pieces;
  std::vector<DecompositionEdge> edges;
};

struct PieceDomain {
  PieceKind kind = PieceKind::PANTS;
  GeodesicPolygon polygon;
  ValidityReport report;
  /// Boundary holonomy: c1, c2, c3 or the torus boundary [g^-1, h^-1].
  std::vector<Isometry> boundary;
  /// Generators in the frame of the polygon.
  std::vector<Isometry> generators;
  std::int64_t euler = 0;
};

struct EdgeCheck {
  int edge = 0;
  /// Side index on each incident domain lying on the curve axis, or -1.
  int side_a = -1, side_b = -1;
  double incidence_error = 0.0;
  /// Sign of the side of the axis each domain occupies.
  int sign_a = 0, sign_b = 0;
  bool ok = false;
};

struct Assembly {
  std::vector<PieceDomain> pieces;
  std::vector<EdgeCheck> edges;
  std::int64_t euler = 0;
  int chi = 0;
  /// Translates of each piece polygon by group words up to the preview length.
  std::vector<std::vector<GeodesicPolygon>> tiling;
};

/// Throws NonExtremal, EllipticDecompositionCurve, PieceEulerMismatch,
/// SearchExhausted (no torus pentagon found) or the pants errors.
Assembly assemble_extremal(const SurfaceRep& rep, const Decomposition& dec,
                           int preview_length = 2);

struct ConeEulerReport {
  int chi = 0;
  std::vector<double> cone_angles;
  std::vector<double> s;
  /// |chi + sum s|.
  double predicted = 0.0;
  std::int64_t euler = 0;
  bool consistent = false;
};

ConeEulerReport cone_euler_check(int chi, const std::vector<double>& cone_angles,
                                 std::int64_t euler);
/// Genus 2 with one cone point at the octagon vertex orbit.
ConeEulerReport cone_euler_check(const GluedDomain& domain);
/// Each piece alone (no cone points) and the whole surface.
std::vector<ConeEulerReport> cone_euler_check(const Assembly& assembly);

/// Translates of a polygon by reduced words of length <= n in the pairings.
std::vector<GeodesicPolygon> tiling_preview(const GeodesicPolygon& polygon,
                                            const std::vector<Isometry>& pairings, int n);

}  // namespace hypcone
