#pragma once

// The universal cover of PSL(2,R), realized as lifts of the action on the
// projective circle RP^1 = R / pi. Angles are in radians; one full turn of
// RP^1 is pi, so the central generator z acts as x -> x + pi.

#include <cstdint>
#include <string>
#include <vector>

#include "hypcone/isometries.hpp"

namespace hypcone {

/// Principal lift g_A of the circle map x -> angle(A (cos x, sin x)) mod pi,
/// normalized so that g_A(0) lies in [0, pi).
double principal_lift(const Mat2& a, double x);

struct Lift {
  Isometry base;
  std::int64_t winding = 0;

  static Lift identity() { return {}; }
  /// The central generator z.
  static Lift central(std::int64_t n = 1) { return {Isometry(), n}; }

  /// The lifted map x -> g_base(x) + winding * pi.
  double operator()(double x) const;
};

Lift lift_multiply(const Lift& l1, const Lift& l2);
inline Lift operator*(const Lift& l1, const Lift& l2) { return lift_multiply(l1, l2); }
Lift lift_inverse(const Lift& l);
/// Canonical commutator lift g~ h~ g~^-1 h~^-1 with g~, h~ of winding 0.
Lift commutator_lift(const Isometry& g, const Isometry& h);

/// Milnor's angle function: the continuous lift of the polar-decomposition angle.
double theta(const Lift& l);

/// The lift with a fixed point on R. Throws EllipticHasNoPreferredLift.
Lift simplest_lift(const Isometry& a);

/// Translation number of the lifted map, in the same units (full turn = pi).
double translation_number(const Lift& l);

enum class RegionKind { CENTRAL, HYP, PAR_PLUS, PAR_MINUS, ELL };

struct RegionLabel {
  RegionKind kind = RegionKind::CENTRAL;
  std::int64_t index = 0;
  /// Base trace within the classification tolerance of +-2.
  bool ambiguous = false;

  friend bool operator==(const RegionLabel& a, const RegionLabel& b) {
    return a.kind == b.kind && a.index == b.index;
  }
};

std::string to_string(const RegionLabel& r);
RegionLabel region(const Lift& l);

struct SurfaceRep {
  int genus = 0;
  int boundary_count = 0;
  /// G1, H1, ..., Gk, Hk, C1, ..., Cn.
  std::vector<Isometry> generators;

  int euler_characteristic() const { return 2 - 2 * genus - boundary_count; }
  const Isometry& g(int i) const { return generators[2 * i]; }
  const Isometry& h(int i) const { return generators[2 * i + 1]; }
  const Isometry& c(int j) const { return generators[2 * genus + j]; }
};

/// Names in presentation order: G1, H1, ..., C1, ...
std::vector<std::string> generator_names(int genus, int boundary_count);

/// [g1,h1]...[gk,hk] c1...cn as a PSL element.
Isometry relator(const SurfaceRep& rep);
/// Frobenius distance of the relator from the nearer of +-I.
double relator_residual(const SurfaceRep& rep);

/// Lift of the relator with canonical commutator lifts and simplest boundary lifts.
Lift relator_lift(const SurfaceRep& rep);

/// The Euler class m with relator lift = z^m. Checks |m| <= |chi|.
std::int64_t euler_class(const SurfaceRep& rep, double relator_tol = 1e-8);

/// Twist of the lift at p: angle between parallel transport and the
/// differential along p -> base p, branch chosen near twice the translation number.
double twist(const Lift& l, const HPoint& p);

}  // namespace hypcone
