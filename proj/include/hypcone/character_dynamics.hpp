#pragma once

// Characters of the one-holed torus: (x, y, z) = (Tr g, Tr h, Tr gh).

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hypcone/mat2.hpp"

namespace hypcone {

struct Character {
  double x = 0.0, y = 0.0, z = 0.0;

  friend bool operator==(const Character&, const Character&) = default;
};

/// x^2 + y^2 + z^2 - xyz - 2, which equals Tr[g,h].
double kappa(double x, double y, double z);
inline double kappa(const Character& c) { return kappa(c.x, c.y, c.z); }

/// Membership in X(S): kappa >= 2 or some |coordinate| >= 2.
bool in_variety(const Character& c);

Character character_of(const Mat2& g, const Mat2& h);

enum class MoveKind { VIETA_X, VIETA_Y, VIETA_Z, SIGN_XY, SIGN_YZ, SIGN_ZX, PERM };

struct GammaMove {
  MoveKind kind = MoveKind::VIETA_X;
  /// For PERM: new coordinate i is old coordinate perm[i].
  std::array<int, 3> perm{0, 1, 2};

  static GammaMove vieta(int axis);
  static GammaMove permutation(std::array<int, 3> p) { return {MoveKind::PERM, p}; }

  friend bool operator==(const GammaMove&, const GammaMove&) = default;
};

std::string to_string(const GammaMove& m);

Character gamma_apply(const Character& c, const GammaMove& m);
Character gamma_apply(Character c, const std::vector<GammaMove>& word);

enum class ReductionType { PANTS, ELLIPTIC };

std::string to_string(ReductionType t);

struct ReductionOutcome {
  ReductionType type = ReductionType::ELLIPTIC;
  Character witness;
  std::vector<GammaMove> moves;
  std::size_t iterations = 0;
};

/// Greedy sum-of-squares descent over Vieta moves, followed by sign
/// normalization. Requires kappa > 2.
ReductionOutcome goldman_reduce(const Character& c, std::size_t max_iter = 100000);

struct MatrixPair {
  Mat2 g, h;
};

/// SL(2,R) matrices with the given character. Throws ReducibleCharacter
/// (kappa = 2) or NotInVariety.
MatrixPair char_to_rep(const Character& c);

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double portable_uniform(std::mt19937_64& rng);

/// Random point of the level set kappa = t over a uniform (x, y) in [-box, box]^2.
Character sample_level_set(double t, double box, std::mt19937_64& rng,
                           std::size_t max_rejects = 100000);

}  // namespace hypcone
