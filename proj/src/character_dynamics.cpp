#include "hypcone/character_dynamics.hpp"

#include <cmath>
#include <sstream>

#include "hypcone/errors.hpp"

namespace hypcone {

namespace {

constexpr double kDescentTol = 1e-12;
constexpr double kReducibleTol = 1e-9;

bool is_small(double v) { return v > -2.0 && v < 2.0; }

double sum_sq(const Character& c) { return c.x * c.x + c.y * c.y + c.z * c.z; }

// Traces (x, y, z) with |z| >= 2, in companion form.
MatrixPair companion(double x, double y, double z) {
  const double s = z >= 0.0 ? 1.0 : -1.0;
  const double xi = 0.5 * (z + s * std::sqrt(std::max(0.0, z * z - 4.0)));
  return {Mat2{x, -1.0, 1.0, 0.0}, Mat2{0.0, xi, -1.0 / xi, y}};
}

// Traces (x, y, z) with |y| >= 2: build (x, z, y) and change basis back.
MatrixPair via_second(double x, double y, double z) {
  const MatrixPair p = companion(x, z, y);
  return {p.g.inverse(), p.g * p.h};
}

}  // namespace

double kappa(double x, double y, double z) { return x * x + y * y + z * z - x * y * z - 2.0; }

bool in_variety(const Character& c) {
  return kappa(c) >= 2.0 || !is_small(c.x) || !is_small(c.y) || !is_small(c.z);
}

Character character_of(const Mat2& g, const Mat2& h) {
  return {g.trace(), h.trace(), (g * h).trace()};
}

GammaMove GammaMove::vieta(int axis) {
  static constexpr MoveKind kinds[] = {MoveKind::VIETA_X, MoveKind::VIETA_Y, MoveKind::VIETA_Z};
  return {kinds[axis], {0, 1, 2}};
}

std::string to_string(const GammaMove& m) {
  switch (m.kind) {
    case MoveKind::VIETA_X: return "VIETA_X";
    case MoveKind::VIETA_Y: return "VIETA_Y";
    case MoveKind::VIETA_Z: return "VIETA_Z";
    case MoveKind::SIGN_XY: return "SIGN_XY";
    case MoveKind::SIGN_YZ: return "SIGN_YZ";
    case MoveKind::SIGN_ZX: return "SIGN_ZX";
    case MoveKind::PERM: {
      static const char letters[] = {'x', 'y', 'z'};
      std::string s = "PERM(";
      for (int i : m.perm) s += letters[i];
      return s + ")";
    }
  }
  return "UNKNOWN";
}

Character gamma_apply(const Character& c, const GammaMove& m) {
  switch (m.kind) {
    case MoveKind::VIETA_X: return {c.y * c.z - c.x, c.y, c.z};
    case MoveKind::VIETA_Y: return {c.x, c.x * c.z - c.y, c.z};
    case MoveKind::VIETA_Z: return {c.x, c.y, c.x * c.y - c.z};
    case MoveKind::SIGN_XY: return {-c.x, -c.y, c.z};
    case MoveKind::SIGN_YZ: return {c.x, -c.y, -c.z};
    case MoveKind::SIGN_ZX: return {-c.x, c.y, -c.z};
    case MoveKind::PERM: {
      const double v[] = {c.x, c.y, c.z};
      return {v[m.perm[0]], v[m.perm[1]], v[m.perm[2]]};
    }
  }
  return c;
}

Character gamma_apply(Character c, const std::vector<GammaMove>& word) {
  for (const auto& m : word) c = gamma_apply(c, m);
  return c;
}

std::string to_string(ReductionType t) { return t == ReductionType::PANTS ? "PANTS" : "ELLIPTIC"; }

ReductionOutcome goldman_reduce(const Character& c, std::size_t max_iter) {
  if (!(kappa(c) > 2.0)) {
    throw Error(ErrorCode::PreconditionFailed, "goldman_reduce needs kappa > 2");
  }
  ReductionOutcome out;
  Character cur = c;
  auto apply = [&](const GammaMove& m) {
    cur = gamma_apply(cur, m);
    out.moves.push_back(m);
  };
  for (std::size_t it = 0; it < max_iter; ++it) {
    out.iterations = it;
    if (is_small(cur.x) || is_small(cur.y) || is_small(cur.z)) {
      out.type = ReductionType::ELLIPTIC;
      out.witness = cur;
      return out;
    }
    if (cur.x <= -2.0 && cur.y <= -2.0 && cur.z <= -2.0) {
      out.type = ReductionType::PANTS;
      out.witness = cur;
      return out;
    }
    const double base = sum_sq(cur);
    int best = -1;
    double best_gain = kDescentTol;
    for (int axis = 0; axis < 3; ++axis) {
      const double gain = base - sum_sq(gamma_apply(cur, GammaMove::vieta(axis)));
      if (gain > best_gain) {
        best_gain = gain;
        best = axis;
      }
    }
    if (best >= 0) {
      apply(GammaMove::vieta(best));
      continue;
    }
    // Stalled with every |coordinate| >= 2: fix signs pairwise.
    const bool px = cur.x > 0.0, py = cur.y > 0.0, pz = cur.z > 0.0;
    const int positives = px + py + pz;
    if (positives == 2) {
      apply({px && py ? MoveKind::SIGN_XY : (py && pz ? MoveKind::SIGN_YZ : MoveKind::SIGN_ZX)});
      continue;
    }
    // Odd sign pattern: step off the stall along the largest coordinate.
    int axis = 0;
    if (std::abs(cur.y) > std::abs(cur.x)) axis = 1;
    if (std::abs(cur.z) > std::abs(axis == 0 ? cur.x : cur.y)) axis = 2;
    apply(GammaMove::vieta(axis));
  }
  throw Error(ErrorCode::IterationBudgetExceeded,
              "no classification after " + std::to_string(max_iter) + " iterations");
}

MatrixPair char_to_rep(const Character& c) {
  const double k = kappa(c);
  if (std::abs(k - 2.0) < kReducibleTol) {
    throw Error(ErrorCode::ReducibleCharacter, "kappa = 2: character is reducible");
  }
  if (!in_variety(c)) throw Error(ErrorCode::NotInVariety, "character is not in X(S)");
  if (!is_small(c.z)) return companion(c.x, c.y, c.z);
  if (!is_small(c.y)) return via_second(c.x, c.y, c.z);
  if (!is_small(c.x)) {
    // (y, x, z) has its large trace second; then swap the generators.
    const MatrixPair p = via_second(c.y, c.x, c.z);
    return {p.h, p.g};
  }
  // All traces in (-2, 2) and kappa > 2: two rotations about points at distance delta.
  const double alpha = std::acos(c.x / 2.0);
  const double beta0 = std::acos(c.y / 2.0);
  for (double beta : {beta0, -beta0}) {
    const double denom = 2.0 * std::sin(alpha) * std::sin(beta);
    const double cosh_delta = (2.0 * std::cos(alpha) * std::cos(beta) - c.z) / denom;
    if (!(cosh_delta >= 1.0)) continue;
    const double e = std::exp(std::acosh(cosh_delta));
    const Mat2 g = Mat2::rotation(alpha);
    const Mat2 h{std::cos(beta), -e * std::sin(beta), std::sin(beta) / e, std::cos(beta)};
    return {g, h};
  }
  std::ostringstream os;
  os << "no real two-rotation solution for (" << c.x << ", " << c.y << ", " << c.z << ")";
  throw Error(ErrorCode::NotInVariety, os.str());
}

double portable_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Character sample_level_set(double t, double box, std::mt19937_64& rng, std::size_t max_rejects) {
  if (!(t > 2.0)) throw Error(ErrorCode::PreconditionFailed, "level must exceed 2");
  for (std::size_t i = 0; i < max_rejects; ++i) {
    const double x = -box + 2.0 * box * portable_uniform(rng);
    const double y = -box + 2.0 * box * portable_uniform(rng);
    const bool upper = portable_uniform(rng) < 0.5;
    // z^2 - xy z + (x^2 + y^2 - 2 - t) = 0
    const double b = -x * y;
    const double cc = x * x + y * y - 2.0 - t;
    const double disc = b * b - 4.0 * cc;
    if (disc < 0.0) continue;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    const double r1 = q;
    const double r2 = q != 0.0 ? cc / q : q;
    const double lo = std::min(r1, r2), hi = std::max(r1, r2);
    return {x, y, upper ? hi : lo};
  }
  throw Error(ErrorCode::EmptyAfterMaxRejects, "sampler rejected every draw");
}

}  // namespace hypcone
