// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hypcone/character_dynamics.hpp"
#include "hypcone/cli_io.hpp"
#include "hypcone/covering_group.hpp"
#include "hypcone/domain_builder.hpp"
#include "hypcone/errors.hpp"
#include "hypcone/surface_glue.hpp"
#include "support.hpp"

using namespace hypcone;
using testsupport::random_isometry;
using testsupport::random_sl2;
using testsupport::uniform;

namespace {

// Pinned tolerances.
constexpr double kConeTol = 1e-6;
constexpr double kAreaTol = 1e-5;
constexpr double kAngleTol = 1e-6;
constexpr double kRecomposeTol = 1e-8;
constexpr double kFrickeTol = 1e-9;
constexpr double kGammaRelTol = 1e-12;
constexpr double kThetaTol = 1e-10;
constexpr double kTwistTol = 1e-6;
constexpr double kRateBar = 0.95;

struct Outcome {
  bool pass = true;
  std::string failures;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures += "FAILED " + what + "; ";
    }
  }
};

Mat2 mirror(const Mat2& m) { return {m.a, -m.b, -m.c, m.d}; }

bool is_elliptic(const Isometry& a) { return classify(a).label == IsoLabel::ELLIPTIC; }

std::vector<HPoint> finite_vertices(const GeodesicPolygon& poly) {
  std::vector<HPoint> out;
  for (const auto& v : poly.vertices) {
    if (const auto* h = std::get_if<HPoint>(&v)) out.push_back(*h);
  }
  return out;
}

std::string run_command(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  status = pclose(p);
  return out;
}

// --- 1 ---------------------------------------------------------------------------

void euler_correctness(Outcome& o) {
  std::mt19937_64 rng(1001);
  const SurfaceRep trivial{2, 0, {Isometry(), Isometry(), Isometry(), Isometry()}};
  o.require(euler_class(trivial) == 0, "identity rep");
  int abelian_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const Isometry a = random_isometry(rng);
    if (euler_class(SurfaceRep{2, 0, {a, a * a, a.inverse(), a * a * a}}) != 0) ++abelian_bad;
  }
  o.require(abelian_bad == 0, "abelian reps");
  const std::int64_t octagon = euler_class(regular_octagon_rep().surface());
  o.require(std::abs(octagon) == 2, "regular octagon");

  int hyp = 0, zero = 0, skipped = 0, bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const Isometry g = random_isometry(rng), h = random_isometry(rng);
    const Isometry k = commutator(g, h);
    if (is_elliptic(k) || classify(k).near_parabolic_ambiguous) {
      ++skipped;
      continue;
    }
    const double tr = commutator(g.matrix(), h.matrix()).trace();
    const std::int64_t e = euler_class(SurfaceRep{1, 1, {g, h, k.inverse()}});
    if (tr <= -2.0) {
      ++hyp;
      if (!(std::abs(e) == 1 && e == region(commutator_lift(g, h)).index)) ++bad;
    } else {
      ++zero;
      if (e != 0) ++bad;
    }
  }
  o.require(bad == 0, std::to_string(bad) + " dichotomy violations");
  o.require(hyp > 0 && zero > 0, "both dichotomy branches exercised");
  o.detail << "octagon m=" << octagon << ", pairs: " << hyp << " |m|=1, " << zero << " m=0, " << skipped
           << " elliptic skipped";
}

// --- 2 ---------------------------------------------------------------------------

/// Random representation of (genus, boundary) with relator residual below 1e-8,
/// or nothing when the draw cannot be closed up.
std::optional<SurfaceRep> random_surface_rep(std::mt19937_64& rng, int genus, int boundary) {
  SurfaceRep rep{genus, boundary, {}};
  Mat2 acc = Mat2::identity();
  const int free_pairs = boundary == 0 ? genus - 1 : genus;
  for (int i = 0; i < free_pairs; ++i) {
    const Isometry g = random_isometry(rng, 1.0), h = random_isometry(rng, 1.0);
    rep.generators.push_back(g);
    rep.generators.push_back(h);
    acc = acc * commutator(g.matrix(), h.matrix());
  }
  if (boundary == 0) {
    // Close with a pair whose commutator is the inverse of the product so far.
    const double sx = rng() % 2 ? 1.0 : -1.0, sy = rng() % 2 ? 1.0 : -1.0;
    const double x = sx * uniform(rng, 2.5, 5.0), y = sy * uniform(rng, 2.5, 5.0);
    const Mat2 q = acc.inverse();
    if (distance_to_pm_identity(q) < 1e-6) return std::nullopt;
    try {
      const MatrixPair p = pair_with_commutator(q, x, y);
      rep.generators.emplace_back(p.g);
      rep.generators.emplace_back(p.h);
    } catch (const Error&) {
      return std::nullopt;
    }
  } else {
    for (int j = 0; j + 1 < boundary; ++j) {
      Isometry c = random_isometry(rng, 1.0);
      while (is_elliptic(c)) c = random_isometry(rng, 1.0);
      rep.generators.push_back(c);
      acc = acc * c.matrix();
    }
    const Isometry last(acc.inverse());
    if (is_elliptic(last) || classify(last).near_parabolic_ambiguous) return std::nullopt;
    rep.generators.push_back(last);
  }
  if (relator_residual(rep) >= 1e-8) return std::nullopt;
  return rep;
}

void milnor_wood(Outcome& o) {
  std::mt19937_64 rng(1002);
  int done = 0, violations = 0, extremal = 0, closed = 0, attempts = 0;
  while (done < 10000 && attempts < 1000000) {
    ++attempts;
    const int genus = static_cast<int>(rng() % 4);
    const int boundary = static_cast<int>(rng() % 4);
    if (2 - 2 * genus - boundary >= 0) continue;
    const auto rep = random_surface_rep(rng, genus, boundary);
    if (!rep) continue;
    ++done;
    if (boundary == 0) ++closed;
    const std::int64_t m = euler_class(*rep);
    const int chi = rep->euler_characteristic();
    if (std::abs(m) > std::abs(chi)) ++violations;
    if (std::abs(m) == std::abs(chi)) ++extremal;
  }
  o.require(done == 10000, "10^4 representations generated");
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.detail << done << " reps (" << closed << " closed), " << violations << " violations, " << extremal
           << " extremal";
}

// --- 3 ---------------------------------------------------------------------------

GammaMove random_move(std::mt19937_64& rng) {
  static const std::array<int, 3> perms[] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  switch (rng() % 7) {
    case 0: return GammaMove::vieta(0);
    case 1: return GammaMove::vieta(1);
    case 2: return GammaMove::vieta(2);
    case 3: return {MoveKind::SIGN_XY};
    case 4: return {MoveKind::SIGN_YZ};
    case 5: return {MoveKind::SIGN_ZX};
    default: return GammaMove::permutation(perms[rng() % 6]);
  }
}

/// Magnitude of the terms of kappa; the float identity is checked relative to
/// the larger of the scales before and after a move.
double kappa_scale(const Character& c) {
  return std::max(1.0, c.x * c.x + c.y * c.y + c.z * c.z + std::abs(c.x * c.y * c.z));
}

void fricke_kappa(Outcome& o) {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const Mat2 g = random_sl2(rng), h = random_sl2(rng);
    const double err = std::abs(commutator(g, h).trace() - kappa(character_of(g, h)));
    worst = std::max(worst, err);
  }
  o.require(worst <= kFrickeTol, "Fricke error " + format_double(worst));

  double worst_rel = 0.0;
  Character c = sample_level_set(3.0, 5.0, rng);
  for (int i = 0; i < 1000000; ++i) {
    if (kappa_scale(c) > 1e6) c = sample_level_set(uniform(rng, 2.1, 20.0), 5.0, rng);
    const Character d = gamma_apply(c, random_move(rng));
    const double scale = std::max(kappa_scale(c), kappa_scale(d));
    worst_rel = std::max(worst_rel, std::abs(kappa(d) - kappa(c)) / scale);
    c = d;
  }
  o.require(worst_rel <= kGammaRelTol, "gamma relative error " + format_double(worst_rel));

  // Integer characters stay exact.
  int inexact = 0;
  for (int i = 0; i < 10000; ++i) {
    Character e{static_cast<double>(rng() % 21) - 10.0, static_cast<double>(rng() % 21) - 10.0,
                static_cast<double>(rng() % 21) - 10.0};
    const double k0 = kappa(e);
    for (int j = 0; j < 20; ++j) {
      const Character next = gamma_apply(e, random_move(rng));
      if (kappa_scale(next) > 0x1p52) break;
      e = next;
      if (kappa(e) != k0) ++inexact;
    }
  }
  o.require(inexact == 0, std::to_string(inexact) + " inexact integer moves");
  o.detail << "max |Tr[g,h] - kappa| = " << format_double(worst) << " on 1e5 pairs; max relative kappa drift "
           << format_double(worst_rel) << " on 1e6 moves, integer orbits exact";
}

// --- 4 ---------------------------------------------------------------------------

void pants_construction(Outcome& o) {
  std::mt19937_64 rng(1004);
  int built = 0, bad_angle = 0, bad_area = 0, bad_recompose = 0;
  double worst_angle = 0.0, worst_area = 0.0, worst_rec = 0.0;
  while (built < 100) {
    const Character ch{uniform(rng, -6.0, -2.05), uniform(rng, -6.0, -2.05), uniform(rng, -6.0, -2.05)};
    const MatrixPair p = char_to_rep(ch);
    const PantsDomain d = build_pants(Isometry(mirror(p.g)), Isometry(mirror(p.h)));
    ++built;
    for (std::size_t i = 0; i < d.octagon.vertices.size(); ++i) {
      if (is_ideal(d.octagon.vertices[i])) continue;
      const double e = std::abs(d.report.interior_angles[i] - kPi / 2);
      worst_angle = std::max(worst_angle, e);
      if (e > kAngleTol) ++bad_angle;
    }
    const double ea = std::abs(d.report.area - 2.0 * kPi);
    const double eg = std::abs(testsupport::green_area(finite_vertices(d.octagon)) - 2.0 * kPi);
    worst_area = std::max({worst_area, ea, eg});
    if (ea > kAreaTol || eg > kAreaTol) ++bad_area;
    worst_rec = std::max(worst_rec, d.recompose_error);
    if (d.recompose_error > kRecomposeTol) ++bad_recompose;
  }
  o.require(bad_angle == 0, "right angles");
  o.require(bad_area == 0, "area 2 pi");
  o.require(bad_recompose == 0, "reflection recomposition");

  // Random hyperbolic pairs violating one of the two conditions must be rejected.
  int product_violations = 0, axis_violations = 0, accepted_violators = 0;
  while (product_violations < 100 || axis_violations < 100) {
    const Isometry c1 = random_isometry(rng), c2 = random_isometry(rng);
    const Isometry c12 = c1 * c2;
    if (std::abs(c1.trace()) <= 2.01 || std::abs(c2.trace()) <= 2.01 || std::abs(c12.trace()) <= 2.01) continue;
    const double product = c1.trace() * c2.trace() * (c1.matrix() * c2.matrix()).trace();
    const double k = commutator(c1.matrix(), c2.matrix()).trace();
    const bool axes_bad = k < 2.0, product_bad = product > -8.0;
    if (!axes_bad && !product_bad) continue;
    if (axes_bad) ++axis_violations;
    if (product_bad) ++product_violations;
    try {
      build_pants(c1, c2);
      ++accepted_violators;
    } catch (const Error&) {
    }
  }
  o.require(accepted_violators == 0, std::to_string(accepted_violators) + " violating inputs accepted");
  o.detail << built << " pants: max angle error " << format_double(worst_angle) << ", area error "
           << format_double(worst_area) << ", recompose " << format_double(worst_rec) << "; rejected "
           << product_violations << " trace-product and " << axis_violations << " crossing-axes inputs";
}

// --- 5, 6 ----------------------------------------------------------------------------

void check_glued(Outcome& o, const GluedDomain& d, const std::string& name) {
  const double cone = std::abs(d.cone_angle - 4.0 * kPi);
  const double area = std::abs(d.area - 2.0 * kPi);
  const auto v = finite_vertices(d.octagon);
  const double green = std::abs(testsupport::green_area(v) - 2.0 * kPi);
  o.require(cone <= kConeTol, name + " cone angle");
  o.require(area <= kAreaTol && green <= kAreaTol, name + " area");
  o.require(d.vertex_orbit == 8, name + " vertex orbit");
  o.require(d.report.valid() && testsupport::sampled_simple(v), name + " embedded");
  o.detail << name << ": cone-4pi " << format_double(d.cone_angle - 4.0 * kPi) << ", area-2pi "
           << format_double(d.area - 2.0 * kPi) << ", orbit " << d.vertex_orbit << "; ";
}

Genus2Rep elliptic_example() {
  const Mat2 g0 = Mat2::diag(2.0, 0.5);
  const Mat2 r = Mat2::rotation(-kPi / 4.0);
  const Mat2 h0 = r * g0 * r.inverse();
  const MatrixPair rho1 = pair_with_commutator(-commutator(g0, h0).inverse(), 3.0, 3.0);
  return {Isometry(g0), Isometry(h0), Isometry(rho1.g), Isometry(rho1.h)};
}

Genus2Rep parabolic_example() {
  const Mat2 g0{2.0, 1.0, 0.0, 0.5};
  const Mat2 h0 = Mat2::diag(1.5, 1.0 / 1.5);
  const MatrixPair rho1 = pair_with_commutator(-commutator(g0, h0).inverse(), 3.0, 3.0);
  return {Isometry(g0), Isometry(h0), Isometry(rho1.g), Isometry(rho1.h)};
}

void genus2_gluing(Outcome& o) {
  using clock = std::chrono::steady_clock;
  for (const auto& [name, rep] : {std::pair{std::string("elliptic"), elliptic_example()},
                                  std::pair{std::string("parabolic"), parabolic_example()}}) {
    const auto start = clock::now();
    const GluedDomain d = glue_genus2(rep);
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    o.require(secs < 60.0, name + " runtime");
    o.require(d.kase == (name == "elliptic" ? GlueCase::ELLIPTIC : GlueCase::PARABOLIC), name + " case");
    check_glued(o, d, name);
  }
}

void hyperbolic_gluing(Outcome& o) {
  const double t = 3.0;
  const GoodRep gr = good_rep(t, 0.5 * collar_width(t), Orientation::CCW);
  const MatrixPair w = char_to_rep({3.0, 3.0, 0.5 * (9.0 + std::sqrt(5.0))});
  const GluedDomain d = glue_hyperbolic(gr.pentagon, Isometry(mirror(w.g)), Isometry(mirror(w.h)), t);
  check_glued(o, d, "hyperbolic");
  const double twist = d.pent0.twist + d.pent1.twist;
  o.require(std::abs(twist - 2.0 * kPi) <= kTwistTol, "twist complementarity");
  o.detail << "twist " << format_double(d.pent0.twist) << " + " << format_double(d.pent1.twist)
           << " - 2pi = " << format_double(twist - 2.0 * kPi);
}

// --- 7 ---------------------------------------------------------------------------

void ergodicity(Outcome& o, const std::string& cli) {
  int status = 0;
  const std::string csv = run_command(
      cli + " ergodic-exp --trace 3 --samples 200 --depth 12 --stations 64 --seed 7 2>/dev/null", status);
  o.require(status == 0, "command exit status");
  const auto pos = csv.rfind("# elliptic=");
  o.require(pos != std::string::npos, "summary line");
  if (pos == std::string::npos) return;
  int ell = 0, pants = 0, good = 0;
  char rate[64] = {0};
  std::sscanf(csv.c_str() + pos, "# elliptic=%d pants=%d good=%d rate=%63s", &ell, &pants, &good, rate);
  o.require(ell > 0, "elliptic samples present");
  const double r = ell > 0 ? static_cast<double>(good) / ell : 0.0;
  o.require(r >= kRateBar, "rate " + format_double(r) + " >= 0.95");
  o.detail << "elliptic " << ell << ", pants " << pants << ", good " << good << ", rate " << rate;
}

// --- 8 ---------------------------------------------------------------------------

bool small(double v) { return v > -2.0 && v < 2.0; }

/// Depth-limited breadth-first search over Vieta words for an elliptic or a
/// pants witness (sign changes fold into the parity test).
std::pair<bool, bool> orbit_oracle(const Character& c, int depth) {
  bool elliptic = false, pants = false;
  struct Node {
    Character c;
    int last;
  };
  std::vector<Node> layer{{c, -1}};
  for (int d = 0; d <= depth && !layer.empty(); ++d) {
    std::vector<Node> next;
    for (const Node& n : layer) {
      const Character& t = n.c;
      if (small(t.x) || small(t.y) || small(t.z)) elliptic = true;
      const int positives = (t.x >= 2.0) + (t.y >= 2.0) + (t.z >= 2.0);
      if (!small(t.x) && !small(t.y) && !small(t.z) && positives % 2 == 0) pants = true;
      if (d == depth) continue;
      for (int axis = 0; axis < 3; ++axis) {
        if (axis == n.last) continue;
        const Character u = gamma_apply(t, GammaMove::vieta(axis));
        if (std::abs(u.x) + std::abs(u.y) + std::abs(u.z) > 1e8) continue;
        next.push_back({u, axis});
      }
    }
    layer.swap(next);
  }
  return {elliptic, pants};
}

void goldman_reduction(Outcome& o) {
  std::mt19937_64 rng(1008);
  for (double t : {2.5, 3.0, 7.0}) {
    int reached = 0, disagree = 0, failures = 0, pants = 0;
    for (int i = 0; i < 10000; ++i) {
      const Character c = sample_level_set(t, 5.0, rng);
      ReductionOutcome out;
      try {
        out = goldman_reduce(c);
      } catch (const Error&) {
        ++failures;
        continue;
      }
      if (out.type == ReductionType::PANTS) ++pants;
      const auto [ell, pan] = orbit_oracle(c, 12);
      if (!ell && !pan) continue;
      ++reached;
      if (ell && pan) ++disagree;
      if (ell && out.type != ReductionType::ELLIPTIC) ++disagree;
      if (pan && out.type != ReductionType::PANTS) ++disagree;
    }
    o.require(failures == 0, "budget at t=" + format_double(t));
    o.require(disagree == 0, "oracle agreement at t=" + format_double(t));
    o.detail << "t=" << format_double(t) << ": " << reached << "/10000 reached, " << disagree
             << " disagreements, " << pants << " pants; ";
  }
}

// --- 9 ---------------------------------------------------------------------------

void covering_suite(Outcome& o) {
  std::mt19937_64 rng(1009);
  o.require(theta(Lift::central(1)) == kPi, "Theta(z) = pi exactly");
  double worst_shift = 0.0, worst_inv = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Lift l{random_isometry(rng), static_cast<std::int64_t>(rng() % 7) - 3};
    worst_shift = std::max(worst_shift, std::abs(theta(Lift::central(1) * l) - theta(l) - kPi));
    worst_inv = std::max(worst_inv, std::abs(theta(lift_inverse(l)) + theta(l)));
  }
  o.require(worst_shift <= kThetaTol, "Theta(zL)");
  o.require(worst_inv <= kThetaTol, "Theta(L^-1)");

  int non_elliptic = 0, too_big = 0;
  while (non_elliptic < 10000) {
    const Isometry a = random_isometry(rng);
    if (is_elliptic(a)) continue;
    ++non_elliptic;
    if (std::abs(theta(simplest_lift(a))) > kPi / 2 + 1e-12) ++too_big;
  }
  o.require(too_big == 0, "simplest lifts within pi/2");

  int outside = 0;
  for (int i = 0; i < 10000; ++i) {
    const Isometry g = random_isometry(rng), h = random_isometry(rng);
    const RegionLabel r = region(commutator_lift(g, h));
    const double tr = commutator(g.matrix(), h.matrix()).trace();
    bool allowed = false;
    switch (r.kind) {
      case RegionKind::CENTRAL: allowed = r.index == 0; break;
      case RegionKind::ELL: allowed = r.index == 1 || r.index == -1; break;
      case RegionKind::PAR_PLUS: allowed = r.index == -1 || r.index == 0; break;
      case RegionKind::PAR_MINUS: allowed = r.index == 1 || r.index == 0; break;
      case RegionKind::HYP: allowed = (r.index == 0) == (tr >= -2.0) && std::abs(r.index) <= 1; break;
    }
    if (!allowed) ++outside;
  }
  o.require(outside == 0, std::to_string(outside) + " commutator lifts outside the allowed regions");
  o.detail << "Theta(zL) err " << format_double(worst_shift) << ", Theta(L^-1) err " << format_double(worst_inv)
           << ", " << too_big << " simplest lifts beyond pi/2, " << outside << " commutator lifts outside";
}

// --- 10 --------------------------------------------------------------------------

void determinism(Outcome& o, const std::string& cli, const std::string& data) {
  const std::string commands[] = {
      cli + " ergodic-exp --trace 3 --samples 60 --depth 10 --stations 32 --seed 99",
      cli + " ergodic-exp --trace 3 --samples 60 --depth 10 --stations 32 --seed 99 --threads 4",
      cli + " render --rep " + data + "/genus2_elliptic.json --arrows",
      cli + " render --rep " + data + "/pants.json --model halfplane",
      cli + " render --good-rep 3 --arrows",
  };
  std::string first_exp;
  int identical = 0;
  for (const auto& cmd : commands) {
    int s1 = 0, s2 = 0;
    const std::string a = run_command(cmd + " 2>/dev/null", s1);
    const std::string b = run_command(cmd + " 2>/dev/null", s2);
    const bool same = s1 == 0 && s2 == 0 && !a.empty() && a == b;
    o.require(same, "byte-identical: " + cmd.substr(cli.size() + 1));
    if (same) ++identical;
    if (cmd.find("ergodic-exp") != std::string::npos) {
      if (first_exp.empty()) {
        first_exp = a;
      } else {
        o.require(a == first_exp, "thread count changes the CSV");
      }
    }
  }
  o.detail << identical << "/5 commands byte-identical across two runs; threaded CSV matches serial";
}

}  // namespace

int main() {
  const std::string cli = HYPCONE_CLI;
  const std::string data = HYPCONE_TEST_DATA;
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"euler-class correctness", euler_correctness, 60.0},
      {"Milnor-Wood inequality", milnor_wood, 0.0},
      {"Fricke and kappa identities", fricke_kappa, 0.0},
      {"pants construction", pants_construction, 30.0},
      {"genus-2 gluing, elliptic and parabolic", genus2_gluing, 120.0},
      {"hyperbolic-case gluing", hyperbolic_gluing, 0.0},
      {"ergodicity surrogate", [&](Outcome& o) { ergodicity(o, cli); }, 600.0},
      {"Goldman reduction", goldman_reduction, 0.0},
      {"covering-group suite", covering_suite, 0.0},
      {"determinism", [&](Outcome& o) { determinism(o, cli, data); }, 0.0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_seconds > 0.0) {
      o.require(secs < criteria[i].budget_seconds, "runtime budget " + format_double(criteria[i].budget_seconds) + " s");
    }
    if (!o.pass) ++failed;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].name << " (" << timing
              << "): " << o.failures << o.detail.str() << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
