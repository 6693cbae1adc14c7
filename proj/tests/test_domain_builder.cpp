#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "hypcone/character_dynamics.hpp"
#include "hypcone/domain_builder.hpp"
#include "hypcone/errors.hpp"
#include "support.hpp"

using namespace hypcone;
using testsupport::random_isometry;
using testsupport::uniform;

namespace {

std::vector<HPoint> finite_vertices(const GeodesicPolygon& poly) {
  std::vector<HPoint> out;
  for (const auto& v : poly.vertices) out.push_back(std::get<HPoint>(v));
  return out;
}

Isometry mirrored(const Isometry& a) {
  const Mat2& m = a.matrix();
  return Isometry(Mat2{m.a, -m.b, -m.c, m.d});
}

/// Random pants rep from a character with all traces <= -2, on the +1 side.
std::pair<Isometry, Isometry> random_pants(std::mt19937_64& rng, bool cusp) {
  Character ch{uniform(rng, -8.0, -2.05), uniform(rng, -8.0, -2.05), uniform(rng, -8.0, -2.05)};
  if (cusp) ch.x = -2.0;
  const MatrixPair mp = char_to_rep(ch);
  const Isometry a = random_isometry(rng, 1.0);
  Isometry c1 = conjugate(a, mirrored(Isometry(mp.g)));
  Isometry c2 = conjugate(a, mirrored(Isometry(mp.h)));
  return {c1, c2};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::PreconditionFailed;
}

}  // namespace

TEST_CASE("word helpers") {
  CHECK(word_inverse("gHh") == "HhG");
  CHECK(word_reduce("gHhG") == "");
  CHECK(word_reduce("ghHgG") == "g");
  const Isometry g = rotation_about(HPoint(0, 1), 1.0), h = translation_along(imaginary_axis(), 0.7);
  CHECK(distance(evaluate_word("gH", g, h), g * h.inverse()) < 1e-14);
  CHECK(is_identity(evaluate_word("ghGH", g, h) * commutator(g, h).inverse()));
}

TEST_CASE("good_rep at t = 3") {
  const GoodRep r = good_rep(3.0, 0.1, Orientation::CCW);
  CHECK(r.g.trace() == doctest::Approx(r.h.trace()).epsilon(1e-12));
  CHECK(std::abs(r.g.trace()) < 2.0);
  CHECK(commutator(r.g.matrix(), r.h.matrix()).trace() == doctest::Approx(3.0).epsilon(1e-12));
  const Pentagon& pent = r.pentagon;
  CHECK(pent.valid(Orientation::CCW));
  CHECK(pent.pairing_error < 1e-8);
  CHECK(std::abs(pent.twist_residual) < 1e-6);
  CHECK(testsupport::sampled_simple(finite_vertices(pent.polygon)));
  CHECK(pent.report.area == doctest::Approx(testsupport::green_area(finite_vertices(pent.polygon))).epsilon(1e-9));

  // The boundary edge lies on the commutator axis at offset epsilon.
  const FixedData fd = fixed_data(commutator(r.g.inverse(), r.h.inverse()));
  REQUIRE(fd.axis);
  CHECK(distance_to_geodesic(*fd.axis, r.p) == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(distance_to_geodesic(*fd.axis, pent.vertex(4)) == doctest::Approx(0.1).epsilon(1e-9));

  SUBCASE("opposite orientation is the mirror image") {
    const GoodRep m = good_rep(3.0, 0.1, Orientation::CW);
    CHECK(m.epsilon == -r.epsilon);
    CHECK(m.pentagon.valid(Orientation::CW));
    CHECK(std::abs(m.pentagon.twist_residual) < 1e-6);
    CHECK(m.pentagon.twist == doctest::Approx(-pent.twist).epsilon(1e-9));
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        CHECK(dist(m.pentagon.vertex(i), m.pentagon.vertex(j)) ==
              doctest::Approx(dist(pent.vertex(i), pent.vertex(j))).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("good_rep over a range of traces") {
  for (double t : {2.05, 2.5, 3.0, 7.0, 50.0, 1e3, 1e6}) {
    CAPTURE(t);
    const GoodRep r = good_rep(t, collar_width(t) / 2, Orientation::CCW);
    CHECK(r.pentagon.valid(Orientation::CCW));
    CHECK(commutator(r.g.matrix(), r.h.matrix()).trace() == doctest::Approx(t).epsilon(1e-9));
    CHECK(std::abs(r.pentagon.twist_residual) < 1e-6);
  }
  CHECK_THROWS_AS(good_rep(2.0, 0.1, Orientation::CCW), Error);
}

TEST_CASE("build_pentagon degenerate and conjugated inputs") {
  // Elliptic commutator: the basepoint at its fixed point gives t = p.
  const MatrixPair mp = char_to_rep({2.5, 2.5, 3.125});
  const Isometry g(mp.g), h(mp.h);
  const FixedData fd = fixed_data(commutator(g.inverse(), h.inverse()));
  REQUIRE(fd.center);
  const Pentagon bad = build_pentagon(g, h, *fd.center);
  CHECK_FALSE(bad.valid());
  CHECK_FALSE(bad.report.reasons.empty());
  CHECK(std::isnan(bad.twist));

  std::mt19937_64 rng(51);
  const GoodRep r = good_rep(3.0, 0.2, Orientation::CCW);
  for (int i = 0; i < 100; ++i) {
    const Isometry a = random_isometry(rng, 1.5);
    const HPoint p = testsupport::random_point(rng);
    const Pentagon x = build_pentagon(r.g, r.h, p);
    const Pentagon y = build_pentagon(conjugate(a, r.g), conjugate(a, r.h), a.apply(p));
    CHECK(x.valid() == y.valid());
    for (int u = 0; u < 5; ++u) {
      for (int v = u + 1; v < 5; ++v) {
        CHECK(std::abs(dist(x.vertex(u), x.vertex(v)) - dist(y.vertex(u), y.vertex(v))) < 1e-9);
      }
    }
  }
}

TEST_CASE("twist identity on valid pentagons") {
  std::mt19937_64 rng(52);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const Character ch = sample_level_set(uniform(rng, 2.2, 10.0), 5.0, rng);
    const MatrixPair mp = char_to_rep(ch);
    SearchOptions opt;
    opt.depth = 6;
    opt.stations = 32;
    const auto cert = try_good_search(Isometry(mp.g), Isometry(mp.h), collar_width(kappa(ch)), opt);
    if (!cert) continue;
    ++checked;
    CHECK(cert->pentagon.valid());
    CHECK(cert->pentagon.pairing_error < 1e-8);
    CHECK(std::abs(cert->pentagon.twist_residual) < 1e-6);
    CHECK(testsupport::sampled_simple(finite_vertices(cert->pentagon.polygon)));
  }
  CHECK(checked > 50);
}

TEST_CASE("build_pants on the two-translation example") {
  const double len = 2.0 * std::acosh(1.5);
  const Geodesic left(BoundaryPoint::real(-3), BoundaryPoint::real(-2));
  const Geodesic right(BoundaryPoint::real(2), BoundaryPoint::real(3));
  int built = 0, wrong_side = 0;
  for (int s1 : {1, -1}) {
    for (int s2 : {1, -1}) {
      Isometry c1 = translation_along(left, len), c2 = translation_along(right, len);
      if (s1 < 0) c1 = c1.inverse();
      if (s2 < 0) c2 = c2.inverse();
      try {
        const PantsDomain d = build_pants(c1, c2);
        ++built;
        CHECK(d.report.valid());
        CHECK(d.octagon.vertices.size() == 8);
        for (double a : d.report.interior_angles) CHECK(std::abs(a - kPi / 2) < 1e-6);
        CHECK(std::abs(testsupport::green_area(finite_vertices(d.octagon)) - kTwoPi) < 1e-5);
        CHECK(testsupport::sampled_simple(finite_vertices(d.octagon)));
        CHECK(d.recompose_error < 1e-8);
        CHECK(d.pairing_error < 1e-8);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::WrongEulerSide) ++wrong_side;
      }
    }
  }
  CHECK(built == 1);
  CHECK(wrong_side == 1);
}

TEST_CASE("build_pants with a cusp at infinity") {
  const Geodesic l(BoundaryPoint::real(-1), BoundaryPoint::real(1));
  int built = 0;
  // Tr(c1 c2) = 2 cosh 1 + s c must be at most -4 / (2 cosh 1), so |s| >= 3.73.
  for (double s : {6.0, -6.0}) {
    for (int dir : {1, -1}) {
      Isometry c1 = translation_along(l, 2.0);
      if (dir < 0) c1 = c1.inverse();
      const Isometry c2(1.0, s, 0.0, 1.0);
      try {
        const PantsDomain d = build_pants(c1, c2);
        ++built;
        CHECK(d.report.valid());
        CHECK(d.parabolic[1]);
        CHECK(d.octagon.vertices.size() == 7);
        int ideal = 0;
        for (std::size_t i = 0; i < d.octagon.vertices.size(); ++i) {
          if (is_ideal(d.octagon.vertices[i])) {
            ++ideal;
            CHECK(std::get<BoundaryPoint>(d.octagon.vertices[i]).is_infinite());
            CHECK(d.report.interior_angles[i] == 0.0);
          } else {
            CHECK(std::abs(d.report.interior_angles[i] - kPi / 2) < 1e-6);
          }
        }
        CHECK(ideal == 1);
        CHECK(std::abs(d.report.area - kTwoPi) < 1e-5);
      } catch (const Error&) {
      }
    }
  }
  CHECK(built >= 1);
}

TEST_CASE("build_pants on random inputs") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 100; ++i) {
    const auto [c1, c2] = random_pants(rng, i % 5 == 0);
    const PantsDomain d = build_pants(c1, c2);
    CHECK(d.report.valid());
    for (std::size_t k = 0; k < d.octagon.vertices.size(); ++k) {
      const double want = is_ideal(d.octagon.vertices[k]) ? 0.0 : kPi / 2;
      CHECK(std::abs(d.report.interior_angles[k] - want) < 1e-6);
    }
    CHECK(std::abs(d.report.area - kTwoPi) < 1e-5);
    if (i % 5 != 0) {
      CHECK(std::abs(testsupport::green_area(finite_vertices(d.octagon)) - kTwoPi) < 1e-5);
    }
    CHECK(d.recompose_error < 1e-8);
    CHECK(d.pairing_error < 1e-8);
    // The mirror image sits on the other Euler side.
    CHECK(code_of([&] { build_pants(mirrored(c1), mirrored(c2)); }) == ErrorCode::WrongEulerSide);
  }
}

TEST_CASE("build_pants rejections") {
  const Geodesic a(BoundaryPoint::real(-1), BoundaryPoint::real(1));
  const Geodesic b(BoundaryPoint::real(0), BoundaryPoint::infinity());
  CHECK(code_of([&] { build_pants(translation_along(a, 1.0), translation_along(b, 1.0)); }) ==
        ErrorCode::AxesNotDisjoint);
  CHECK(code_of([&] { build_pants(rotation_about(HPoint(0, 1), 1.0), translation_along(b, 1.0)); }) ==
        ErrorCode::EllipticBoundary);
  // Disjoint axes but the wrong sign pattern.
  const MatrixPair mp = char_to_rep({3.0, 3.0, 8.0});
  CHECK(code_of([&] { build_pants(Isometry(mp.g), Isometry(mp.h)); }) ==
        ErrorCode::TraceProductCondition);
}

TEST_CASE("good_search") {
  SUBCASE("good_rep output is certified at depth 0") {
    for (Orientation o : {Orientation::CCW, Orientation::CW}) {
      const GoodRep r = good_rep(3.0, collar_width(3.0) / 2, o);
      SearchOptions opt;
      opt.depth = 0;
      opt.orientation = o;
      const GoodnessCertificate c = good_search(r.g, r.h, collar_width(3.0), opt);
      CHECK(c.depth == 0);
      CHECK(c.g_word == "g");
      CHECK(c.h_word == "h");
      CHECK(c.distance_to_axis <= collar_width(3.0));
      CHECK(c.pentagon.valid(o));
    }
  }
  SUBCASE("virtually abelian input is never good") {
    // h is a half-turn about a point of Axis g, so h g h^-1 = g^-1.
    const Isometry g = translation_along(imaginary_axis(), 1.5);
    const Isometry h = rotation_about(HPoint(0, 1), kPi);
    SearchOptions opt;
    opt.depth = 6;
    opt.stations = 32;
    CHECK(code_of([&] { good_search(g, h, 0.5, opt); }) == ErrorCode::NotFound);
  }
  SUBCASE("precondition") {
    const MatrixPair mp = char_to_rep({2.5, 2.5, 3.125});
    CHECK(code_of([&] { good_search(Isometry(mp.g), Isometry(mp.h), 0.1, SearchOptions{}); }) ==
          ErrorCode::PreconditionFailed);
  }
  SUBCASE("certificates are conjugation invariant") {
    std::mt19937_64 rng(54);
    int found = 0;
    for (int i = 0; i < 30; ++i) {
      const Character ch = sample_level_set(3.0, 5.0, rng);
      const MatrixPair mp = char_to_rep(ch);
      const Isometry g(mp.g), h(mp.h), a = random_isometry(rng, 1.0);
      SearchOptions opt;
      opt.depth = 8;
      opt.orientation = Orientation::CCW;
      const auto x = try_good_search(g, h, collar_width(3.0), opt);
      const auto y = try_good_search(conjugate(a, g), conjugate(a, h), collar_width(3.0), opt);
      REQUIRE(x.has_value() == y.has_value());
      if (!x) continue;
      ++found;
      CHECK(x->g_word == y->g_word);
      CHECK(x->h_word == y->h_word);
      CHECK(x->station == y->station);
      CHECK(x->offset_index == y->offset_index);
      CHECK(y->pentagon.valid(Orientation::CCW));
      // Anchors come from fixed points, which are ill-conditioned near trace 2.
      CHECK(dist(a.apply(x->p), y->p) < 1e-5);
      // Basis words multiply rounding error; 1e-8 here, 1e-9 for the bare pentagon above.
      const Pentagon moved = build_pentagon(y->pentagon.g, y->pentagon.h, a.apply(x->p));
      for (int u = 0; u < 5; ++u) {
        CHECK(std::abs(dist(moved.vertex(u), moved.vertex((u + 2) % 5)) -
                       dist(x->pentagon.vertex(u), x->pentagon.vertex((u + 2) % 5))) <
              1e-8 * std::max(1.0, dist(moved.vertex(u), moved.vertex((u + 2) % 5))));
      }
      // The certified basis is the stated word in the original generators.
      const Isometry gw = evaluate_word(x->g_word, g, h);
      CHECK(distance(gw, x->pentagon.g) < 1e-8 * std::max(1.0, frobenius_distance(gw.matrix(), Mat2{0, 0, 0, 0})));
    }
    CHECK(found > 25);
  }
}
