#include <cmath>
#include <random>

#include "doctest.h"
#include "hilproj/derivative.hpp"
#include "hilproj/error.hpp"
#include "hilproj/projection.hpp"
#include "oracles.hpp"

using namespace hilproj;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an hilproj::Error");
  return ErrorCode::InvalidArgument;
}

const ClosedBall kUnit = ClosedBall::unit(2);

oracle::Map projector(const ConvexSet& set) {
  return [set](const HilbertPoint& p) { return project(set, p); };
}

HilbertPoint unit_vector(std::mt19937_64& rng, std::size_t n) {
  const HilbertPoint u = oracle::random_point(rng, n);
  return u / norm(u);
}

}  // namespace

TEST_SUITE("derivative") {
  TEST_CASE("classify_direction examples") {
    CHECK(classify_direction(kUnit, HilbertPoint({1, 0}), HilbertPoint({1, 0})) == DirectionClass::Up);
    CHECK(classify_direction(kUnit, HilbertPoint({1, 0}), HilbertPoint({-1, 0})) ==
          DirectionClass::Down);
    // ||x + t v||^2 = 1 + t^2 >= 1: the path never enters the open ball
    for (double t : {1e-1, 1e-4, 1e-8}) CHECK(norm(HilbertPoint({1, t})) >= 1.0);
    CHECK(classify_direction(kUnit, HilbertPoint({1, 0}), HilbertPoint({0, 1})) == DirectionClass::Up);
    CHECK(code_of([] { classify_direction(kUnit, HilbertPoint({0.5, 0}), HilbertPoint({0, 1})); }) ==
          ErrorCode::NotOnSphere);
    CHECK(code_of([] { classify_direction(kUnit, HilbertPoint({1, 0}), HilbertPoint({0, 0})); }) ==
          ErrorCode::ZeroDirection);
  }

  TEST_CASE("ball_derivative examples") {
    const DerivativeResult interior = ball_derivative(kUnit, HilbertPoint({0.5, 0}), HilbertPoint({-3, 7}));
    CHECK(interior.case_tag == "Thm4.1(i)(a)");
    CHECK(max_abs_diff(*interior.value, HilbertPoint({-3, 7})) == 0);

    // (1/8)(4 (0,1) - 0 (2,0)) = (0, 0.5)
    const DerivativeResult ext = ball_derivative(kUnit, HilbertPoint({2, 0}), HilbertPoint({0, 1}));
    CHECK(ext.case_tag == "Thm4.1(ii)(a)");
    CHECK(max_abs_diff(*ext.value, HilbertPoint({0, 0.5})) < 1e-16);

    const DerivativeResult self = ball_derivative(kUnit, HilbertPoint({2, 0}), HilbertPoint({2, 0}));
    CHECK(self.case_tag == "Thm4.1(ii)(b)");
    CHECK(is_zero(*self.value));

    // sphere point, Up direction, against the raw quotient at t = 1e-6
    const HilbertPoint x({1, 0}), v({1, 1});
    const DerivativeResult up = ball_derivative(kUnit, x, v);
    CHECK(up.case_tag == "Thm4.1(iii)(a)");
    const HilbertPoint q = oracle::quotient(projector(kUnit), x, v, 1e-6);
    CHECK(max_abs_diff(*up.value, q) < 1e-5);
    CHECK(max_abs_diff(*up.value, HilbertPoint({0, 1})) < 1e-16);

    CHECK(code_of([] { ball_derivative(kUnit, HilbertPoint({2, 0}), HilbertPoint({0, 0})); }) ==
          ErrorCode::ZeroDirection);
    CHECK(code_of([] { ball_derivative(kUnit, HilbertPoint({2, 0, 0}), HilbertPoint({0, 1, 0})); }) ==
          ErrorCode::DimensionMismatch);
  }

  TEST_CASE("remaining sphere cases") {
    const DerivativeResult radial = ball_derivative(kUnit, HilbertPoint({0, 1}), HilbertPoint({0, 3}));
    CHECK(radial.case_tag == "Thm4.1(iii)(b)");
    CHECK(is_zero(*radial.value));
    const DerivativeResult down = ball_derivative(kUnit, HilbertPoint({0, 1}), HilbertPoint({1, -1}));
    CHECK(down.case_tag == "Thm4.1(iii)(c)");
    CHECK(max_abs_diff(*down.value, HilbertPoint({1, -1})) == 0);
    const DerivativeResult inward = ball_derivative(kUnit, HilbertPoint({2, 0}), HilbertPoint({-1, 0}));
    CHECK(inward.case_tag == "Thm4.1(ii)(a)");
    CHECK(is_zero(*inward.value));
  }

  TEST_CASE("unit-ball corollary forms") {
    // interior: P'(x)(x) = x
    const HilbertPoint xi({0.3, -0.4});
    CHECK(max_abs_diff(*ball_derivative(kUnit, xi, xi).value, xi) == 0);
    // exterior, x orthogonal to v: v / ||x||
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
      const ClosedBall b = ClosedBall::unit(4);
      const HilbertPoint x = (1.5 + std::abs(oracle::random_point(rng, 1)[0])) * unit_vector(rng, 4);
      HilbertPoint v = oracle::random_point(rng, 4);
      v = axpy(v, -inner(v, x) / norm_squared(x), x);
      if (norm(v) < 1e-3) continue;
      const DerivativeResult d = ball_derivative(b, x, v);
      CHECK(max_abs_diff(*d.value, v / norm(x)) <= 1e-12);
    }
    // sphere, tangent direction: v
    const DerivativeResult t = ball_derivative(kUnit, HilbertPoint({0.6, 0.8}), HilbertPoint({0.8, -0.6}));
    CHECK(max_abs_diff(*t.value, HilbertPoint({0.8, -0.6})) < 1e-16);
  }

  TEST_CASE("coordinate expressions of the unit-ball derivative, term by term") {
    // The same closed forms written with explicit coefficient sums
    // sum_n <x, e_n><v, e_n>, as they appear for spaces with a basis.
    std::mt19937_64 rng(2);
    const std::size_t n = 6;
    const ClosedBall b = ClosedBall::unit(n);
    for (int i = 0; i < 300; ++i) {
      const HilbertPoint v = oracle::random_point(rng, n);
      double s = 0.0, xx = 0.0;
      HilbertPoint x = unit_vector(rng, n);
      const int region = i % 3;
      if (region == 0) x = 0.7 * x;
      if (region == 1) x = 2.3 * x;
      for (std::size_t k = 0; k < n; ++k) {
        s += x[k] * v[k];
        xx += x[k] * x[k];
      }
      std::vector<double> expected(n);
      const double nx = std::sqrt(xx);
      for (std::size_t k = 0; k < n; ++k) {
        if (region == 0) expected[k] = v[k];
        if (region == 1) expected[k] = (xx * v[k] - s * x[k]) / (nx * nx * nx);
        if (region == 2) expected[k] = s >= 0 ? v[k] - s * x[k] : v[k];
      }
      const DerivativeResult d = ball_derivative(b, x, v);
      CHECK(max_abs_diff(*d.value, HilbertPoint(expected)) <= 1e-12);
    }
  }

  TEST_CASE("cone_derivative examples") {
    const PositiveCone K(2);
    const auto a = cone_derivative(K, HilbertPoint({1, 2}), HilbertPoint({3, 0}));
    CHECK(a.case_tag == "Thm5.1(iii)");  // x is also in K+, the value is the same
    CHECK(max_abs_diff(*a.value, HilbertPoint({3, 0})) == 0);
    const auto a2 = cone_derivative(K, HilbertPoint({1, 0}), HilbertPoint({3, 0}));
    CHECK(a2.case_tag == "Thm5.1(i)");
    CHECK(max_abs_diff(*a2.value, HilbertPoint({3, 0})) == 0);
    const auto b = cone_derivative(K, HilbertPoint({-1, -1}), HilbertPoint({-2, 0}));
    CHECK(b.case_tag == "Thm5.1(ii)");
    CHECK(is_zero(*b.value));
    const auto c = cone_derivative(K, HilbertPoint({1, 1}), HilbertPoint({-5, 7}));
    CHECK(c.case_tag == "Thm5.1(iii)");
    CHECK(max_abs_diff(*c.value, HilbertPoint({-5, 7})) == 0);
    const auto d = cone_derivative(K, HilbertPoint({1, 0}), HilbertPoint({0, -1}));
    CHECK_FALSE(d.covered);
    CHECK_FALSE(d.value.has_value());
    CHECK(d.case_tag == "NotCoveredByPaper");
    CHECK(code_of([&] { cone_derivative(K, HilbertPoint({1, 0}), HilbertPoint({0, 0})); }) ==
          ErrorCode::ZeroDirection);
    CHECK(code_of([&] { cone_derivative(K, HilbertPoint({1, 0, 0}), HilbertPoint({1, 0, 0})); }) ==
          ErrorCode::DimensionMismatch);
  }

  TEST_CASE("generic_facts_derivative examples") {
    const ConvexSet unit = kUnit;
    const auto normal = generic_facts_derivative(unit, HilbertPoint({2, 0}), HilbertPoint({-1, 0}));
    CHECK(normal.covered);
    CHECK(is_zero(*normal.value));
    const auto inside = generic_facts_derivative(unit, HilbertPoint({0.2, 0.1}), HilbertPoint({1, 1}));
    CHECK(inside.case_tag == "Sec3.interior");
    CHECK(max_abs_diff(*inside.value, HilbertPoint({1, 1})) == 0);
    const auto ray = generic_facts_derivative(unit, HilbertPoint({3, 0}), HilbertPoint({0, 1}));
    CHECK_FALSE(ray.covered);
    CHECK(code_of([&] { generic_facts_derivative(unit, HilbertPoint({3, 0}), HilbertPoint({0, 0})); }) ==
          ErrorCode::ZeroDirection);
  }

  TEST_CASE("generic facts on the other variants") {
    const ConvexSet K = PositiveCone(3);
    CHECK(generic_facts_derivative(K, HilbertPoint({-1, -2, -3}), HilbertPoint({5, 1, -1})).case_tag ==
          "Sec3.fiber_interior");
    CHECK(generic_facts_derivative(K, HilbertPoint({1, 0, 2}), HilbertPoint({-1, 0, 1})).case_tag ==
          "Sec3.segment");
    const ConvexSet D = SubspaceSpan({HilbertPoint({1, 0, 0})});
    CHECK(generic_facts_derivative(D, HilbertPoint({2, 0, 0}), HilbertPoint({-1, 0, 0})).case_tag ==
          "Sec3.segment");
    CHECK(generic_facts_derivative(D, HilbertPoint({2, 1, 0}), HilbertPoint({0, 3, 0})).case_tag ==
          "Sec3.normal");
    CHECK_FALSE(generic_facts_derivative(D, HilbertPoint({2, 1, 0}), HilbertPoint({1, 0, 0})).covered);
    // the one-dimensional ball: the exterior ray has interior
    const ConvexSet seg = ClosedBall::unit(1);
    CHECK(generic_facts_derivative(seg, HilbertPoint({3}), HilbertPoint({1})).case_tag ==
          "Sec3.fiber_interior");
  }

  TEST_CASE("homogeneity examples") {
    const DerivativeFn ball = [](const HilbertPoint& x, const HilbertPoint& v) {
      return ball_derivative(kUnit, x, v);
    };
    CHECK(homogeneity_check(ball, HilbertPoint({2, 0}), HilbertPoint({0, 1}), 3.0));
    CHECK(homogeneity_check(ball, HilbertPoint({2, 0}), HilbertPoint({0, 1}), 1.0));
    const DerivativeFn cone = [](const HilbertPoint& x, const HilbertPoint& v) {
      return cone_derivative(PositiveCone(2), x, v);
    };
    CHECK(homogeneity_check(cone, HilbertPoint({1, 2}), HilbertPoint({-4, 1}), 0.5));
    CHECK(code_of([&] { homogeneity_check(cone, HilbertPoint({1, 0}), HilbertPoint({0, -1}), 2.0); }) ==
          ErrorCode::NotCovered);
    CHECK(code_of([&] { homogeneity_check(cone, HilbertPoint({1, 2}), HilbertPoint({0, -1}), 0.0); }) ==
          ErrorCode::InvalidArgument);
  }

  TEST_CASE("partition of sphere directions agrees with small-t sampling") {
    std::mt19937_64 rng(3);
    const ClosedBall b(HilbertPoint({1, 2, -1}), 0.75);
    std::size_t decided = 0;
    for (int i = 0; i < 1000; ++i) {
      const HilbertPoint x = axpy(b.center(), b.radius(), unit_vector(rng, 3));
      const HilbertPoint v = oracle::random_point(rng, 3);
      const DirectionClass c = classify_direction(b, x, v);
      CHECK((c == DirectionClass::Up || c == DirectionClass::Down));
      const auto sign_at = [&](double t) { return norm(x + t * v - b.center()) - b.radius(); };
      const double s4 = sign_at(1e-4), s6 = sign_at(1e-6);
      if ((s4 >= 0) != (s6 >= 0) || std::abs(s6) < 1e-14) continue;  // too close to call
      ++decided;
      CHECK((c == DirectionClass::Up) == (s6 >= 0));
    }
    CHECK(decided > 950);
  }

  TEST_CASE("covered values agree with difference quotients") {
    std::mt19937_64 rng(4);
    for (std::size_t n : {2u, 5u}) {
      const ClosedBall b(oracle::random_point(rng, n), 1.3);
      const ConvexSet set = b;
      for (int i = 0; i < 400; ++i) {
        const HilbertPoint u = unit_vector(rng, n);
        HilbertPoint v = oracle::random_point(rng, n);
        HilbertPoint x;
        switch (i % 4) {
          case 0: x = axpy(b.center(), 0.9 * b.radius() * std::abs(oracle::random_point(rng, 1)[0]) / 2, u); break;
          case 1: x = axpy(b.center(), b.radius() * (1.1 + std::abs(oracle::random_point(rng, 1)[0])), u); break;
          case 2:  // sphere, Up
            x = axpy(b.center(), b.radius(), u);
            if (inner(v, u) < 0) v = -v;
            break;
          default:  // sphere, clearly Down
            x = axpy(b.center(), b.radius(), u);
            if (inner(v, u) > 0) v = -v;
            if (inner(v, u) > -0.2 * norm(v)) v = axpy(v, -0.5 * norm(v), u);
        }
        const DerivativeResult d = ball_derivative(b, x, v);
        REQUIRE(d.covered);
        const HilbertPoint raw = oracle::quotient(projector(set), x, v, 1e-6);
        CHECK(max_abs_diff(*d.value, raw) <= 1e-4);
        const HilbertPoint rich = oracle::richardson_1e3_1e5(projector(set), x, v);
        CHECK(max_abs_diff(*d.value, rich) <= 1e-7);
      }
    }
  }

  TEST_CASE("cone values agree with difference quotients") {
    std::mt19937_64 rng(5);
    const std::size_t n = 6;
    const ConvexSet set = PositiveCone(n);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < 600; ++i) {
      std::vector<double> xc(n), vc(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double a = std::abs(oracle::random_point(rng, 1)[0]);
        const double b = std::abs(oracle::random_point(rng, 1)[0]) + 1e-3;
        switch (i % 3) {
          case 0: xc[k] = coin(rng) ? 0.0 : a; vc[k] = b; break;              // x, v in K
          case 1: xc[k] = coin(rng) ? 0.0 : -a; vc[k] = -b; break;            // x, v in -K
          default: xc[k] = a + 0.5; vc[k] = oracle::random_point(rng, 1)[0];  // x in K+
        }
      }
      const HilbertPoint x(xc), v(vc);
      const DerivativeResult d = cone_derivative(PositiveCone(n), x, v);
      REQUIRE(d.covered);
      CHECK(max_abs_diff(*d.value, oracle::quotient(projector(set), x, v, 1e-6)) <= 1e-4);
      CHECK(max_abs_diff(*d.value, oracle::richardson_1e3_1e5(projector(set), x, v)) <= 1e-7);
    }
  }

  TEST_CASE("positive homogeneity in every covered case") {
    std::mt19937_64 rng(6);
    const ConvexSet ball = ClosedBall::unit(3);
    const ConvexSet cone = PositiveCone(3);
    for (const ConvexSet* set : {&ball, &cone}) {
      const DerivativeFn f = [set](const HilbertPoint& x, const HilbertPoint& v) {
        return analytic_derivative(*set, x, v);
      };
      for (int i = 0; i < 1000; ++i) {
        HilbertPoint x = oracle::random_point(rng, 3);
        if (i % 5 == 0 && set == &ball) x = x / norm(x);
        if (i % 5 == 1 && set == &cone) x = HilbertPoint({std::abs(x[0]), 0.0, std::abs(x[2])});
        const HilbertPoint v = oracle::random_point(rng, 3);
        if (!f(x, v).covered) continue;
        for (double l : {0.5, 2.0, 10.0}) CHECK(homogeneity_check(f, x, v, l));
      }
    }
  }

  TEST_CASE("specialised and generic sources agree where both apply") {
    std::mt19937_64 rng(7);
    std::size_t both = 0;
    const ConvexSet ball = ClosedBall(HilbertPoint({0.5, -0.5, 0}), 1.2);
    const ConvexSet cone = PositiveCone(3);
    for (const ConvexSet* set : {&ball, &cone}) {
      for (int i = 0; i < 2000; ++i) {
        HilbertPoint x = oracle::random_point(rng, 3);
        HilbertPoint v = oracle::random_point(rng, 3);
        if (i % 4 == 0) v = x - project(*set, x);   // normal direction
        if (i % 4 == 1) v = project(*set, x) - x;
        if (i % 4 == 2) x = project(*set, x);       // points of C
        if (is_zero(v)) continue;
        const DerivativeResult a = analytic_derivative(*set, x, v);
        const DerivativeResult g = generic_facts_derivative(*set, x, v);
        if (!a.covered || !g.covered) continue;
        ++both;
        CHECK(max_abs_diff(*a.value, *g.value) <= 1e-12);
      }
    }
    CHECK(both > 1000);
  }

  TEST_CASE("exterior formula tends to the sphere formula") {
    std::mt19937_64 rng(8);
    const ClosedBall b(HilbertPoint({1, 0, -1}), 2.0);
    for (int i = 0; i < 200; ++i) {
      const HilbertPoint u = unit_vector(rng, 3);
      HilbertPoint v = oracle::random_point(rng, 3);
      if (inner(v, u) < 0) v = -v;  // Up at the limit point
      const HilbertPoint limit = axpy(b.center(), b.radius(), u);
      const HilbertPoint at_sphere = *ball_derivative(b, limit, v).value;
      for (double h : {1e-7, 1e-8}) {
        const HilbertPoint near = axpy(b.center(), b.radius() + h, u);
        const DerivativeResult d = ball_derivative(b, near, v);
        REQUIRE(d.case_tag == "Thm4.1(ii)(a)");
        CHECK(max_abs_diff(*d.value, at_sphere) <= 1e-6);
      }
    }
  }
}
