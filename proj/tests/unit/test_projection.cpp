#include <cmath>
#include <random>

#include "doctest.h"
#include "hilproj/error.hpp"
#include "hilproj/projection.hpp"
#include "oracles.hpp"

using namespace hilproj;

namespace {

struct Case {
  ConvexSet set;
  std::size_t dim;
  HilbertPoint::Weights weights;
};

std::vector<Case> variants() {
  const auto space = DiscreteProbabilitySpace({{"a", 0.1}, {"b", 0.4}, {"c", 0.5}});
  const auto w = flattened_weights(space, 3);
  return {
      {ClosedBall::unit(2), 2, nullptr},
      {ClosedBall(HilbertPoint({1, -2, 0.5, 3}), 2.5), 4, nullptr},
      {PositiveCone(8), 8, nullptr},
      {SubspaceSpan({HilbertPoint({0.6, 0.8, 0}), HilbertPoint({0, 0, -1})}), 3, nullptr},
      {BochnerPointwiseCone(space, 3), 9, w},
      {BochnerConstantSubspace(space, 3), 9, w},
      {ClosedBall(HilbertPoint::zeros(9, w), 1.0), 9, w},
  };
}

}  // namespace

TEST_SUITE("projection") {
  TEST_CASE("projection examples") {
    const ConvexSet unit = ClosedBall::unit(2);
    CHECK(max_abs_diff(project(unit, HilbertPoint({2, 0})), HilbertPoint({1, 0})) == 0);
    CHECK(max_abs_diff(project(PositiveCone(3), HilbertPoint({1, -2, 3})), HilbertPoint({1, 0, 3})) ==
          0);
    const ConvexSet b = ClosedBall(HilbertPoint({1, 1}), 2);
    CHECK(max_abs_diff(project(b, HilbertPoint({1, 1})), HilbertPoint({1, 1})) == 0);

    // (3,4) against a million-point search of the unit circle
    const auto near = oracle::circle_grid_nearest({0, 0}, 1, {3, 4}, 1000000);
    const HilbertPoint p = project(unit, HilbertPoint({3, 4}));
    CHECK(std::abs(p[0] - near[0]) < 1e-5);
    CHECK(std::abs(p[1] - near[1]) < 1e-5);
    CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-15));
  }

  TEST_CASE("distance examples") {
    CHECK(distance(ClosedBall::unit(2), HilbertPoint({2, 0})) == 1.0);
    // (-3,4) clips to (0,4)
    CHECK(distance(PositiveCone(2), HilbertPoint({-3, 4})) == norm(HilbertPoint({-3, 0})));
    CHECK(distance(PositiveCone(2), HilbertPoint({-3, 4})) == 3.0);
    for (const auto& c : variants()) {
      std::mt19937_64 rng(1);
      const HilbertPoint inside = project(c.set, oracle::random_point(rng, c.dim, -2, 2, c.weights));
      // linear projections reproduce their range only up to rounding
      CHECK(distance(c.set, inside) <= 1e-15 * std::max(1.0, norm(inside)));
    }
  }

  TEST_CASE("near-sphere points are left alone") {
    const ConvexSet unit = ClosedBall::unit(2);
    const HilbertPoint x({1.0 + 5e-13, 0});
    CHECK(max_abs_diff(project(unit, x), x) == 0);
    const HilbertPoint y({1.0 + 1e-9, 0});
    CHECK(project(unit, y)[0] == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("project_sequence") {
    const ConvexSet unit = ClosedBall::unit(2);
    CHECK(project_sequence(unit, {}).empty());
    const std::vector<HilbertPoint> xs{HilbertPoint({2, 0}), HilbertPoint({0, 0})};
    const auto ps = project_sequence(unit, xs);
    REQUIRE(ps.size() == 2);
    CHECK(max_abs_diff(ps[0], HilbertPoint({1, 0})) == 0);
    CHECK(max_abs_diff(ps[1], HilbertPoint({0, 0})) == 0);

    std::mt19937_64 rng(2);
    for (const auto& c : variants()) {
      std::vector<HilbertPoint> batch;
      for (int i = 0; i < 100; ++i) batch.push_back(oracle::random_point(rng, c.dim, -2, 2, c.weights));
      const auto out = project_sequence(c.set, batch);
      for (std::size_t i = 0; i < batch.size(); ++i) CHECK(max_abs_diff(out[i], project(c.set, batch[i])) == 0);
    }

    const std::vector<HilbertPoint> bad{HilbertPoint({1, 1}), HilbertPoint({1, 1, 1})};
    try {
      project_sequence(unit, bad);
      FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionMismatch);
      CHECK(std::string(e.what()).find("element 1") != std::string::npos);
    }
  }

  TEST_CASE("best approximation against sampled members") {
    std::mt19937_64 rng(3);
    for (const auto& c : variants()) {
      for (int i = 0; i < 100; ++i) {
        const HilbertPoint x = oracle::random_point(rng, c.dim, -2, 2, c.weights);
        const double d = distance(c.set, x);
        for (const auto& z : sample_set_points(c.set, project(c.set, x), 50, rng)) {
          CHECK(d <= norm(x - z) + 1e-12);
        }
      }
    }
  }

  TEST_CASE("variational and strengthened inequalities") {
    std::mt19937_64 rng(4);
    for (const auto& c : variants()) {
      for (int i = 0; i < 100; ++i) {
        const HilbertPoint x = oracle::random_point(rng, c.dim, -2, 2, c.weights);
        const HilbertPoint u = project(c.set, x);
        const HilbertPoint r = x - u;
        for (const auto& z : sample_set_points(c.set, u, 1000, rng)) {
          CHECK(inner(r, u - z) >= -1e-9);
          CHECK(inner(r, x - z) >= norm_squared(r) - 1e-9);
        }
      }
    }
  }

  TEST_CASE("the literal printed inequality fails for z = u") {
    // <x-u, u-z> >= ||x-u||^2 cannot hold at z = u unless x = u; the
    // strengthened form is therefore checked with x - z.
    const ConvexSet unit = ClosedBall::unit(2);
    const HilbertPoint x({2, 0});
    const HilbertPoint u = project(unit, x);
    CHECK(inner(x - u, u - u) < norm_squared(x - u));
  }

  TEST_CASE("monotone and nonexpansive with the equality dichotomy") {
    std::mt19937_64 rng(5);
    for (const auto& c : variants()) {
      for (int i = 0; i < 1000; ++i) {
        HilbertPoint x = oracle::random_point(rng, c.dim, -2, 2, c.weights);
        HilbertPoint y = oracle::random_point(rng, c.dim, -2, 2, c.weights);
        if (i % 4 == 0) {
          x = project(c.set, x);
          y = project(c.set, y);
        }
        const HilbertPoint dp = project(c.set, x) - project(c.set, y);
        const HilbertPoint dx = x - y;
        CHECK(inner(dp, dx) >= norm_squared(dp) - 1e-9);
        CHECK(norm(dp) <= norm(dx) + 1e-12);
        const bool strict = norm(dp) < norm(dx) - 1e-9;
        CHECK((strict || norm(dp - dx) <= 1e-9));
      }
    }
  }

  TEST_CASE("idempotence") {
    std::mt19937_64 rng(6);
    for (const auto& c : variants()) {
      for (int i = 0; i < 1000; ++i) {
        const HilbertPoint p = project(c.set, oracle::random_point(rng, c.dim, -2, 2, c.weights));
        CHECK(max_abs_diff(project(c.set, p), p) <= 1e-12);
      }
    }
  }

  TEST_CASE("cone projection commutes with truncation") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
      const HilbertPoint x = oracle::random_point(rng, 12);
      const HilbertPoint full = project(PositiveCone(12), x);
      for (std::size_t n : {1u, 5u, 11u}) {
        const HilbertPoint head(std::vector<double>(x.coeffs().begin(), x.coeffs().begin() + n));
        const HilbertPoint proj_head = project(PositiveCone(n), head);
        for (std::size_t k = 0; k < n; ++k) CHECK(proj_head[k] == full[k]);
      }
    }
  }

  TEST_CASE("distance is continuous") {
    std::mt19937_64 rng(8);
    for (const auto& c : variants()) {
      for (int i = 0; i < 200; ++i) {
        const HilbertPoint x = oracle::random_point(rng, c.dim, -2, 2, c.weights);
        const HilbertPoint h = oracle::random_point(rng, c.dim, -1, 1, c.weights);
        // d(., C) is 1-Lipschitz
        for (double s : {1e-2, 1e-5, 1e-8}) {
          CHECK(std::abs(distance(c.set, x + s * h) - distance(c.set, x)) <= s * norm(h) + 1e-12);
        }
      }
    }
  }

  TEST_CASE("zero distance iff membership") {
    std::mt19937_64 rng(9);
    for (const auto& c : variants()) {
      for (int i = 0; i < 500; ++i) {
        HilbertPoint x = oracle::random_point(rng, c.dim, -2, 2, c.weights);
        if (i % 2 == 0) x = project(c.set, x);
        const double d = distance(c.set, x);
        if (d == 0.0) CHECK(contains(c.set, x, 1e-9));
        if (d > 1e-6) CHECK_FALSE(contains(c.set, x, 1e-9));
      }
    }
  }

  TEST_CASE("dimension errors") {
    try {
      project(ClosedBall::unit(2), HilbertPoint({1, 2, 3}));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
  }
}
