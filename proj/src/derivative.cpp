#include "hilproj/derivative.hpp"

#include <algorithm>
#include <cmath>

#include "bochner_flat.hpp"
#include "hilproj/error.hpp"
#include "hilproj/projection.hpp"

namespace hilproj {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_direction(const HilbertPoint& v) {
  if (is_zero(v)) throw Error(ErrorCode::ZeroDirection, "direction must be nonzero");
}

bool all_above(const HilbertPoint& x, double bound) {
  return std::all_of(x.coeffs().begin(), x.coeffs().end(), [bound](double c) { return c > bound; });
}

bool all_at_least(const HilbertPoint& x, double bound) {
  return std::all_of(x.coeffs().begin(), x.coeffs().end(),
                     [bound](double c) { return c >= bound; });
}

bool all_at_most(const HilbertPoint& x, double bound) {
  return std::all_of(x.coeffs().begin(), x.coeffs().end(),
                     [bound](double c) { return c <= bound; });
}

// |<a, b>| == ||a|| ||b|| up to rounding
bool parallel(double ab, double na, double nb) {
  return na > 0.0 && nb > 0.0 && std::abs(ab) >= (1.0 - 1e-14) * na * nb;
}

}  // namespace

std::string_view to_string(DirectionClass c) noexcept {
  return c == DirectionClass::Up ? "Up" : "Down";
}

DerivativeResult DerivativeResult::of(std::string tag, HilbertPoint value) {
  DerivativeResult r;
  r.value = std::move(value);
  r.case_tag = std::move(tag);
  r.covered = true;
  return r;
}

DerivativeResult DerivativeResult::not_covered(std::string tag) {
  DerivativeResult r;
  r.case_tag = std::move(tag);
  return r;
}

DirectionClass classify_direction(const ClosedBall& ball, const HilbertPoint& x,
                                  const HilbertPoint& v) {
  require_compatible(ball.center(), x);
  require_compatible(x, v);
  const HilbertPoint radial = x - ball.center();
  const double dist = norm(radial);
  if (std::abs(dist - ball.radius()) > kUnitTolerance) {
    throw Error(ErrorCode::NotOnSphere, "classify_direction: x is not on the sphere");
  }
  require_direction(v);
  // ||(x - c) + t v||^2 = r^2 + 2 t <x - c, v> + t^2 ||v||^2
  const double slope = inner(radial, v);
  return slope >= -kTangentTolerance * dist * norm(v) ? DirectionClass::Up : DirectionClass::Down;
}

DerivativeResult ball_derivative(const ClosedBall& ball, const HilbertPoint& x,
                                 const HilbertPoint& v) {
  require_compatible(ball.center(), x);
  require_compatible(x, v);
  require_direction(v);

  const double r = ball.radius();
  const HilbertPoint radial = x - ball.center();
  const double dist = norm(radial);

  if (dist < r - kUnitTolerance) return DerivativeResult::of("Thm4.1(i)(a)", v);

  const double slope = inner(radial, v);
  const double vnorm = norm(v);
  const bool radial_direction = parallel(slope, dist, vnorm);

  if (dist > r + kUnitTolerance) {
    if (radial_direction) {
      return DerivativeResult::of(slope > 0.0 ? "Thm4.1(ii)(b)" : "Thm4.1(ii)(a)", x.zeros_like());
    }
    // (r / |x-c|^3) (|x-c|^2 v - <x-c, v> (x-c))
    const double scale = r / (dist * dist * dist);
    return DerivativeResult::of("Thm4.1(ii)(a)",
                                scale * axpy(dist * dist * v, -slope, radial));
  }

  if (slope >= -kTangentTolerance * dist * vnorm) {
    if (radial_direction && slope > 0.0) {
      return DerivativeResult::of("Thm4.1(iii)(b)", x.zeros_like());
    }
    return DerivativeResult::of("Thm4.1(iii)(a)", axpy(v, -slope / (r * r), radial));
  }
  return DerivativeResult::of("Thm4.1(iii)(c)", v);
}

DerivativeResult cone_derivative(const PositiveCone& cone, const HilbertPoint& x,
                                 const HilbertPoint& v) {
  require_point_of(cone, x);
  require_compatible(x, v);
  require_direction(v);
  constexpr double tol = kMembershipTolerance;
  if (all_above(x, tol)) return DerivativeResult::of("Thm5.1(iii)", v);
  if (all_at_least(x, -tol) && all_at_least(v, -tol)) return DerivativeResult::of("Thm5.1(i)", v);
  if (all_at_most(x, tol) && all_at_most(v, tol)) {
    return DerivativeResult::of("Thm5.1(ii)", x.zeros_like());
  }
  return DerivativeResult::not_covered();
}

DerivativeResult generic_facts_derivative(const ConvexSet& set, const HilbertPoint& x,
                                          const HilbertPoint& v) {
  require_point_of(set, x);
  require_compatible(x, v);
  require_direction(v);
  constexpr double tol = kMembershipTolerance;

  // interior of C
  const bool in_interior = std::visit(
      overloaded{
          [&](const ClosedBall& b) { return norm(x - b.center()) < b.radius() - tol; },
          [&](const PositiveCone&) { return all_above(x, tol); },
          [&](const SubspaceSpan& s) { return s.generators().size() == s.ambient_dim(); },
          [&](const BochnerPointwiseCone&) { return all_above(x, tol); },
          [&](const BochnerConstantSubspace&) { return false; },
      },
      set);
  if (in_interior) return DerivativeResult::of("Sec3.interior", v);

  // interior of an inverse image
  const bool in_fiber_interior = std::visit(
      overloaded{
          [&](const ClosedBall& b) {
            // the ray y + t (y - c) only has interior in dimension one
            return x.size() == 1 && norm(x - b.center()) > b.radius() + tol;
          },
          [&](const PositiveCone&) { return all_at_most(x, -tol); },
          [&](const SubspaceSpan&) { return false; },
          [&](const BochnerPointwiseCone&) { return all_at_most(x, -tol); },
          [&](const BochnerConstantSubspace&) { return false; },
      },
      set);
  if (in_fiber_interior) return DerivativeResult::of("Sec3.fiber_interior", x.zeros_like());

  const HilbertPoint px = project(set, x);
  const HilbertPoint normal = x - px;
  const double normal_norm = norm(normal);
  if (normal_norm > tol) {
    if (parallel(inner(normal, v), normal_norm, norm(v))) {
      return DerivativeResult::of("Sec3.normal", x.zeros_like());
    }
    return DerivativeResult::not_covered();
  }

  // x in C and a segment [x, x + delta v] inside C. delta is measured along
  // the unit direction so that the verdict does not depend on |v|.
  constexpr double delta = 1e-3;
  const double slack = 1e-13 * std::max(1.0, norm(x));
  if (contains(set, x, slack) && contains(set, axpy(x, delta / norm(v), v), slack)) {
    return DerivativeResult::of("Sec3.segment", v);
  }
  return DerivativeResult::not_covered();
}

DerivativeResult analytic_derivative(const ConvexSet& set, const HilbertPoint& x,
                                     const HilbertPoint& v) {
  return std::visit(
      overloaded{
          [&](const ClosedBall& b) { return ball_derivative(b, x, v); },
          [&](const PositiveCone& k) { return cone_derivative(k, x, v); },
          [&](const SubspaceSpan&) { return generic_facts_derivative(set, x, v); },
          [&](const BochnerPointwiseCone& k) {
            return detail::pointwise_cone_derivative_flat(k.space(), x, v);
          },
          [&](const BochnerConstantSubspace& D) {
            return detail::constants_derivative_flat(D.space(), x, v);
          },
      },
      set);
}

bool homogeneity_check(const DerivativeFn& derive, const HilbertPoint& x, const HilbertPoint& v,
                       double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  const DerivativeResult scaled = derive(x, lambda * v);
  const DerivativeResult base = derive(x, v);
  if (!scaled.covered || !base.covered) {
    throw Error(ErrorCode::NotCovered, "homogeneity check needs covered derivatives");
  }
  const HilbertPoint expected = lambda * *base.value;
  const double diff = norm(*scaled.value - expected);
  return diff <= 1e-9 * std::max(norm(*scaled.value), norm(expected));
}

}  // namespace hilproj
