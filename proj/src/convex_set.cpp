#include "hilproj/convex_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flat_ops.hpp"
#include "hilproj/error.hpp"

namespace hilproj {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t bochner_dim(const DiscreteProbabilitySpace& space, std::size_t value_dim,
                        const HilbertPoint& x) {
  const std::size_t d = flattened_value_dim(space, x);
  if (value_dim != 0 && d != value_dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "set expects value dimension " + std::to_string(value_dim) + ", point has " +
                    std::to_string(d));
  }
  return d;
}

bool all_coeffs(const HilbertPoint& x, auto pred) {
  return std::all_of(x.coeffs().begin(), x.coeffs().end(), pred);
}

// Coefficient-wise inverse image of the positive cone: coordinates where y
// vanishes may be any nonpositive number, all others must match y.
bool cone_inverse_rule(const HilbertPoint& y, const HilbertPoint& x) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (std::abs(y[i]) <= kMembershipTolerance) {
      if (x[i] > kMembershipTolerance) return false;
    } else if (std::abs(x[i] - y[i]) > kMembershipTolerance) {
      return false;
    }
  }
  return true;
}

HilbertPoint unit_gaussian_like(const HilbertPoint& like, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<double> c(like.size());
  for (;;) {
    for (double& v : c) v = gauss(rng);
    HilbertPoint u = like.with_coeffs(c);
    const double n = norm(u);
    if (n > 1e-8) return u / n;
  }
}

HilbertPoint random_nonnegative_like(const HilbertPoint& like, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(0.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> c(like.size());
  if (unit(rng) < 0.25) {
    // a point on an extreme ray s * e_i
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    c[pick(rng)] = 4.0 * unit(rng);
  } else {
    for (double& v : c) v = unit(rng) < 0.3 ? 0.0 : coeff(rng);
  }
  return like.with_coeffs(std::move(c));
}

}  // namespace

ClosedBall::ClosedBall(HilbertPoint center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
  }
  if (center_.size() == 0) throw Error(ErrorCode::InvalidArgument, "ball center is empty");
}

ClosedBall ClosedBall::unit(std::size_t n, HilbertPoint::Weights weights) {
  return ClosedBall(HilbertPoint::zeros(n, std::move(weights)), 1.0);
}

PositiveCone::PositiveCone(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw Error(ErrorCode::InvalidArgument, "cone dimension must be positive");
}

SubspaceSpan::SubspaceSpan(std::vector<HilbertPoint> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty()) throw Error(ErrorCode::InvalidArgument, "subspace needs a generator");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (std::size_t j = i; j < generators_.size(); ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(inner(generators_[i], generators_[j]) - expected) > 1e-9) {
        throw Error(ErrorCode::InvalidArgument, "subspace generators are not orthonormal");
      }
    }
  }
}

std::string_view set_kind(const ConvexSet& set) noexcept {
  return std::visit(overloaded{
                        [](const ClosedBall&) { return std::string_view("ball"); },
                        [](const PositiveCone&) { return std::string_view("positive_cone"); },
                        [](const SubspaceSpan&) { return std::string_view("subspace"); },
                        [](const BochnerPointwiseCone&) { return std::string_view("bochner_cone"); },
                        [](const BochnerConstantSubspace&) {
                          return std::string_view("bochner_constants");
                        },
                    },
                    set);
}

void require_point_of(const ConvexSet& set, const HilbertPoint& x) {
  std::visit(overloaded{
                 [&](const ClosedBall& b) { require_compatible(b.center(), x); },
                 [&](const PositiveCone& k) {
                   if (x.size() != k.dim()) {
                     throw Error(ErrorCode::DimensionMismatch,
                                 "cone has dimension " + std::to_string(k.dim()) + ", point " +
                                     std::to_string(x.size()));
                   }
                 },
                 [&](const SubspaceSpan& s) { require_compatible(s.generators().front(), x); },
                 [&](const BochnerPointwiseCone& k) { bochner_dim(k.space(), k.value_dim(), x); },
                 [&](const BochnerConstantSubspace& d) {
                   bochner_dim(d.space(), d.value_dim(), x);
                 },
             },
             set);
}

std::string_view to_string(PointClass c) noexcept {
  return c == PointClass::Internal ? "Internal" : "Cuticle";
}

bool contains(const ConvexSet& set, const HilbertPoint& x, double tol) {
  require_point_of(set, x);
  return std::visit(
      overloaded{
          [&](const ClosedBall& b) { return norm(x - b.center()) <= b.radius() + tol; },
          [&](const PositiveCone&) { return all_coeffs(x, [tol](double c) { return c >= -tol; }); },
          [&](const SubspaceSpan& s) {
            HilbertPoint residual = x;
            for (const auto& g : s.generators()) residual = axpy(residual, -inner(x, g), g);
            return norm(residual) <= tol;
          },
          [&](const BochnerPointwiseCone&) {
            return all_coeffs(x, [tol](double c) { return c >= -tol; });
          },
          [&](const BochnerConstantSubspace& D) {
            const std::size_t d = bochner_dim(D.space(), D.value_dim(), x);
            return norm(x - detail::flat_constant(x, detail::flat_mean(D.space(), x, d))) <= tol;
          },
      },
      set);
}

PointClass classify_point(const ConvexSet& set, const HilbertPoint& y, double tol) {
  if (!contains(set, y, tol)) throw Error(ErrorCode::NotInSet, "classify_point: y is not in C");
  const auto strictly_positive = [&] {
    return all_coeffs(y, [tol](double c) { return c > tol; }) ? PointClass::Internal
                                                              : PointClass::Cuticle;
  };
  return std::visit(overloaded{
                        [&](const ClosedBall& b) {
                          return norm(y - b.center()) < b.radius() - tol ? PointClass::Internal
                                                                         : PointClass::Cuticle;
                        },
                        [&](const PositiveCone&) { return strictly_positive(); },
                        [&](const SubspaceSpan&) { return PointClass::Cuticle; },
                        [&](const BochnerPointwiseCone&) { return strictly_positive(); },
                        [&](const BochnerConstantSubspace&) { return PointClass::Cuticle; },
                    },
                    set);
}

bool in_inverse_image(const ConvexSet& set, const HilbertPoint& y, const HilbertPoint& x,
                      std::size_t sample_budget) {
  require_point_of(set, x);
  if (!contains(set, y, kMembershipTolerance)) {
    throw Error(ErrorCode::NotInSet, "in_inverse_image: y is not in C");
  }
  require_compatible(x, y);

  const bool closed_form = std::visit(
      overloaded{
          [&](const ClosedBall& b) {
            const HilbertPoint radial = y - b.center();
            if (norm(radial) < b.radius() - kMembershipTolerance) {
              return max_abs_diff(x, y) <= kMembershipTolerance;
            }
            // x = y + t (y - c) with t >= 0
            const HilbertPoint offset = x - y;
            const double t = inner(offset, radial) / norm_squared(radial);
            const double off_ray = norm(axpy(offset, -t, radial));
            return t >= -kMembershipTolerance &&
                   off_ray <= kMembershipTolerance * std::max(1.0, norm(offset));
          },
          [&](const PositiveCone&) { return cone_inverse_rule(y, x); },
          [&](const SubspaceSpan& s) {
            const HilbertPoint offset = x - y;
            return std::all_of(s.generators().begin(), s.generators().end(), [&](const auto& g) {
              return std::abs(inner(offset, g)) <= kMembershipTolerance;
            });
          },
          [&](const BochnerPointwiseCone&) { return cone_inverse_rule(y, x); },
          [&](const BochnerConstantSubspace& D) {
            const std::size_t d = bochner_dim(D.space(), D.value_dim(), x);
            const auto mean = detail::flat_mean(D.space(), x - y, d);
            return std::all_of(mean.begin(), mean.end(),
                               [](double m) { return std::abs(m) <= kMembershipTolerance; });
          },
      },
      set);

  if (!closed_form || sample_budget == 0) return closed_form;

  std::mt19937_64 rng(0x5eed1e55u);
  const HilbertPoint residual = x - y;
  for (const auto& z : sample_set_points(set, y, sample_budget, rng)) {
    if (inner(residual, y - z) < -1e-9) return false;
  }
  return true;
}

HilbertPoint ball_inverse_ray(const ClosedBall& ball, const HilbertPoint& y, double t) {
  require_compatible(ball.center(), y);
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "ray parameter must be >= 0");
  const HilbertPoint radial = y - ball.center();
  if (std::abs(norm(radial) - ball.radius()) > kMembershipTolerance) {
    throw Error(ErrorCode::NotOnSphere, "ball_inverse_ray: y is not on the sphere");
  }
  return axpy(y, t, radial);
}

bool dual_cone_contains(const PositiveCone& cone, const HilbertPoint& z) {
  require_point_of(cone, z);
  return all_coeffs(z, [](double c) { return c <= kMembershipTolerance; });
}

SubspaceSpan orthogonal_cone(const SubspaceSpan& subspace, std::size_t ambient_dim) {
  if (subspace.ambient_dim() != ambient_dim) {
    throw Error(ErrorCode::DimensionMismatch, "generators do not live in the ambient dimension");
  }
  const HilbertPoint& like = subspace.generators().front();
  std::vector<HilbertPoint> basis = subspace.generators();
  std::vector<HilbertPoint> complement;
  for (std::size_t i = 0; i < ambient_dim && basis.size() < ambient_dim; ++i) {
    std::vector<double> e(ambient_dim, 0.0);
    e[i] = 1.0 / std::sqrt(like.weight(i));
    HilbertPoint candidate = like.with_coeffs(std::move(e));
    // two Gram-Schmidt passes keep the result orthogonal to rounding level
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) candidate = axpy(candidate, -inner(candidate, b), b);
    }
    const double n = norm(candidate);
    if (n < 1e-8) continue;
    candidate = candidate / n;
    basis.push_back(candidate);
    complement.push_back(std::move(candidate));
  }
  if (complement.empty()) {
    throw Error(ErrorCode::InvalidArgument, "subspace is the whole space; complement is {0}");
  }
  return SubspaceSpan(std::move(complement));
}

TranslationCheck cone_inverse_translation_check(const PositiveCone& cone, const HilbertPoint& y,
                                                double t, const HilbertPoint& x) {
  if (!contains(cone, y)) throw Error(ErrorCode::NotInSet, "translation check: y is not in K");
  if (all_coeffs(y, [](double c) { return std::abs(c) <= kMembershipTolerance; })) {
    throw Error(ErrorCode::ZeroVertex, "translation check needs y != 0");
  }
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "translation check needs t > 0");
  require_compatible(x, y);
  TranslationCheck out;
  out.lhs = in_inverse_image(cone, t * y, x - y);
  out.rhs = in_inverse_image(cone, y, axpy(x, -t, y));
  return out;
}

std::vector<HilbertPoint> sample_set_points(const ConvexSet& set, const HilbertPoint& anchor,
                                            std::size_t count, std::mt19937_64& rng) {
  require_point_of(set, anchor);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  const bool anchor_inside = contains(set, anchor, 0.0);

  const auto generic = [&]() -> HilbertPoint {
    return std::visit(
        overloaded{
            [&](const ClosedBall& b) {
              return axpy(b.center(), b.radius(), unit_gaussian_like(anchor, rng));
            },
            [&](const PositiveCone&) { return random_nonnegative_like(anchor, rng); },
            [&](const SubspaceSpan& s) {
              HilbertPoint z = anchor.zeros_like();
              for (const auto& g : s.generators()) z = axpy(z, 3.0 * coeff(rng), g);
              return z;
            },
            [&](const BochnerPointwiseCone&) { return random_nonnegative_like(anchor, rng); },
            [&](const BochnerConstantSubspace& D) {
              const std::size_t d = bochner_dim(D.space(), D.value_dim(), anchor);
              std::vector<double> value(d);
              for (double& v : value) v = coeff(rng);
              return detail::flat_constant(anchor, value);
            },
        },
        set);
  };

  std::vector<HilbertPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    HilbertPoint w = generic();
    if (anchor_inside && i % 4 != 0) {
      const double lambda = unit(rng);
      w = axpy(lambda * anchor, 1.0 - lambda, w);
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace hilproj
