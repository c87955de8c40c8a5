#pragma once

// Closed convex sets with closed-form metric projections, plus the
// point-classification and inverse-image machinery built on top of them.

#include <cstddef>
#include <random>
#include <string_view>
#include <variant>
#include <vector>

#include "hilproj/bochner_space.hpp"
#include "hilproj/hilbert_point.hpp"

namespace hilproj {

inline constexpr double kMembershipTolerance = 1e-9;

class ClosedBall {
 public:
  ClosedBall(HilbertPoint center, double radius);

  /// Closed unit ball of dimension n centered at the origin.
  static ClosedBall unit(std::size_t n, HilbertPoint::Weights weights = nullptr);

  const HilbertPoint& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

 private:
  HilbertPoint center_;
  double radius_;
};

/// K = { x : <x, e_n> >= 0 for every n } in a truncation of dimension dim.
class PositiveCone {
 public:
  explicit PositiveCone(std::size_t dim);
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
};

/// Closed linear span of an orthonormal family.
class SubspaceSpan {
 public:
  explicit SubspaceSpan(std::vector<HilbertPoint> generators);

  const std::vector<HilbertPoint>& generators() const noexcept { return generators_; }
  std::size_t ambient_dim() const noexcept { return generators_.front().size(); }

 private:
  std::vector<HilbertPoint> generators_;
};

/// Functions whose coefficients are nonnegative at every atom. value_dim == 0
/// means "whatever the point says".
class BochnerPointwiseCone {
 public:
  explicit BochnerPointwiseCone(DiscreteProbabilitySpace space, std::size_t value_dim = 0)
      : space_(std::move(space)), value_dim_(value_dim) {}

  const DiscreteProbabilitySpace& space() const noexcept { return space_; }
  std::size_t value_dim() const noexcept { return value_dim_; }

 private:
  DiscreteProbabilitySpace space_;
  std::size_t value_dim_;
};

/// The subspace of constant functions, spanned by {1_S (x) b_n}.
class BochnerConstantSubspace {
 public:
  explicit BochnerConstantSubspace(DiscreteProbabilitySpace space, std::size_t value_dim = 0)
      : space_(std::move(space)), value_dim_(value_dim) {}

  const DiscreteProbabilitySpace& space() const noexcept { return space_; }
  std::size_t value_dim() const noexcept { return value_dim_; }

 private:
  DiscreteProbabilitySpace space_;
  std::size_t value_dim_;
};

using ConvexSet = std::variant<ClosedBall, PositiveCone, SubspaceSpan, BochnerPointwiseCone,
                               BochnerConstantSubspace>;

/// "ball", "positive_cone", "subspace", "bochner_cone" or "bochner_constants".
std::string_view set_kind(const ConvexSet& set) noexcept;

/// Throws DimensionMismatch / WeightMismatch when x does not live in the
/// ambient space of `set`.
void require_point_of(const ConvexSet& set, const HilbertPoint& x);

enum class PointClass { Internal, Cuticle };
std::string_view to_string(PointClass c) noexcept;

bool contains(const ConvexSet& set, const HilbertPoint& x, double tol = kMembershipTolerance);

/// Internal: the inverse image of y is {y}. Cuticle: it is strictly larger.
PointClass classify_point(const ConvexSet& set, const HilbertPoint& y,
                          double tol = kMembershipTolerance);

/// Decides P_C(x) == y from the closed-form description of P_C^{-1}(y).
/// With sample_budget > 0 the variational inequality <x-y, y-z> >= -1e-9 is
/// additionally checked on that many sampled z in C.
bool in_inverse_image(const ConvexSet& set, const HilbertPoint& y, const HilbertPoint& x,
                      std::size_t sample_budget = 0);

/// y + t (y - c) for a sphere point y and t >= 0.
HilbertPoint ball_inverse_ray(const ClosedBall& ball, const HilbertPoint& y, double t);

/// Membership in the dual cone -K.
bool dual_cone_contains(const PositiveCone& cone, const HilbertPoint& z);

/// Orthonormal basis of D^perp = { x : <x, z> = 0 for all z in D }.
SubspaceSpan orthogonal_cone(const SubspaceSpan& subspace, std::size_t ambient_dim);

struct TranslationCheck {
  bool lhs = false;  ///< x in y + P_K^{-1}(t y)
  bool rhs = false;  ///< x in t y + P_K^{-1}(y)
  bool agree() const noexcept { return lhs == rhs; }
};

TranslationCheck cone_inverse_translation_check(const PositiveCone& cone, const HilbertPoint& y,
                                                double t, const HilbertPoint& x);

/// Random elements of `set` shaped like `anchor` (dimension and weights).
/// When the anchor lies in the set, samples are convex combinations of the
/// anchor with extreme or generic elements, so the variational inequality is
/// exercised near where it is tight.
std::vector<HilbertPoint> sample_set_points(const ConvexSet& set, const HilbertPoint& anchor,
                                            std::size_t count, std::mt19937_64& rng);

}  // namespace hilproj
