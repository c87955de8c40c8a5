#pragma once

// Closed-form one-sided (Gateaux) directional derivatives
//   P'_C(x)(v) = lim_{t -> 0+} (P_C(x + t v) - P_C(x)) / t
// for balls, positive cones, subspaces and the Bochner-space sets, together
// with a second, set-agnostic source built from the general facts that hold
// for every closed convex set.

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "hilproj/convex_set.hpp"

namespace hilproj {

/// Relative tolerance under which <x - c, v> is treated as 0 (tangent).
inline constexpr double kTangentTolerance = 1e-12;

/// Up: x + t v stays outside the open ball for small t > 0. Down: it enters.
enum class DirectionClass { Up, Down };
std::string_view to_string(DirectionClass c) noexcept;

struct DerivativeResult {
  std::optional<HilbertPoint> value;  ///< present iff covered
  std::string case_tag;               ///< which closed form was used, e.g. "Thm4.1(ii)(a)"
  bool covered = false;

  static DerivativeResult of(std::string tag, HilbertPoint value);
  static DerivativeResult not_covered(std::string tag = "NotCoveredByPaper");
};

/// Requires x on the sphere (within kUnitTolerance) and v != 0.
DirectionClass classify_direction(const ClosedBall& ball, const HilbertPoint& x,
                                  const HilbertPoint& v);

/// Always covered: interior, exterior and both sphere direction classes.
DerivativeResult ball_derivative(const ClosedBall& ball, const HilbertPoint& x,
                                 const HilbertPoint& v);

/// Covered when x, v in K; x, v in -K; or x strictly positive. Everything
/// else is reported as not covered rather than guessed.
DerivativeResult cone_derivative(const PositiveCone& cone, const HilbertPoint& x,
                                 const HilbertPoint& v);

/// Facts valid for any closed convex C:
///  - x in the interior of C: v;
///  - x in the interior of some P_C^{-1}(y): 0;
///  - x outside C, v a positive multiple of +-(x - P_C x): 0;
///  - x in C and x + delta v in C for some delta > 0: v.
DerivativeResult generic_facts_derivative(const ConvexSet& set, const HilbertPoint& x,
                                          const HilbertPoint& v);

/// The specialised closed form for whichever variant `set` holds.
DerivativeResult analytic_derivative(const ConvexSet& set, const HilbertPoint& x,
                                     const HilbertPoint& v);

using DerivativeFn = std::function<DerivativeResult(const HilbertPoint&, const HilbertPoint&)>;

/// P'(x; lambda v) == lambda P'(x; v) within 1e-9 relative. Throws NotCovered
/// if either evaluation is not covered.
bool homogeneity_check(const DerivativeFn& derive, const HilbertPoint& x, const HilbertPoint& v,
                       double lambda);

}  // namespace hilproj
