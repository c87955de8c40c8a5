#pragma once

#include <span>
#include <vector>

#include "hilproj/convex_set.hpp"

namespace hilproj {

/// Points with ||x - c|| in (r, r + kSphereSlack] are treated as lying on the
/// sphere and returned unchanged.
inline constexpr double kSphereSlack = 1e-12;

/// Metric projection P_C(x): the unique nearest point of C to x.
HilbertPoint project(const ConvexSet& set, const HilbertPoint& x);

/// d(x, C) = ||x - P_C x||.
double distance(const ConvexSet& set, const HilbertPoint& x);

/// Element-wise projection. A failing element is rethrown with its index
/// prefixed to the message.
std::vector<HilbertPoint> project_sequence(const ConvexSet& set, std::span<const HilbertPoint> xs);

}  // namespace hilproj
