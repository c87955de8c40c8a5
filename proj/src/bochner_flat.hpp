#pragma once

#include "hilproj/bochner_space.hpp"
#include "hilproj/derivative.hpp"

namespace hilproj::detail {

/// Derivative of f -> 1_S (x) E(f) at a flattened point x along v.
DerivativeResult constants_derivative_flat(const DiscreteProbabilitySpace& space,
                                           const HilbertPoint& x, const HilbertPoint& v);

/// Positive-cone derivative on the flattened pointwise cone, retagged.
DerivativeResult pointwise_cone_derivative_flat(const DiscreteProbabilitySpace& space,
                                                const HilbertPoint& x, const HilbertPoint& v);

}  // namespace hilproj::detail
