#pragma once

// Helpers on flattened Bochner points shared by the set, projection and
// bochner translation units.

#include <vector>

#include "hilproj/bochner_space.hpp"

namespace hilproj::detail {

/// E(f) = sum_a w_a f(s_a), computed on the flattened representation.
inline std::vector<double> flat_mean(const DiscreteProbabilitySpace& space, const HilbertPoint& x,
                                     std::size_t d) {
  std::vector<double> mean(d, 0.0);
  for (std::size_t a = 0; a < space.size(); ++a) {
    for (std::size_t n = 0; n < d; ++n) mean[n] += space.weight(a) * x[a * d + n];
  }
  return mean;
}

/// The constant function with value `value`, flattened with x's weights.
inline HilbertPoint flat_constant(const HilbertPoint& like, const std::vector<double>& value) {
  const std::size_t d = value.size();
  std::vector<double> c(like.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = value[i % d];
  return like.with_coeffs(std::move(c));
}

}  // namespace hilproj::detail
