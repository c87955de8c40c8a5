#pragma once

// Discretized Hilbertian Bochner space L_2(S; H): S is a finite probability
// space and H is truncated to d coordinates. A function f: S -> H is stored as
// one H-point per atom and can be flattened to a single weighted HilbertPoint
// with k*d coefficients (atom-major), where each atom weight is repeated d
// times. Under that flattening the L_2 inner product is the weighted
// coefficient inner product, so ball and cone machinery apply unchanged.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hilproj/hilbert_point.hpp"

namespace hilproj {

struct Atom {
  std::string id;
  double weight = 0.0;

  bool operator==(const Atom&) const = default;
};

class DiscreteProbabilitySpace {
 public:
  /// Weights must be positive and sum to 1 within 1e-12; ids must be unique.
  explicit DiscreteProbabilitySpace(std::vector<Atom> atoms);

  /// n atoms of weight 1/n named s1..sn.
  static DiscreteProbabilitySpace uniform(std::size_t n);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double weight(std::size_t i) const { return atoms_[i].weight; }

  std::optional<std::size_t> index_of(std::string_view id) const;

  /// mu(A) for a set of atom ids; throws UnknownAtom.
  double measure(std::span<const std::string> ids) const;

  bool operator==(const DiscreteProbabilitySpace&) const = default;

 private:
  std::vector<Atom> atoms_;
};

class BochnerFunction {
 public:
  /// One value per atom, all of the same dimension d and unweighted.
  BochnerFunction(DiscreteProbabilitySpace space, std::vector<HilbertPoint> values);

  const DiscreteProbabilitySpace& space() const noexcept { return space_; }
  const std::vector<HilbertPoint>& values() const noexcept { return values_; }
  const HilbertPoint& value(std::size_t atom) const { return values_[atom]; }
  std::size_t dim() const noexcept { return dim_; }

 private:
  DiscreteProbabilitySpace space_;
  std::vector<HilbertPoint> values_;
  std::size_t dim_ = 0;
};

/// Weights of the flattened representation: atom weights repeated d times.
HilbertPoint::Weights flattened_weights(const DiscreteProbabilitySpace& space, std::size_t d);

HilbertPoint flatten(const BochnerFunction& f);

/// Inverse of flatten; the point must carry exactly the flattened weights.
BochnerFunction unflatten(const DiscreteProbabilitySpace& space, const HilbertPoint& x);

/// d such that x is a flattened function on `space`; throws otherwise.
std::size_t flattened_value_dim(const DiscreteProbabilitySpace& space, const HilbertPoint& x);

}  // namespace hilproj
