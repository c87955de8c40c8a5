#pragma once

// Operations on the discretized Bochner space L_2(S; H).

#include <span>
#include <string>
#include <vector>

#include "hilproj/bochner_space.hpp"
#include "hilproj/derivative.hpp"

namespace hilproj {

/// 1_A (x) x: the value x on atoms in A, zero elsewhere.
BochnerFunction simple_function(const DiscreteProbabilitySpace& space,
                                std::span<const std::string> atom_ids, const HilbertPoint& x);

/// 1_S (x) x.
BochnerFunction constant_function(const DiscreteProbabilitySpace& space, const HilbertPoint& x);

/// <f, g>_{L_2} = sum_s mu(s) <f(s), g(s)>.
double bochner_inner(const BochnerFunction& f, const BochnerFunction& g);
double bochner_norm(const BochnerFunction& f);

/// E(f) = sum_s mu(s) f(s).
HilbertPoint expectation(const BochnerFunction& f);

/// Per-atom, per-coordinate clipping of negative coefficients.
BochnerFunction project_pointwise_cone(const BochnerFunction& f);

/// P_D(f) = 1_S (x) E(f), the projection onto constant functions.
BochnerFunction project_constants(const BochnerFunction& f);

/// Decides f in P_K^{-1}(g) with f != g for g in the pointwise cone: wherever
/// a coefficient of g vanishes f may be any nonpositive number, elsewhere f
/// must agree with g. Throws NotInCone if g has a negative coefficient.
bool cone_inverse_check(const BochnerFunction& g, const BochnerFunction& f);

struct OrthonormalSystemReport {
  std::size_t dim = 0;
  std::vector<std::string> half_measure_subset;    ///< atoms of A with mu(A) = 1/2
  std::vector<std::vector<double>> gram;           ///< <1_S b_n, 1_S b_m>
  double max_gram_deviation = 0.0;                 ///< max |gram - identity|
  double witness_norm_squared = 0.0;               ///< ||f||^2 of the witness
  std::vector<double> witness_inner_products;      ///< <f, 1_S b_m> for m = 1..d
  double max_witness_inner = 0.0;

  /// orthonormal to `tol`, witness nonzero and orthogonal to every 1_S b_m
  bool certified(double tol = 1e-12) const noexcept;
};

/// Shows that {1_S (x) b_n} is orthonormal but not a basis: the witness
/// f(s) = sum_{n <= d} 2^{-n} G(s) b_n with G = +1 on A and -1 off A is
/// nonzero yet orthogonal to every 1_S (x) b_m. Throws NoHalfMeasureSubset
/// when no A with mu(A) = 1/2 exists (within 1e-12).
OrthonormalSystemReport orthonormal_system_report(const DiscreteProbabilitySpace& space,
                                                  std::size_t d);

/// The witness function used by the report.
BochnerFunction non_basis_witness(const DiscreteProbabilitySpace& space, std::size_t d);

/// A subset of atoms with measure 1/2, if one exists.
std::optional<std::vector<std::string>> find_half_measure_subset(
    const DiscreteProbabilitySpace& space);

/// Derivative of the unit-ball projection in L_2(S; H). The value is the
/// flattened function; see unflatten().
DerivativeResult bochner_ball_derivative(const BochnerFunction& f, const BochnerFunction& h);

/// P'_D(f)(h) = 1_S (x) E(h), flattened.
DerivativeResult constants_subspace_derivative(const DiscreteProbabilitySpace& space,
                                               const BochnerFunction& f, const BochnerFunction& h);

/// Pointwise-cone derivative, flattened; same case split as the positive cone.
DerivativeResult pointwise_cone_derivative(const BochnerFunction& f, const BochnerFunction& h);

}  // namespace hilproj
