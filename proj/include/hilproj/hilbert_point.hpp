#pragma once

// Points of a separable real Hilbert space, stored as coefficient vectors
// over an implicit orthonormal basis {e_n}. Infinite bases are truncated to
// their first N coefficients.
//
// An optional positive weight vector turns the coefficient inner product into
// sum_n w_n x_n y_n. This is how discretized Bochner functions are carried
// around: every atom of the probability space contributes its weight once per
// value coordinate.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace hilproj {

/// Absolute tolerance on | ||x|| - 1 | for unit-vector preconditions.
inline constexpr double kUnitTolerance = 1e-9;

class HilbertPoint {
 public:
  using Weights = std::shared_ptr<const std::vector<double>>;

  HilbertPoint() = default;
  explicit HilbertPoint(std::vector<double> coeffs);
  HilbertPoint(std::vector<double> coeffs, std::vector<double> weights);
  HilbertPoint(std::vector<double> coeffs, Weights weights);

  static HilbertPoint zeros(std::size_t n, Weights weights = nullptr);

  /// Same weighting, new coefficients.
  HilbertPoint with_coeffs(std::vector<double> coeffs) const;
  HilbertPoint zeros_like() const;

  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t i) const { return coeffs_[i]; }

  bool weighted() const noexcept { return weights_ != nullptr; }
  const Weights& weight_handle() const noexcept { return weights_; }
  std::span<const double> weights() const noexcept;
  double weight(std::size_t i) const noexcept { return weights_ ? (*weights_)[i] : 1.0; }

 private:
  std::vector<double> coeffs_;
  Weights weights_;
};

bool same_weights(const HilbertPoint& a, const HilbertPoint& b) noexcept;

/// Throws DimensionMismatch or WeightMismatch when a and b cannot be combined.
void require_compatible(const HilbertPoint& a, const HilbertPoint& b);

HilbertPoint operator+(const HilbertPoint& a, const HilbertPoint& b);
HilbertPoint operator-(const HilbertPoint& a, const HilbertPoint& b);
HilbertPoint operator-(const HilbertPoint& a);
HilbertPoint operator*(double s, const HilbertPoint& a);
HilbertPoint operator*(const HilbertPoint& a, double s);
HilbertPoint operator/(const HilbertPoint& a, double s);

/// a + s * b without the temporary.
HilbertPoint axpy(const HilbertPoint& a, double s, const HilbertPoint& b);

double inner(const HilbertPoint& x, const HilbertPoint& y);
double norm_squared(const HilbertPoint& x);
double norm(const HilbertPoint& x);

/// Largest per-coefficient absolute difference (ignores weights).
double max_abs_diff(const HilbertPoint& a, const HilbertPoint& b);
bool is_zero(const HilbertPoint& x) noexcept;

/// delta(eps) = 1 - sqrt(1 - eps^2 / 4) on [0, 2].
double modulus_convexity(double eps);

/// rho(t) = sqrt(1 + t^2) - 1 for t > 0.
double modulus_smoothness(double t);

/// One-sided derivative of the norm at a unit x along a unit v, which in a
/// Hilbert space is <x, v>. Both inputs must be unit within kUnitTolerance.
double norm_directional_derivative(const HilbertPoint& x, const HilbertPoint& v);

}  // namespace hilproj
