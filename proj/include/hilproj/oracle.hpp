#pragma once

// Numerical oracles that never look at the closed forms they check:
// one-sided difference quotients with Richardson extrapolation, sampled
// variational-inequality certificates, and a seeded property battery.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hilproj/convex_set.hpp"

namespace hilproj {

using PointMap = std::function<HilbertPoint(const HilbertPoint&)>;

/// Step schedule t_k = 2^{-k}, k = kFirstStep .. kLastStep.
inline constexpr int kFirstStep = 4;
inline constexpr int kLastStep = 26;

struct QuotientStep {
  double t = 0.0;
  HilbertPoint quotient;  ///< (P(x + t v) - P(x)) / t
};

struct OracleEstimate {
  std::optional<HilbertPoint> value;  ///< extrapolated limit; absent unless converged
  std::vector<QuotientStep> steps;    ///< strictly decreasing t
  bool converged = false;
  double residual = 0.0;              ///< max pairwise spread of the last three quotients
  double extrapolation_error = 0.0;   ///< error estimate of the chosen tableau entry
};

/// (map(x + t v) - map(x)) / t.
HilbertPoint difference_quotient(const PointMap& map, const HilbertPoint& x,
                                 const HilbertPoint& v, double t);

/// Converged iff the last three raw quotients are pairwise within tol (max
/// norm); the value is then the best entry of a Richardson tableau over the
/// whole schedule. Only t > 0 is ever used.
OracleEstimate fd_derivative(const PointMap& map, const HilbertPoint& x, const HilbertPoint& v,
                             double tol);
OracleEstimate fd_derivative(const ConvexSet& set, const HilbertPoint& x, const HilbertPoint& v,
                             double tol);

struct VariationalCertificate {
  double min_inner = 0.0;  ///< min over sampled z of <x - u, u - z>
  bool pass = false;       ///< min_inner >= -1e-9
};

/// u must lie in C (within 1e-9).
VariationalCertificate variational_certificate(const ConvexSet& set, const HilbertPoint& x,
                                               const HilbertPoint& u, std::size_t samples,
                                               std::uint64_t seed = 0);

/// Random inputs for the properties: coefficients uniform in [-2, 2],
/// sphere points by normalization, cone-boundary points by zeroing a random
/// subset of coordinates.
class PointSampler {
 public:
  PointSampler(const HilbertPoint& like, std::uint64_t seed);

  HilbertPoint uniform();
  HilbertPoint on_sphere(const ClosedBall& ball);
  HilbertPoint cone_boundary();
  /// Mixture tailored to `set`, so every case region has positive probability.
  HilbertPoint for_set(const ConvexSet& set);

  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  HilbertPoint like_;
  std::mt19937_64 rng_;
};

/// Shape (dimension and weights) of a generic point of `set`. Bochner sets
/// without a fixed value dimension use d = 2.
HilbertPoint template_point(const ConvexSet& set);

struct PropertyRecord {
  std::string property;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_residual = 0.0;
  std::size_t skipped = 0;  ///< inconclusive samples, not counted as trials
};

struct BatteryReport {
  std::string set_kind;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyRecord> properties;

  std::size_t failed_properties() const noexcept;
};

/// Deterministic for a fixed (set, trials, seed).
BatteryReport property_battery(const ConvexSet& set, std::size_t trials, std::uint64_t seed);

}  // namespace hilproj
