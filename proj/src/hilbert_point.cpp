#include "hilproj/hilbert_point.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hilproj/error.hpp"

namespace hilproj {

namespace {

HilbertPoint::Weights checked_weights(std::size_t n, HilbertPoint::Weights weights) {
  if (!weights) return weights;
  if (weights->size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "weights have length " + std::to_string(weights->size()) + ", coefficients " +
                    std::to_string(n));
  }
  for (double w : *weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidArgument, "inner-product weights must be finite and positive");
    }
  }
  return weights;
}

template <typename Op>
HilbertPoint zip(const HilbertPoint& a, const HilbertPoint& b, Op op) {
  require_compatible(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return a.with_coeffs(std::move(out));
}

}  // namespace

HilbertPoint::HilbertPoint(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

HilbertPoint::HilbertPoint(std::vector<double> coeffs, std::vector<double> weights)
    : HilbertPoint(std::move(coeffs),
                   std::make_shared<const std::vector<double>>(std::move(weights))) {}

HilbertPoint::HilbertPoint(std::vector<double> coeffs, Weights weights)
    : coeffs_(std::move(coeffs)), weights_(checked_weights(coeffs_.size(), std::move(weights))) {}

HilbertPoint HilbertPoint::zeros(std::size_t n, Weights weights) {
  return HilbertPoint(std::vector<double>(n, 0.0), std::move(weights));
}

HilbertPoint HilbertPoint::with_coeffs(std::vector<double> coeffs) const {
  if (coeffs.size() != coeffs_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "with_coeffs: length changed");
  }
  HilbertPoint out;
  out.coeffs_ = std::move(coeffs);
  out.weights_ = weights_;
  return out;
}

HilbertPoint HilbertPoint::zeros_like() const {
  return with_coeffs(std::vector<double>(coeffs_.size(), 0.0));
}

std::span<const double> HilbertPoint::weights() const noexcept {
  if (!weights_) return {};
  return *weights_;
}

bool same_weights(const HilbertPoint& a, const HilbertPoint& b) noexcept {
  const auto& wa = a.weight_handle();
  const auto& wb = b.weight_handle();
  if (wa == wb) return true;
  if (!wa || !wb) return false;
  return *wa == *wb;
}

void require_compatible(const HilbertPoint& a, const HilbertPoint& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  if (!same_weights(a, b)) {
    throw Error(ErrorCode::WeightMismatch, "points carry different inner-product weights");
  }
}

HilbertPoint operator+(const HilbertPoint& a, const HilbertPoint& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}

HilbertPoint operator-(const HilbertPoint& a, const HilbertPoint& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}

HilbertPoint operator-(const HilbertPoint& a) { return -1.0 * a; }

HilbertPoint operator*(double s, const HilbertPoint& a) {
  std::vector<double> out(a.coeffs().begin(), a.coeffs().end());
  for (double& c : out) c *= s;
  return a.with_coeffs(std::move(out));
}

HilbertPoint operator*(const HilbertPoint& a, double s) { return s * a; }

HilbertPoint operator/(const HilbertPoint& a, double s) {
  std::vector<double> out(a.coeffs().begin(), a.coeffs().end());
  for (double& c : out) c /= s;
  return a.with_coeffs(std::move(out));
}

HilbertPoint axpy(const HilbertPoint& a, double s, const HilbertPoint& b) {
  return zip(a, b, [s](double x, double y) { return x + s * y; });
}

double inner(const HilbertPoint& x, const HilbertPoint& y) {
  require_compatible(x, y);
  double sum = 0.0;
  if (x.weighted()) {
    for (std::size_t i = 0; i < x.size(); ++i) sum += x.weight(i) * (x[i] * y[i]);  // symmetric in x, y bit for bit
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  }
  return sum;
}

double norm_squared(const HilbertPoint& x) { return inner(x, x); }

double norm(const HilbertPoint& x) { return std::sqrt(norm_squared(x)); }

double max_abs_diff(const HilbertPoint& a, const HilbertPoint& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "max_abs_diff: dimensions differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

bool is_zero(const HilbertPoint& x) noexcept {
  return std::all_of(x.coeffs().begin(), x.coeffs().end(), [](double c) { return c == 0.0; });
}

double modulus_convexity(double eps) {
  if (!(eps >= 0.0 && eps <= 2.0)) {
    throw Error(ErrorCode::OutOfDomain, "modulus of convexity is defined on [0, 2]");
  }
  return 1.0 - std::sqrt(1.0 - 0.25 * eps * eps);
}

double modulus_smoothness(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::OutOfDomain, "modulus of smoothness is defined for t > 0");
  }
  // sqrt(1+t^2) - 1 rewritten to avoid cancellation for small t.
  return t * t / (std::sqrt(1.0 + t * t) + 1.0);
}

double norm_directional_derivative(const HilbertPoint& x, const HilbertPoint& v) {
  require_compatible(x, v);
  if (std::abs(norm(x) - 1.0) > kUnitTolerance || std::abs(norm(v) - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::NotUnitVector, "norm derivative needs unit x and v");
  }
  return inner(x, v);
}

}  // namespace hilproj
