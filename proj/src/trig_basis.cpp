#include "hilproj/trig_basis.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "hilproj/error.hpp"

namespace hilproj::trig {

using std::numbers::pi;

double basis(std::size_t n, double t) {
  if (n == 0) throw Error(ErrorCode::OutOfDomain, "trigonometric basis is indexed from 1");
  if (n == 1) return 1.0 / std::sqrt(2.0 * pi);
  const double m = static_cast<double>(n / 2);
  return (n % 2 == 0 ? std::cos(m * t) : std::sin(m * t)) / std::sqrt(pi);
}

HilbertPoint coefficients(const std::function<double(double)>& f, std::size_t n_terms,
                          std::size_t samples) {
  if (samples == 0) samples = 4 * n_terms + 16;
  const double h = 2.0 * pi / static_cast<double>(samples);
  std::vector<double> values(samples);
  for (std::size_t j = 0; j < samples; ++j) values[j] = f(-pi + h * static_cast<double>(j));

  std::vector<double> c(n_terms, 0.0);
  for (std::size_t n = 1; n <= n_terms; ++n) {
    double sum = 0.0;
    for (std::size_t j = 0; j < samples; ++j) {
      sum += values[j] * basis(n, -pi + h * static_cast<double>(j));
    }
    c[n - 1] = h * sum;
  }
  return HilbertPoint(std::move(c));
}

double synthesize(const HilbertPoint& c, double t) {
  double sum = 0.0;
  for (std::size_t n = 1; n <= c.size(); ++n) sum += c[n - 1] * basis(n, t);
  return sum;
}

double l2_norm(const std::function<double(double)>& f, std::size_t samples) {
  const double h = 2.0 * pi / static_cast<double>(samples);
  double sum = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double v = f(-pi + h * static_cast<double>(j));
    sum += v * v;
  }
  return std::sqrt(h * sum);
}

bool has_odd_pattern(const HilbertPoint& c, double tol) {
  // constant (n = 1) and cosines (even n) vanish
  for (std::size_t n = 1; n <= c.size(); ++n) {
    if ((n == 1 || n % 2 == 0) && std::abs(c[n - 1]) > tol) return false;
  }
  return true;
}

bool has_even_pattern(const HilbertPoint& c, double tol) {
  for (std::size_t n = 3; n <= c.size(); n += 2) {
    if (std::abs(c[n - 1]) > tol) return false;
  }
  return true;
}

}  // namespace hilproj::trig
