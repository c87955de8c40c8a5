#include "hilproj/projection.hpp"

#include <string>

#include "flat_ops.hpp"
#include "hilproj/error.hpp"

namespace hilproj {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Coefficient clipping. Coefficients <= 0 go to 0; for exact zeros the two
// conventions (< 0 vs <= 0) give the same value.
HilbertPoint clip_negative(const HilbertPoint& x) {
  std::vector<double> c(x.coeffs().begin(), x.coeffs().end());
  for (double& v : c) {
    if (v <= 0.0) v = 0.0;
  }
  return x.with_coeffs(std::move(c));
}

}  // namespace

HilbertPoint project(const ConvexSet& set, const HilbertPoint& x) {
  require_point_of(set, x);
  return std::visit(
      overloaded{
          [&](const ClosedBall& b) {
            const HilbertPoint radial = x - b.center();
            const double dist = norm(radial);
            if (dist <= b.radius() + kSphereSlack) return x;
            return axpy(b.center(), b.radius() / dist, radial);
          },
          [&](const PositiveCone&) { return clip_negative(x); },
          [&](const SubspaceSpan& s) {
            HilbertPoint out = x.zeros_like();
            for (const auto& g : s.generators()) out = axpy(out, inner(x, g), g);
            return out;
          },
          [&](const BochnerPointwiseCone&) { return clip_negative(x); },
          [&](const BochnerConstantSubspace& D) {
            const std::size_t d = flattened_value_dim(D.space(), x);
            return detail::flat_constant(x, detail::flat_mean(D.space(), x, d));
          },
      },
      set);
}

double distance(const ConvexSet& set, const HilbertPoint& x) { return norm(x - project(set, x)); }

std::vector<HilbertPoint> project_sequence(const ConvexSet& set,
                                           std::span<const HilbertPoint> xs) {
  std::vector<HilbertPoint> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    try {
      out.push_back(project(set, xs[i]));
    } catch (const Error& e) {
      throw Error(e.code(), "element " + std::to_string(i) + ": " + e.detail());
    }
  }
  return out;
}

}  // namespace hilproj
