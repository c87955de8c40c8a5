#include "hilproj/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <type_traits>

#include "hilproj/derivative.hpp"
#include "hilproj/error.hpp"
#include "hilproj/projection.hpp"

namespace hilproj {

namespace {

constexpr double kInequalitySlack = 1e-9;
constexpr std::size_t kRichardsonOrder = 6;
constexpr std::size_t kVariationalSamples = 64;

double spread(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> to_vec(const HilbertPoint& p) {
  return {p.coeffs().begin(), p.coeffs().end()};
}

// Richardson tableau over quotients at halving steps. The quotient error of a
// piecewise-smooth projection expands in integer powers of t, so column j
// removes the t^j term. noise[i] is the rounding floor of row i, added to
// every estimate so that a lucky tie among noisy small-t rows never wins.
// Returns (best entry, its error estimate).
std::pair<std::vector<double>, double> extrapolate(const std::vector<std::vector<double>>& q,
                                                   const std::vector<double>& noise) {
  const std::size_t rows = q.size();
  std::vector<std::vector<std::vector<double>>> T(rows);
  std::vector<double> best = q.back();
  double best_err = rows >= 2 ? spread(q[rows - 1], q[rows - 2]) + noise[rows - 1]
                              : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows; ++i) {
    T[i].push_back(q[i]);
    if (i > 0) {
      const double e0 = spread(T[i][0], T[i - 1][0]) + noise[i];
      if (e0 < best_err) {
        best_err = e0;
        best = T[i][0];
      }
    }
    for (std::size_t j = 1; j <= std::min(i, kRichardsonOrder); ++j) {
      const double f = 1.0 / (std::ldexp(1.0, static_cast<int>(j)) - 1.0);
      std::vector<double> next(T[i][j - 1].size());
      for (std::size_t k = 0; k < next.size(); ++k) {
        next[k] = T[i][j - 1][k] + (T[i][j - 1][k] - T[i - 1][j - 1][k]) * f;
      }
      // each extrapolation level can amplify the noise by up to 3x
      const double err = std::max(spread(next, T[i][j - 1]), spread(next, T[i - 1][j - 1])) +
                         noise[i] * std::pow(3.0, static_cast<double>(j));
      T[i].push_back(std::move(next));
      if (err < best_err) {
        best_err = err;
        best = T[i][j];
      }
    }
  }
  return {best, best_err};
}

}  // namespace

HilbertPoint difference_quotient(const PointMap& map, const HilbertPoint& x,
                                 const HilbertPoint& v, double t) {
  return (map(axpy(x, t, v)) - map(x)) / t;
}

OracleEstimate fd_derivative(const PointMap& map, const HilbertPoint& x, const HilbertPoint& v,
                             double tol) {
  require_compatible(x, v);
  if (is_zero(v)) throw Error(ErrorCode::ZeroDirection, "direction must be nonzero");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "oracle tolerance must be positive");

  const HilbertPoint base = map(x);
  OracleEstimate out;
  std::vector<std::vector<double>> raw;
  std::vector<double> noise;
  double scale = 0.0;
  for (double c : base.coeffs()) scale = std::max(scale, std::abs(c));
  for (int k = kFirstStep; k <= kLastStep; ++k) {
    const double t = std::ldexp(1.0, -k);
    const HilbertPoint moved = map(axpy(x, t, v));
    double s = scale;
    for (double c : moved.coeffs()) s = std::max(s, std::abs(c));
    HilbertPoint q = (moved - base) / t;
    raw.push_back(to_vec(q));
    noise.push_back(4.0 * std::numeric_limits<double>::epsilon() * s / t);
    out.steps.push_back({t, std::move(q)});
  }

  const std::size_t n = raw.size();
  out.residual = std::max({spread(raw[n - 1], raw[n - 2]), spread(raw[n - 1], raw[n - 3]),
                           spread(raw[n - 2], raw[n - 3])});
  auto [best, err] = extrapolate(raw, noise);
  out.extrapolation_error = err;
  out.converged = out.residual <= tol;
  if (out.converged) out.value = base.with_coeffs(std::move(best));
  return out;
}

OracleEstimate fd_derivative(const ConvexSet& set, const HilbertPoint& x, const HilbertPoint& v,
                             double tol) {
  require_point_of(set, x);
  return fd_derivative([&set](const HilbertPoint& p) { return project(set, p); }, x, v, tol);
}

VariationalCertificate variational_certificate(const ConvexSet& set, const HilbertPoint& x,
                                               const HilbertPoint& u, std::size_t samples,
                                               std::uint64_t seed) {
  require_point_of(set, x);
  require_compatible(x, u);
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  if (!contains(set, u, kMembershipTolerance)) {
    throw Error(ErrorCode::NotInSet, "candidate u is not in C");
  }
  std::mt19937_64 rng(seed);
  const HilbertPoint r = x - u;
  VariationalCertificate out;
  out.min_inner = std::numeric_limits<double>::infinity();
  for (const auto& z : sample_set_points(set, u, samples, rng)) {
    out.min_inner = std::min(out.min_inner, inner(r, u - z));
  }
  out.pass = out.min_inner >= -kInequalitySlack;
  return out;
}

// ---------------------------------------------------------------- sampling

PointSampler::PointSampler(const HilbertPoint& like, std::uint64_t seed)
    : like_(like.zeros_like()), rng_(seed) {}

HilbertPoint PointSampler::uniform() {
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::vector<double> c(like_.size());
  for (double& v : c) v = coeff(rng_);
  return like_.with_coeffs(std::move(c));
}

HilbertPoint PointSampler::on_sphere(const ClosedBall& ball) {
  for (;;) {
    HilbertPoint u = uniform();
    const double n = norm(u);
    if (n > 1e-6) return axpy(ball.center(), ball.radius() / n, u);
  }
}

HilbertPoint PointSampler::cone_boundary() {
  std::bernoulli_distribution zero(0.5);
  std::vector<double> c = to_vec(uniform());
  bool any = false;
  for (double& v : c) {
    v = std::abs(v);
    if (zero(rng_)) {
      v = 0.0;
      any = true;
    }
  }
  if (!any) c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng_)] = 0.0;
  return like_.with_coeffs(std::move(c));
}

HilbertPoint PointSampler::for_set(const ConvexSet& set) {
  const int pick = std::uniform_int_distribution<int>(0, 3)(rng_);
  if (const auto* ball = std::get_if<ClosedBall>(&set)) {
    if (pick == 0) return on_sphere(*ball);
    return axpy(ball->center(), ball->radius(), uniform());
  }
  if (std::holds_alternative<PositiveCone>(set) ||
      std::holds_alternative<BochnerPointwiseCone>(set)) {
    if (pick == 0) return cone_boundary();
    if (pick == 1) {
      HilbertPoint b = cone_boundary();
      return b.with_coeffs([&] {
        std::vector<double> c = to_vec(b);
        for (double& v : c) v = -v;
        return c;
      }());
    }
    return uniform();
  }
  if (pick == 0) return project(set, uniform());
  return uniform();
}

HilbertPoint template_point(const ConvexSet& set) {
  return std::visit(
      [](const auto& s) -> HilbertPoint {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ClosedBall>) {
          return s.center().zeros_like();
        } else if constexpr (std::is_same_v<T, PositiveCone>) {
          return HilbertPoint::zeros(s.dim());
        } else if constexpr (std::is_same_v<T, SubspaceSpan>) {
          return s.generators().front().zeros_like();
        } else {
          const std::size_t d = s.value_dim() == 0 ? 2 : s.value_dim();
          return HilbertPoint::zeros(s.space().size() * d, flattened_weights(s.space(), d));
        }
      },
      set);
}

// ---------------------------------------------------------------- battery

std::size_t BatteryReport::failed_properties() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      properties.begin(), properties.end(), [](const PropertyRecord& p) { return p.failures > 0; }));
}

namespace {

struct Tally {
  PropertyRecord rec;
  void record(double residual, bool ok) {
    ++rec.trials;
    if (!ok) ++rec.failures;
    rec.worst_residual = std::max(rec.worst_residual, residual);
  }
};

// Sign of ||x + t v - c|| - r, or 0 when it is within rounding of the sphere.
int radial_sign(const ClosedBall& ball, const HilbertPoint& x, const HilbertPoint& v, double t) {
  const double q = norm(axpy(x, t, v) - ball.center()) - ball.radius();
  const double noise = 1e-15 * (ball.radius() + norm(x));
  if (q > noise) return 1;
  if (q < -noise) return -1;
  return 0;
}

}  // namespace

BatteryReport property_battery(const ConvexSet& set, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  const HilbertPoint like = template_point(set);

  BatteryReport report;
  report.set_kind = std::string(set_kind(set));
  report.trials = trials;
  report.seed = seed;

  auto sampler_for = [&](std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    std::uint64_t s = 0;
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    s = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    return PointSampler(like, s);
  };
  auto P = [&](const HilbertPoint& p) { return project(set, p); };

  // <x - Px, Px - z> >= 0 and the strengthened <x - Px, x - z> >= ||x - Px||^2
  {
    PointSampler gen = sampler_for(1);
    Tally vi{{"variational_inequality"}}, strong{{"strengthened_inequality"}};
    for (std::size_t i = 0; i < trials; ++i) {
      const HilbertPoint x = gen.for_set(set);
      const HilbertPoint u = P(x);
      const HilbertPoint r = x - u;
      const double rr = norm_squared(r);
      double worst_vi = std::numeric_limits<double>::infinity();
      double worst_strong = std::numeric_limits<double>::infinity();
      for (const auto& z : sample_set_points(set, u, kVariationalSamples, gen.engine())) {
        worst_vi = std::min(worst_vi, inner(r, u - z));
        worst_strong = std::min(worst_strong, inner(r, x - z) - rr);
      }
      vi.record(std::max(0.0, -worst_vi), worst_vi >= -kInequalitySlack);
      strong.record(std::max(0.0, -worst_strong), worst_strong >= -kInequalitySlack);
    }
    report.properties.push_back(vi.rec);
    report.properties.push_back(strong.rec);
  }

  // Monotonicity, nonexpansiveness and its equality dichotomy. A quarter of
  // the pairs are drawn inside C, where equality is attained.
  {
    PointSampler gen = sampler_for(2);
    Tally mono{{"firmly_monotone"}}, nonexp{{"nonexpansive"}}, dich{{"nonexpansive_dichotomy"}};
    for (std::size_t i = 0; i < trials; ++i) {
      HilbertPoint x = gen.for_set(set), y = gen.for_set(set);
      if (i % 4 == 3) {
        x = P(x);
        y = P(y);
      }
      const HilbertPoint px = P(x), py = P(y);
      const HilbertPoint dp = px - py, dx = x - y;
      const double m = inner(dp, dx) - norm_squared(dp);
      mono.record(std::max(0.0, -m), m >= -kInequalitySlack);

      const double gap = norm(dp) - norm(dx);
      nonexp.record(std::max(0.0, gap), gap <= 1e-12 * std::max(1.0, norm(dx)));

      // Either strict contraction or Px - Py == x - y.
      const double slack = 1e-9 * std::max(1.0, norm(dx));
      const bool strict = gap < -slack;
      const double eq_res = norm(dp - dx);
      const bool equal = eq_res <= 1e-9 * std::max(1.0, norm(dx));
      dich.record(strict ? 0.0 : eq_res, strict || equal);
    }
    report.properties.push_back(mono.rec);
    report.properties.push_back(nonexp.rec);
    report.properties.push_back(dich.rec);
  }

  {
    PointSampler gen = sampler_for(3);
    Tally idem{{"idempotent"}};
    for (std::size_t i = 0; i < trials; ++i) {
      const HilbertPoint u = P(gen.for_set(set));
      const double res = max_abs_diff(P(u), u);
      idem.record(res, res <= 1e-12 * std::max(1.0, norm(u)));
    }
    report.properties.push_back(idem.rec);
  }

  // Positive homogeneity of the analytic derivative, wherever it is covered,
  // and agreement with the difference-quotient oracle.
  {
    PointSampler gen = sampler_for(4);
    Tally hom{{"positive_homogeneity"}}, agree{{"oracle_agreement"}};
    std::uniform_real_distribution<double> lam(0.1, 10.0);
    const DerivativeFn derive = [&set](const HilbertPoint& x, const HilbertPoint& v) {
      return analytic_derivative(set, x, v);
    };
    const bool cone_like = std::holds_alternative<PositiveCone>(set) ||
                           std::holds_alternative<BochnerPointwiseCone>(set);
    const bool linear = std::holds_alternative<SubspaceSpan>(set) ||
                        std::holds_alternative<BochnerConstantSubspace>(set);
    for (std::size_t i = 0; i < trials; ++i) {
      HilbertPoint x = gen.for_set(set);
      HilbertPoint v = gen.uniform();
      // Steer half of the draws into the covered case regions; uniform
      // draws alone almost never land there for cones and subspaces.
      if (cone_like && i % 2 == 0) {
        const double sign = i % 4 == 0 ? 1.0 : -1.0;
        x = sign * gen.cone_boundary();
        v = sign * gen.cone_boundary();
      } else if (linear && i % 2 == 0) {
        x = P(x);
        v = P(v);
      }
      if (is_zero(v)) continue;
      const DerivativeResult d = derive(x, v);
      if (!d.covered) {
        ++hom.rec.skipped;
        ++agree.rec.skipped;
        continue;
      }
      const double l = lam(gen.engine());
      const HilbertPoint a = *derive(x, l * v).value;
      const HilbertPoint b = l * *d.value;
      const double res = norm(a - b);
      hom.record(res, homogeneity_check(derive, x, v, l));

      const OracleEstimate fd = fd_derivative(set, x, v, 1e-6);
      if (!fd.converged) {
        agree.record(fd.residual, false);
      } else {
        const double diff = max_abs_diff(*fd.value, *d.value);
        agree.record(diff, diff <= 1e-6);
      }
    }
    report.properties.push_back(hom.rec);
    report.properties.push_back(agree.rec);
  }

  // Up/Down is a partition of the sphere directions that matches where
  // x + t v actually goes for small t.
  if (const auto* ball = std::get_if<ClosedBall>(&set)) {
    PointSampler gen = sampler_for(5);
    Tally part{{"direction_partition"}};
    for (std::size_t i = 0; i < trials; ++i) {
      const HilbertPoint x = gen.on_sphere(*ball);
      const HilbertPoint v = gen.uniform();
      if (is_zero(v)) continue;
      const DirectionClass c = classify_direction(*ball, x, v);
      const int s4 = radial_sign(*ball, x, v, 1e-4);
      const int s6 = radial_sign(*ball, x, v, 1e-6);
      if (s4 != s6 || s4 == 0) {
        ++part.rec.skipped;
        continue;
      }
      const bool ok = (c == DirectionClass::Up) == (s4 > 0);
      part.record(ok ? 0.0 : 1.0, ok);
    }
    report.properties.push_back(part.rec);
  }

  return report;
}

}  // namespace hilproj
