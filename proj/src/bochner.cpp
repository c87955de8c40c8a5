#include "hilproj/bochner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "bochner_flat.hpp"
#include "flat_ops.hpp"
#include "hilproj/error.hpp"
#include "hilproj/projection.hpp"

namespace hilproj {

namespace {

void require_same_space(const BochnerFunction& f, const BochnerFunction& g) {
  if (!(f.space() == g.space())) {
    throw Error(ErrorCode::SpaceMismatch, "functions live on different probability spaces");
  }
  if (f.dim() != g.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "functions take values of different dimension");
  }
}

BochnerFunction map_values(const BochnerFunction& f,
                           const std::function<HilbertPoint(const HilbertPoint&)>& op) {
  std::vector<HilbertPoint> values;
  values.reserve(f.values().size());
  for (const auto& v : f.values()) values.push_back(op(v));
  return BochnerFunction(f.space(), std::move(values));
}

std::string retag(const std::string& tag, const std::map<std::string, std::string>& table) {
  auto it = table.find(tag);
  return it == table.end() ? tag : it->second;
}

}  // namespace

BochnerFunction simple_function(const DiscreteProbabilitySpace& space,
                                std::span<const std::string> atom_ids, const HilbertPoint& x) {
  if (atom_ids.empty()) throw Error(ErrorCode::EmptySubset, "1_A needs a nonempty A");
  if (x.weighted()) throw Error(ErrorCode::WeightMismatch, "values of H are unweighted");
  std::vector<bool> in_a(space.size(), false);
  for (const auto& id : atom_ids) {
    auto idx = space.index_of(id);
    if (!idx) throw Error(ErrorCode::UnknownAtom, "no atom named '" + id + "'");
    in_a[*idx] = true;
  }
  std::vector<HilbertPoint> values;
  values.reserve(space.size());
  for (std::size_t a = 0; a < space.size(); ++a) values.push_back(in_a[a] ? x : x.zeros_like());
  return BochnerFunction(space, std::move(values));
}

BochnerFunction constant_function(const DiscreteProbabilitySpace& space, const HilbertPoint& x) {
  if (x.weighted()) throw Error(ErrorCode::WeightMismatch, "values of H are unweighted");
  return BochnerFunction(space, std::vector<HilbertPoint>(space.size(), x));
}

double bochner_inner(const BochnerFunction& f, const BochnerFunction& g) {
  require_same_space(f, g);
  double sum = 0.0;
  for (std::size_t a = 0; a < f.space().size(); ++a) {
    sum += f.space().weight(a) * inner(f.value(a), g.value(a));
  }
  return sum;
}

double bochner_norm(const BochnerFunction& f) { return std::sqrt(bochner_inner(f, f)); }

HilbertPoint expectation(const BochnerFunction& f) {
  return HilbertPoint(detail::flat_mean(f.space(), flatten(f), f.dim()));
}

BochnerFunction project_pointwise_cone(const BochnerFunction& f) {
  const PositiveCone cone(f.dim());
  return map_values(f, [&](const HilbertPoint& v) { return project(cone, v); });
}

BochnerFunction project_constants(const BochnerFunction& f) {
  return constant_function(f.space(), expectation(f));
}

bool cone_inverse_check(const BochnerFunction& g, const BochnerFunction& f) {
  require_same_space(f, g);
  const HilbertPoint gf = flatten(g);
  const HilbertPoint ff = flatten(f);
  for (double c : gf.coeffs()) {
    if (c < -kMembershipTolerance) {
      throw Error(ErrorCode::NotInCone, "g is not in the pointwise positive cone");
    }
  }
  bool differs = false;
  for (std::size_t i = 0; i < gf.size(); ++i) {
    if (std::abs(gf[i]) <= kMembershipTolerance) {
      if (ff[i] > kMembershipTolerance) return false;
      if (ff[i] < -kMembershipTolerance) differs = true;
    } else if (std::abs(ff[i] - gf[i]) > kMembershipTolerance) {
      return false;
    }
  }
  return differs;
}

std::optional<std::vector<std::string>> find_half_measure_subset(
    const DiscreteProbabilitySpace& space) {
  const std::size_t k = space.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return space.weight(a) > space.weight(b); });
  std::vector<double> suffix(k + 1, 0.0);
  for (std::size_t i = k; i-- > 0;) suffix[i] = suffix[i + 1] + space.weight(order[i]);

  constexpr double target = 0.5;
  constexpr double tol = 1e-12;
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, double)> search = [&](std::size_t i, double sum) {
    if (std::abs(sum - target) <= tol) return true;
    if (i == k || sum > target + tol || sum + suffix[i] < target - tol) return false;
    chosen.push_back(order[i]);
    if (search(i + 1, sum + space.weight(order[i]))) return true;
    chosen.pop_back();
    return search(i + 1, sum);
  };
  if (!search(0, 0.0)) return std::nullopt;

  std::sort(chosen.begin(), chosen.end());
  std::vector<std::string> ids;
  for (auto i : chosen) ids.push_back(space.atoms()[i].id);
  return ids;
}

BochnerFunction non_basis_witness(const DiscreteProbabilitySpace& space, std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "value dimension must be positive");
  const auto subset = find_half_measure_subset(space);
  if (!subset) {
    throw Error(ErrorCode::NoHalfMeasureSubset, "no subset of atoms has measure 1/2");
  }
  std::vector<HilbertPoint> values;
  values.reserve(space.size());
  for (const auto& atom : space.atoms()) {
    const bool in_a = std::find(subset->begin(), subset->end(), atom.id) != subset->end();
    const double sign = in_a ? 1.0 : -1.0;
    std::vector<double> c(d);
    for (std::size_t n = 1; n <= d; ++n) c[n - 1] = sign * std::ldexp(1.0, -static_cast<int>(n));
    values.emplace_back(std::move(c));
  }
  return BochnerFunction(space, std::move(values));
}

bool OrthonormalSystemReport::certified(double tol) const noexcept {
  return max_gram_deviation <= tol && witness_norm_squared > 0.0 && max_witness_inner <= tol;
}

OrthonormalSystemReport orthonormal_system_report(const DiscreteProbabilitySpace& space,
                                                  std::size_t d) {
  if (space.size() < 2) {
    throw Error(ErrorCode::NoHalfMeasureSubset, "a single atom admits no subset of measure 1/2");
  }
  OrthonormalSystemReport report;
  report.dim = d;
  const BochnerFunction witness = non_basis_witness(space, d);
  report.half_measure_subset = *find_half_measure_subset(space);

  std::vector<BochnerFunction> system;
  system.reserve(d);
  for (std::size_t n = 0; n < d; ++n) {
    std::vector<double> b(d, 0.0);
    b[n] = 1.0;
    system.push_back(constant_function(space, HilbertPoint(std::move(b))));
  }

  report.gram.assign(d, std::vector<double>(d, 0.0));
  for (std::size_t n = 0; n < d; ++n) {
    for (std::size_t m = 0; m < d; ++m) {
      report.gram[n][m] = bochner_inner(system[n], system[m]);
      const double expected = n == m ? 1.0 : 0.0;
      report.max_gram_deviation =
          std::max(report.max_gram_deviation, std::abs(report.gram[n][m] - expected));
    }
  }

  report.witness_norm_squared = bochner_inner(witness, witness);
  for (std::size_t m = 0; m < d; ++m) {
    const double ip = bochner_inner(witness, system[m]);
    report.witness_inner_products.push_back(ip);
    report.max_witness_inner = std::max(report.max_witness_inner, std::abs(ip));
  }
  return report;
}

DerivativeResult bochner_ball_derivative(const BochnerFunction& f, const BochnerFunction& h) {
  require_same_space(f, h);
  const HilbertPoint x = flatten(f);
  const HilbertPoint v = flatten(h);
  const ClosedBall unit_ball(x.zeros_like(), 1.0);
  DerivativeResult r = ball_derivative(unit_ball, x, v);

  const bool orthogonal = std::abs(inner(x, v)) <= kTangentTolerance * norm(x) * norm(v);
  if (r.case_tag == "Thm4.1(ii)(a)") {
    r.case_tag = orthogonal ? "Prop7.1(ii)(b)" : "Prop7.1(ii)(a)";
  } else if (r.case_tag == "Thm4.1(iii)(a)") {
    r.case_tag = orthogonal ? "Prop7.1(iii)(b)" : "Prop7.1(iii)(a)";
  } else {
    r.case_tag = retag(r.case_tag, {{"Thm4.1(i)(a)", "Prop7.1(i)(a)"},
                                    {"Thm4.1(ii)(b)", "Prop7.1(ii)(c)"},
                                    {"Thm4.1(iii)(b)", "Prop7.1(iii)(a)"},
                                    {"Thm4.1(iii)(c)", "Prop7.1(iii)(c)"}});
  }
  return r;
}

DerivativeResult constants_subspace_derivative(const DiscreteProbabilitySpace& space,
                                               const BochnerFunction& f,
                                               const BochnerFunction& h) {
  if (!(f.space() == space)) throw Error(ErrorCode::SpaceMismatch, "f is not on this space");
  require_same_space(f, h);
  return detail::constants_derivative_flat(space, flatten(f), flatten(h));
}

DerivativeResult pointwise_cone_derivative(const BochnerFunction& f, const BochnerFunction& h) {
  require_same_space(f, h);
  return detail::pointwise_cone_derivative_flat(f.space(), flatten(f), flatten(h));
}

namespace detail {

DerivativeResult constants_derivative_flat(const DiscreteProbabilitySpace& space,
                                           const HilbertPoint& x, const HilbertPoint& v) {
  const std::size_t d = flattened_value_dim(space, x);
  require_compatible(x, v);
  if (is_zero(v)) throw Error(ErrorCode::ZeroDirection, "direction must be nonzero");
  return DerivativeResult::of("Thm7.2", flat_constant(v, flat_mean(space, v, d)));
}

DerivativeResult pointwise_cone_derivative_flat(const DiscreteProbabilitySpace& space,
                                                const HilbertPoint& x, const HilbertPoint& v) {
  flattened_value_dim(space, x);
  DerivativeResult r = cone_derivative(PositiveCone(x.size()), x, v);
  r.case_tag = retag(r.case_tag, {{"Thm5.1(i)", "Prop7.3(i)"},
                                  {"Thm5.1(ii)", "Prop7.3(ii)"},
                                  {"Thm5.1(iii)", "Prop7.3(iii)"}});
  return r;
}

}  // namespace detail

}  // namespace hilproj
