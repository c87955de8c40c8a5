#include "hilproj/bochner_space.hpp"

#include <cmath>
#include <set>

#include "hilproj/error.hpp"

namespace hilproj {

DiscreteProbabilitySpace::DiscreteProbabilitySpace(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error(ErrorCode::InvalidArgument, "probability space has no atoms");
  std::set<std::string> seen;
  double total = 0.0;
  for (const auto& atom : atoms_) {
    if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) {
      throw Error(ErrorCode::InvalidArgument, "atom '" + atom.id + "' has non-positive weight");
    }
    if (!seen.insert(atom.id).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate atom id '" + atom.id + "'");
    }
    total += atom.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "atom weights must sum to 1");
  }
}

DiscreteProbabilitySpace DiscreteProbabilitySpace::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "probability space has no atoms");
  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    atoms.push_back({"s" + std::to_string(i + 1), 1.0 / static_cast<double>(n)});
  }
  return DiscreteProbabilitySpace(std::move(atoms));
}

std::optional<std::size_t> DiscreteProbabilitySpace::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].id == id) return i;
  }
  return std::nullopt;
}

double DiscreteProbabilitySpace::measure(std::span<const std::string> ids) const {
  std::set<std::size_t> picked;
  for (const auto& id : ids) {
    auto idx = index_of(id);
    if (!idx) throw Error(ErrorCode::UnknownAtom, "no atom named '" + id + "'");
    picked.insert(*idx);
  }
  double mu = 0.0;
  for (auto i : picked) mu += atoms_[i].weight;
  return mu;
}

BochnerFunction::BochnerFunction(DiscreteProbabilitySpace space, std::vector<HilbertPoint> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "need exactly one value per atom");
  }
  dim_ = values_.front().size();
  for (const auto& v : values_) {
    if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "atom values differ in dimension");
    if (v.weighted()) throw Error(ErrorCode::WeightMismatch, "atom values must be unweighted");
  }
}

HilbertPoint::Weights flattened_weights(const DiscreteProbabilitySpace& space, std::size_t d) {
  std::vector<double> w;
  w.reserve(space.size() * d);
  for (const auto& atom : space.atoms()) w.insert(w.end(), d, atom.weight);
  return std::make_shared<const std::vector<double>>(std::move(w));
}

HilbertPoint flatten(const BochnerFunction& f) {
  std::vector<double> c;
  c.reserve(f.space().size() * f.dim());
  for (const auto& v : f.values()) c.insert(c.end(), v.coeffs().begin(), v.coeffs().end());
  return HilbertPoint(std::move(c), flattened_weights(f.space(), f.dim()));
}

std::size_t flattened_value_dim(const DiscreteProbabilitySpace& space, const HilbertPoint& x) {
  const std::size_t k = space.size();
  if (x.size() == 0 || x.size() % k != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "length " + std::to_string(x.size()) + " is not a multiple of " +
                    std::to_string(k) + " atoms");
  }
  const std::size_t d = x.size() / k;
  if (!x.weighted()) {
    throw Error(ErrorCode::WeightMismatch, "flattened Bochner points must carry atom weights");
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t n = 0; n < d; ++n) {
      if (x.weight(a * d + n) != space.weight(a)) {
        throw Error(ErrorCode::WeightMismatch, "weights do not match the probability space");
      }
    }
  }
  return d;
}

BochnerFunction unflatten(const DiscreteProbabilitySpace& space, const HilbertPoint& x) {
  const std::size_t d = flattened_value_dim(space, x);
  std::vector<HilbertPoint> values;
  values.reserve(space.size());
  for (std::size_t a = 0; a < space.size(); ++a) {
    auto first = x.coeffs().begin() + static_cast<std::ptrdiff_t>(a * d);
    values.emplace_back(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(d)));
  }
  return BochnerFunction(space, std::move(values));
}

}  // namespace hilproj
