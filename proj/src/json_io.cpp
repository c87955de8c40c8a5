#include "hilproj/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "hilproj/error.hpp"

namespace hilproj::json_io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  if (v == 0.0 && std::signbit(v)) {
    out += "-0.0";  // "-0" would read back as the integer 0
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write_string(std::string& out, const std::string& s) {
  out += json(s).dump();  // reuse the library's escaping
}

void write(std::string& out, const json& j, bool pretty, int depth) {
  const auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(2 * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_string(out, it.key());
        out += pretty ? ": " : ":";
        write(out, it.value(), pretty, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // numeric rows stay on one line even when pretty
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += pretty && flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write(out, e, pretty, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    malformed(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(number(e, what));
  return out;
}

json numbers_json(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::size_t optional_dim(const json& j) {
  auto it = j.find("dim");
  return it == j.end() ? 0 : count(*it, "dim");
}

}  // namespace

std::string dump(const json& j, bool pretty) {
  std::string out;
  write(out, j, pretty, 0);
  return out;
}

json load_payload(std::string_view arg) {
  const auto start = arg.find_first_not_of(" \t\r\n");
  std::string text;
  if (start != std::string_view::npos && (arg[start] == '{' || arg[start] == '[')) {
    text = std::string(arg);
  } else {
    std::ifstream in{std::string(arg)};
    if (!in) malformed("cannot read file '" + std::string(arg) + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

json to_json(const HilbertPoint& x) {
  json j{{"coeffs", numbers_json(x.coeffs())}};
  if (x.weighted()) j["weights"] = numbers_json(x.weights());
  return j;
}

json to_json(const DiscreteProbabilitySpace& space) {
  json atoms = json::array();
  for (const auto& a : space.atoms()) atoms.push_back({{"id", a.id}, {"weight", a.weight}});
  return {{"atoms", atoms}};
}

json to_json(const BochnerFunction& f) {
  json values = json::object();
  for (std::size_t i = 0; i < f.space().size(); ++i) {
    values[f.space().atoms()[i].id] = to_json(f.value(i));
  }
  return {{"space", to_json(f.space())}, {"values", values}};
}

json to_json(const ConvexSet& set) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ClosedBall>) {
          return {{"type", "ball"}, {"center", to_json(s.center())}, {"radius", s.radius()}};
        } else if constexpr (std::is_same_v<T, PositiveCone>) {
          return {{"type", "positive_cone"}, {"dim", s.dim()}};
        } else if constexpr (std::is_same_v<T, SubspaceSpan>) {
          json g = json::array();
          for (const auto& u : s.generators()) g.push_back(to_json(u));
          return {{"type", "subspace"}, {"generators", g}};
        } else {
          json j{{"type", std::is_same_v<T, BochnerPointwiseCone> ? "bochner_cone"
                                                                  : "bochner_constants"},
                 {"space", to_json(s.space())}};
          if (s.value_dim() != 0) j["dim"] = s.value_dim();
          return j;
        }
      },
      set);
}

json to_json(const DerivativeResult& r) {
  json j{{"covered", r.covered}, {"case", r.case_tag}};
  if (r.value) j["value"] = to_json(*r.value);
  return j;
}

json to_json(const OracleEstimate& e) {
  json steps = json::array();
  for (const auto& s : e.steps) steps.push_back({{"t", s.t}, {"quotient", to_json(s.quotient)}});
  json j{{"converged", e.converged},
         {"residual", e.residual},
         {"extrapolation_error", e.extrapolation_error}};
  if (e.value) j["value"] = to_json(*e.value);
  j["steps"] = steps;
  return j;
}

json to_json(const PropertyRecord& r) {
  json j{{"property", r.property},
         {"trials", r.trials},
         {"failures", r.failures},
         {"worst_residual", r.worst_residual}};
  if (r.skipped != 0) j["skipped"] = r.skipped;
  return j;
}

json to_json(const BatteryReport& r) {
  json props = json::array();
  for (const auto& p : r.properties) props.push_back(to_json(p));
  return {{"set", r.set_kind},
          {"trials", r.trials},
          {"seed", r.seed},
          {"failed_properties", r.failed_properties()},
          {"properties", props}};
}

json to_json(const OrthonormalSystemReport& r) {
  json gram = json::array();
  for (const auto& row : r.gram) gram.push_back(numbers_json(row));
  return {{"dim", r.dim},
          {"half_measure_subset", r.half_measure_subset},
          {"gram", gram},
          {"max_gram_deviation", r.max_gram_deviation},
          {"witness_norm_squared", r.witness_norm_squared},
          {"witness_inner_products", numbers_json(r.witness_inner_products)},
          {"max_witness_inner", r.max_witness_inner},
          {"certified", r.certified()}};
}

HilbertPoint point_from_json(const json& j) {
  std::vector<double> coeffs = numbers(field(j, "coeffs"), "coeffs");
  auto w = j.find("weights");
  if (w == j.end() || w->is_null()) return HilbertPoint(std::move(coeffs));
  return HilbertPoint(std::move(coeffs), numbers(*w, "weights"));
}

DiscreteProbabilitySpace space_from_json(const json& j) {
  const json& atoms = field(j, "atoms");
  if (!atoms.is_array()) malformed("atoms must be an array");
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    const json& id = field(a, "id");
    if (!id.is_string()) malformed("atom id must be a string");
    out.push_back({id.get<std::string>(), number(field(a, "weight"), "atom weight")});
  }
  return DiscreteProbabilitySpace(std::move(out));
}

BochnerFunction function_from_json(const json& j) {
  DiscreteProbabilitySpace space = space_from_json(field(j, "space"));
  const json& values = field(j, "values");
  if (!values.is_object()) malformed("values must be an object keyed by atom id");
  std::vector<HilbertPoint> pts;
  for (const auto& a : space.atoms()) {
    auto it = values.find(a.id);
    if (it == values.end()) malformed("missing value for atom '" + a.id + "'");
    pts.push_back(point_from_json(*it));
  }
  if (values.size() != space.size()) {
    for (auto it = values.begin(); it != values.end(); ++it) {
      if (!space.index_of(it.key())) {
        throw Error(ErrorCode::UnknownAtom, "value given for unknown atom '" + it.key() + "'");
      }
    }
  }
  return BochnerFunction(std::move(space), std::move(pts));
}

ConvexSet set_from_json(const json& j) {
  const json& type = field(j, "type");
  if (!type.is_string()) malformed("set type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "ball") {
    return ClosedBall(point_from_json(field(j, "center")), number(field(j, "radius"), "radius"));
  }
  if (t == "positive_cone") return PositiveCone(count(field(j, "dim"), "dim"));
  if (t == "subspace") {
    const json& g = field(j, "generators");
    if (!g.is_array()) malformed("generators must be an array");
    std::vector<HilbertPoint> gens;
    for (const auto& e : g) gens.push_back(point_from_json(e));
    return SubspaceSpan(std::move(gens));
  }
  if (t == "bochner_cone") {
    return BochnerPointwiseCone(space_from_json(field(j, "space")), optional_dim(j));
  }
  if (t == "bochner_constants") {
    return BochnerConstantSubspace(space_from_json(field(j, "space")), optional_dim(j));
  }
  malformed("unknown set type '" + t + "'");
}

HilbertPoint point_or_function_from_json(const json& j) {
  if (j.is_object() && j.contains("values") && j.contains("space")) {
    return flatten(function_from_json(j));
  }
  return point_from_json(j);
}

}  // namespace hilproj::json_io
