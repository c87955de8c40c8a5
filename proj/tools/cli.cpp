#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "hilproj/bochner.hpp"
#include "hilproj/error.hpp"
#include "hilproj/json_io.hpp"
#include "hilproj/projection.hpp"

namespace hilproj::cli {

namespace {

using json_io::json;

struct Options {
  double tol = 1e-9;
  std::string output = "json";

  std::string set, point, direction, candidate, bochner_demo;
  bool batch = false;
  bool oracle = false;
  double oracle_tol = 1e-6;
  std::size_t samples = 0;
  std::optional<double> scale;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t dim = 16;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch:
    case ErrorCode::WeightMismatch:
    case ErrorCode::SpaceMismatch:
      return kDimension;
    case ErrorCode::NotCovered:
      return kNotCovered;
    case ErrorCode::NotOnSphere:
      return kNotOnSphere;
    default:
      return kBadInput;
  }
}

class Command {
 public:
  Command(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  int project() {
    const ConvexSet set = load_set();
    const json pts = json_io::load_payload(o_.point);
    if (!o_.batch) {
      emit(projection_record(set, pts));
      return kOk;
    }
    if (!pts.is_array()) throw Error(ErrorCode::ParseError, "--batch expects an array of points");
    json results = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      try {
        results.push_back(projection_record(set, pts[i]));
      } catch (const Error& e) {
        throw Error(e.code(), "element " + std::to_string(i) + ": " + e.detail());
      }
    }
    emit(results);
    return kOk;
  }

  int derive() {
    const ConvexSet set = load_set();
    const HilbertPoint x = load_point(o_.point);
    const HilbertPoint v = load_point(o_.direction);
    require_point_of(set, x);
    require_compatible(x, v);
    const DerivativeResult r = analytic_derivative(set, x, v);
    if (!r.covered && !o_.oracle) {
      throw Error(ErrorCode::NotCovered, "no closed form for this (x, v); rerun with --oracle");
    }
    json j = json_io::to_json(r);
    if (o_.oracle) {
      const OracleEstimate est = fd_derivative(set, x, v, o_.oracle_tol);
      j["oracle"] = json_io::to_json(est);
      if (r.covered && est.value) {
        j["agreement"] = max_abs_diff(*r.value, *est.value);
      } else {
        j["agreement"] = nullptr;
      }
      if (!r.covered) {
        j["label"] = "empirical";
        if (est.value) j["value"] = json_io::to_json(*est.value);
      }
    }
    emit(j);
    return kOk;
  }

  int classify() {
    const ConvexSet set = load_set();
    const HilbertPoint y = load_point(o_.point);
    json j{{"point_class", to_string(classify_point(set, y, o_.tol))}};
    if (!o_.direction.empty()) {
      const auto* ball = std::get_if<ClosedBall>(&set);
      if (!ball) throw Error(ErrorCode::InvalidArgument, "--direction needs a ball");
      j["direction_class"] = to_string(classify_direction(*ball, y, load_point(o_.direction)));
    }
    emit(j);
    return kOk;
  }

  int inverse_check() {
    const ConvexSet set = load_set();
    const HilbertPoint y = load_point(o_.point);
    const HilbertPoint x = load_point(o_.candidate);
    json j;
    if (o_.scale) {
      const auto* cone = std::get_if<PositiveCone>(&set);
      if (!cone) throw Error(ErrorCode::InvalidArgument, "--scale needs a positive_cone");
      const TranslationCheck c = cone_inverse_translation_check(*cone, y, *o_.scale, x);
      j = {{"lhs", c.lhs}, {"rhs", c.rhs}, {"agree", c.agree()}};
    } else {
      j = {{"in_inverse_image", in_inverse_image(set, y, x, o_.samples)},
           {"point_class", to_string(classify_point(set, y, o_.tol))}};
    }
    emit(j);
    return kOk;
  }

  int verify() {
    if (!o_.bochner_demo.empty()) {
      const auto space = json_io::space_from_json(json_io::load_payload(o_.bochner_demo));
      const OrthonormalSystemReport r = orthonormal_system_report(space, o_.dim);
      emit(json_io::to_json(r));
      return r.certified() ? kOk : 1;
    }
    if (o_.trials == 0) throw Error(ErrorCode::InvalidArgument, "--trials must be at least 1");
    const BatteryReport r = property_battery(load_set(), o_.trials, o_.seed);
    emit(json_io::to_json(r));
    return static_cast<int>(std::min<std::size_t>(r.failed_properties(), kMaxFailureExit));
  }

 private:
  ConvexSet load_set() const { return json_io::set_from_json(json_io::load_payload(o_.set)); }

  HilbertPoint load_point(const std::string& arg) const {
    return json_io::point_or_function_from_json(json_io::load_payload(arg));
  }

  json projection_record(const ConvexSet& set, const json& payload) const {
    const bool is_function = payload.is_object() && payload.contains("values");
    const HilbertPoint x = json_io::point_or_function_from_json(payload);
    const HilbertPoint p = hilproj::project(set, x);
    json j{{"projection", json_io::to_json(p)}, {"distance", norm(x - p)}};
    if (is_function) {
      const auto space = json_io::function_from_json(payload).space();
      j["function"] = json_io::to_json(unflatten(space, p));
    }
    return j;
  }

  void emit(const json& j) const { out_ << json_io::dump(j, o_.output == "pretty") << '\n'; }

  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Metric projections onto closed convex sets and their directional derivatives",
               "hilproj"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", o.tol, "membership tolerance")->capture_default_str();
  app.add_option("--output", o.output, "json or pretty")
      ->check(CLI::IsMember({"json", "pretty"}))
      ->capture_default_str();

  const char* payload = "inline JSON or a file path";
  auto* project = app.add_subcommand("project", "P_C(x) and d(x, C)");
  project->add_option("--set", o.set, payload)->required();
  project->add_option("--point", o.point, payload)->required();
  project->add_flag("--batch", o.batch, "--point holds an array of points");

  auto* derive = app.add_subcommand("derive", "directional derivative P'_C(x; v)");
  derive->add_option("--set", o.set, payload)->required();
  derive->add_option("--point", o.point, payload)->required();
  derive->add_option("--direction", o.direction, payload)->required();
  derive->add_flag("--oracle", o.oracle, "attach a finite-difference estimate");
  derive->add_option("--oracle-tol", o.oracle_tol, "convergence tolerance")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "Internal/Cuticle and Up/Down");
  classify->add_option("--set", o.set, payload)->required();
  classify->add_option("--point", o.point, payload)->required();
  classify->add_option("--direction", o.direction, payload);

  auto* inverse = app.add_subcommand("inverse-check", "is P_C(candidate) == point?");
  inverse->add_option("--set", o.set, payload)->required();
  inverse->add_option("--point", o.point, payload)->required();
  inverse->add_option("--candidate", o.candidate, payload)->required();
  inverse->add_option("--samples", o.samples, "extra sampled variational checks");
  inverse->add_option("--scale", o.scale, "cone translation check with this t");

  auto* verify = app.add_subcommand("verify", "seeded property battery");
  auto* set_opt = verify->add_option("--set", o.set, payload);
  verify->add_option("--trials", o.trials)->capture_default_str();
  verify->add_option("--seed", o.seed)->capture_default_str();
  auto* demo = verify->add_option("--bochner-demo", o.bochner_demo,
                                  "probability space; prints the non-basis report");
  verify->add_option("--dim", o.dim, "value dimension for --bochner-demo")->capture_default_str();
  set_opt->excludes(demo);
  verify->require_option(1, 0);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  if (const char* env = std::getenv("HILPROJ_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      o.seed = std::stoull(env, &used);
      if (env[used] != '\0') throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      err << "error: HILPROJ_SEED is not an unsigned integer\n";
      return kBadInput;
    }
  }

  Command cmd(o, out);
  try {
    if (*project) return cmd.project();
    if (*derive) return cmd.derive();
    if (*classify) return cmd.classify();
    if (*inverse) return cmd.inverse_check();
    return cmd.verify();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace hilproj::cli
