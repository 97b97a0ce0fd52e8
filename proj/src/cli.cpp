#include "choicone/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <optional>

#include "choicone/choivar.hpp"
#include "choicone/classify.hpp"
#include "choicone/cones.hpp"
#include "choicone/error.hpp"
#include "choicone/json_io.hpp"
#include "choicone/pairing.hpp"
#include "choicone/transforms.hpp"
#include "choicone/verify.hpp"

namespace choicone {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(const std::string& text, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos, 10);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text.front() == '-') {
    throw UsageError(std::string(what) + " must be a nonnegative integer, got \"" + text + "\"");
  }
  return v;
}

std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
  if (flag) return parse_seed(*flag, "--seed");
  if (const char* env = std::getenv("CHOICONE_SEED"); env && *env) return parse_seed(env, "CHOICONE_SEED");
  return 0;
}

ConeId parse_cone(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("cone must be family,k (e.g. schmidt,1)");
  const auto family = parse_cone_family(text.substr(0, comma));
  if (!family) throw UsageError("unknown cone family \"" + text.substr(0, comma) + "\"");
  const std::uint64_t k = parse_seed(text.substr(comma + 1), "cone level k");
  if (k == 0) throw UsageError("cone level k must be positive");
  return {*family, static_cast<std::size_t>(k)};
}

ChoiVariant parse_variant(const std::string& s) {
  if (s == "standard") return ChoiVariant::Standard;
  if (s == "depillis") return ChoiVariant::DePillis;
  if (s == "id-t") return ChoiVariant::IdT;
  if (s == "t-t") return ChoiVariant::TT;
  if (s == "flip") return ChoiVariant::Flip;
  return ChoiVariant::AdU;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::InCone: return kExitOk;
    case Verdict::Refuted: return kExitRefuted;
    case Verdict::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// The object of a certify call: a map stands for its Choi matrix.
TensorMatrix object_from_json(const Json& j) {
  if (looks_like_map(j)) return map_from_json(j).choi();
  return tensor_from_json(j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Choi matrices, cone certificates and separability-preserving transforms", "choicone"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  auto* choi_cmd = app.add_subcommand("choi", "Choi matrix of a map, optionally under a variant");
  std::string map_path, variant = "standard", unitary_path;
  choi_cmd->add_option("--map", map_path, "LinearMap JSON")->required();
  choi_cmd->add_option("--variant", variant, "Choi variant")
      ->check(CLI::IsMember({"standard", "depillis", "id-t", "t-t", "flip", "ad-u"}));
  choi_cmd->add_option("--unitary", unitary_path, "matrix JSON for --variant ad-u");

  auto* pair_cmd = app.add_subcommand("pair", "Bilinear pairing of a map with a tensor");
  std::string state_path, state_preset = "standard";
  pair_cmd->add_option("--map", map_path, "LinearMap JSON")->required();
  pair_cmd->add_option("--state", state_path, "TensorMatrix JSON")->required();
  pair_cmd->add_option("--preset", state_preset, "pairing preset")
      ->check(CLI::IsMember({"standard", "woronowicz", "horodecki"}));

  auto* pair_maps_cmd = app.add_subcommand("pair-maps", "Bilinear pairing of two maps");
  std::string map1_path, map2_path, map_preset = "standard";
  pair_maps_cmd->add_option("--map1", map1_path, "LinearMap JSON")->required();
  pair_maps_cmd->add_option("--map2", map2_path, "LinearMap JSON")->required();
  pair_maps_cmd->add_option("--preset", map_preset, "pairing preset")->check(CLI::IsMember({"standard", "ssz"}));

  auto* certify_cmd = app.add_subcommand("certify", "Certify cone membership or non-membership");
  std::string object_path, cone_text;
  std::size_t restarts = 50, budget = 200;
  std::optional<std::string> seed_text;
  certify_cmd->add_option("--object", object_path, "TensorMatrix or LinearMap JSON")->required();
  certify_cmd->add_option("--cone", cone_text, "family,k with family in schmidt|blockpos|kpos|ksuperpos")
      ->required();
  certify_cmd->add_option("--restarts", restarts, "see-saw restarts (blockpos, kpos)");
  certify_cmd->add_option("--budget", budget, "decomposition search budget (schmidt, ksuperpos)");
  certify_cmd->add_option("--seed", seed_text, "RNG seed (default: $CHOICONE_SEED or 0)");

  auto* transform_cmd = app.add_subcommand("transform", "Apply a transform or sample cone preservation");
  std::string spec_path, apply_path, preserves_text;
  std::size_t samples = 200;
  transform_cmd->add_option("--spec", spec_path, "TransformSpec JSON")->required();
  auto* apply_opt = transform_cmd->add_option("--apply", apply_path, "TensorMatrix JSON to transform");
  auto* preserves_opt = transform_cmd->add_option("--preserves", preserves_text, "family,k to test");
  apply_opt->excludes(preserves_opt);
  transform_cmd->add_option("--samples", samples, "members drawn for --preserves");
  transform_cmd->add_option("--restarts", restarts, "see-saw restarts for --preserves");
  transform_cmd->add_option("--seed", seed_text, "RNG seed (default: $CHOICONE_SEED or 0)");

  auto* classify_cmd = app.add_subcommand("classify", "Factor a separability preserver or refute it");
  std::string theta_path;
  double tol = 1e-8;
  classify_cmd->add_option("--theta", theta_path, "TransformSpec or SuperOp JSON")->required();
  classify_cmd->add_option("--tol", tol, "structural tolerance");
  classify_cmd->add_option("--seed", seed_text, "RNG seed (default: $CHOICONE_SEED or 0)");

  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite");
  std::string suite_name = "all";
  verify_cmd->add_option("--suite", suite_name, "suite")
      ->check(CLI::IsMember({"all", "choi", "duality", "preserve", "classify"}));
  verify_cmd->add_option("--seed", seed_text, "RNG seed (default: $CHOICONE_SEED or 0)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "choicone: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*choi_cmd) {
      const LinearMap phi = map_from_json(read_json_file(map_path));
      std::optional<ComplexMatrix> unitary;
      if (variant == "ad-u") {
        if (unitary_path.empty()) throw UsageError("--variant ad-u needs --unitary");
        unitary = matrix_from_json(read_json_file(unitary_path));
      }
      emit(out, to_json(choi_theta(variant_superop(parse_variant(variant), phi.m(), phi.n(), unitary), phi)));
      return kExitOk;
    }
    if (*pair_cmd) {
      const LinearMap phi = map_from_json(read_json_file(map_path));
      const TensorMatrix z = tensor_from_json(read_json_file(state_path));
      const StatePairing preset = state_preset == "woronowicz"  ? StatePairing::Woronowicz
                                  : state_preset == "horodecki" ? StatePairing::Horodecki
                                                                : StatePairing::Standard;
      if (phi.m() != z.m() || phi.n() != z.n()) throw Error(ErrorCode::DimMismatch, "map and state dimensions differ");
      Json j;
      j["value"] = to_json(preset_state_pair(preset, phi, z));
      emit(out, j);
      return kExitOk;
    }
    if (*pair_maps_cmd) {
      const LinearMap phi = map_from_json(read_json_file(map1_path));
      const LinearMap psi = map_from_json(read_json_file(map2_path));
      if (phi.m() != psi.m() || phi.n() != psi.n()) throw Error(ErrorCode::DimMismatch, "map dimensions differ");
      Json j;
      j["value"] = to_json(preset_map_pair(map_preset == "ssz" ? MapPairing::Ssz : MapPairing::Standard, phi, psi));
      emit(out, j);
      return kExitOk;
    }
    if (*certify_cmd) {
      const ConeId cone = parse_cone(cone_text);
      const std::uint64_t seed = resolve_seed(seed_text);
      const TensorMatrix z = object_from_json(read_json_file(object_path));
      check_cone(cone, z.m(), z.n());
      const bool schmidt = cone.family == ConeFamily::SchmidtNumber || cone.family == ConeFamily::KSuperpositive;
      const Certificate cert = certify(z, cone, schmidt ? budget : restarts, seed);
      emit(out, to_json(cert));
      return verdict_exit(cert.verdict);
    }
    if (*transform_cmd) {
      if (apply_path.empty() == preserves_text.empty()) throw UsageError("transform needs --apply or --preserves");
      const TransformSpec spec = spec_from_json(read_json_file(spec_path));
      const SuperOp theta = compile(spec);
      if (!apply_path.empty()) {
        emit(out, to_json(apply_transform(theta, tensor_from_json(read_json_file(apply_path)))));
        return kExitOk;
      }
      const ConeId cone = parse_cone(preserves_text);
      check_cone(cone, spec.m, spec.n);
      const auto result = preserves_cone_sampled(theta, cone, samples, resolve_seed(seed_text), restarts);
      emit(out, to_json(result));
      return result.counterexample ? kExitRefuted : kExitOk;
    }
    if (*classify_cmd) {
      const std::uint64_t seed = resolve_seed(seed_text);
      const SuperOp theta = theta_from_json(read_json_file(theta_path));
      const Classification c = classify_separability_preserver(theta, tol, seed);
      emit(out, to_json(c));
      return c.factorization ? kExitOk : kExitRefuted;
    }
    if (*verify_cmd) {
      const Report report = run_suite(*parse_suite(suite_name), resolve_seed(seed_text));
      emit(out, to_json(report));
      return report.passed() ? kExitOk : kExitFailed;
    }
  } catch (const UsageError& e) {
    err << "choicone: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    Json j;
    j["error"] = to_string(e.code());
    j["message"] = e.what();
    err << j.dump() << '\n';
    return kExitFormat;
  } catch (const nlohmann::json::exception& e) {
    Json j;
    j["error"] = "Format";
    j["message"] = e.what();
    err << j.dump() << '\n';
    return kExitFormat;
  }
  return kExitUsage;
}

}  // namespace choicone
