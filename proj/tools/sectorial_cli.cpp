// Command-line front end: numerical radius, inequality checks, falsification
// sweeps, sharpness reports, boundary export, ensemble sampling and the 2x2
// worked example.
//
// Exit status: 0 success / holds, 1 violation or mismatch, 2 usage or parse
// error, 3 applicability failure.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sectorial/catalog.hpp"
#include "sectorial/fov.hpp"
#include "sectorial/generators.hpp"
#include "sectorial/harness.hpp"

namespace {

using namespace sectorial;
using nlohmann::json;

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kInapplicable = 3 };

struct Globals {
  double tol = 1e-10;
  std::uint64_t seed = 20240601;
  bool seed_set = false;
  std::int64_t trials = 1000;
  std::string out;
  std::string format = "json";
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Error("cannot write '" + g.out + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

EnsembleConfig load_config(const std::string& path, const Globals& g) {
  EnsembleConfig c = path.empty() ? EnsembleConfig{} : read_config_file(path);
  if (g.seed_set) c.seed = g.seed;
  c.tol = g.tol;
  return c;
}

int cmd_radius(const Globals& g, const std::string& file) {
  const ComplexMatrix a = read_matrix_file(file);
  const CertifiedRadius r = numerical_radius(a, g.tol);
  json j{{"value", r.value},
         {"error_bound", r.error_bound},
         {"norm", operator_norm(a)},
         {"evaluations", r.evaluations}};
  const Accretivity acc = is_accretive(a);
  j["accretive"] = acc.flag;
  if (acc.flag) {
    const SectorCone s = sectorial_index(a);
    j["gamma"] = s.gamma;
    j["sin_gamma"] = s.sin();
    j["gamma_error"] = s.error;
  }
  emit(g, dump(j));
  return kOk;
}

int cmd_check(const Globals& g, const std::string& id, const std::vector<std::string>& files,
              int sign, double alpha, int halvings, std::optional<double> gamma) {
  const BoundSpec& spec = find_bound(id);
  std::vector<ComplexMatrix> ms;
  for (const auto& f : files) ms.push_back(read_matrix_file(f));
  InequalityInput in;
  in.tol = g.tol;
  in.sign = sign;
  in.alpha = alpha;
  in.halvings = halvings;
  if (gamma) in.gamma = SectorCone{*gamma, 0.0};
  auto need = [&](std::size_t k) {
    if (ms.size() != k)
      throw CLI::ValidationError("check " + id + " expects " + std::to_string(k) +
                                 " matrix file(s), got " + std::to_string(ms.size()));
  };
  switch (spec.arity) {
    case Arity::single:
      need(1);
      in.a = ms[0];
      break;
    case Arity::commutator:
      need(spec.target == Target::generalized_commutator ? 4 : 2);
      in.a = ms[0];
      in.b = ms[1];
      if (ms.size() == 4) {
        in.x = ms[2];
        in.y = ms[3];
      }
      break;
    case Arity::pair:
      need(2);
      in.a = ms[0];
      in.b = ms[1];
      break;
    case Arity::family:
      if (ms.empty()) throw CLI::ValidationError("check " + id + " expects at least one matrix file");
      in.family_a = ms;
      break;
    case Arity::paired_family:
      if (ms.empty() || ms.size() % 2 != 0)
        throw CLI::ValidationError("check " + id + " expects A_1..A_m then B_1..B_m (an even count)");
      in.family_a.assign(ms.begin(), ms.begin() + static_cast<std::ptrdiff_t>(ms.size() / 2));
      in.family_b.assign(ms.begin() + static_cast<std::ptrdiff_t>(ms.size() / 2), ms.end());
      break;
  }
  const BoundEvaluation e = evaluate(id, in);
  emit(g, dump(evaluation_to_json(e)));
  return e.holds ? kOk : kViolation;
}

int cmd_falsify(const Globals& g, const std::string& id, const std::string& config_path,
                bool timing) {
  const EnsembleConfig c = load_config(config_path, g);
  const auto reports = falsify(id, c, g.trials);
  if (g.format == "csv") {
    emit(g, reports_to_csv(reports));
  } else {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r, timing));
    emit(g, dump(json{{"config", config_to_json(c)}, {"reports", arr}}));
  }
  for (const auto& r : reports)
    if (r.violations > 0) return kViolation;
  return kOk;
}

int cmd_report(const Globals& g, const std::string& a, const std::string& b,
               const std::string& config_path, const std::string& condition_name,
               std::int64_t conditioned, bool timing) {
  const EnsembleConfig c = load_config(config_path, g);
  SharpnessCondition cond = claimed_condition(a, b);
  if (condition_name == "im-dominates") cond = SharpnessCondition::im_dominates;
  if (condition_name == "none") cond = SharpnessCondition::none;
  const SharpnessReport r = report_sharpness(a, b, c, g.trials, cond, conditioned);
  emit(g, g.format == "csv" ? sharpness_to_csv(r) : dump(sharpness_to_json(r, timing)));
  return r.conditioned > 0 && r.fraction_conditioned() < 1.0 ? kViolation : kOk;
}

int cmd_range(const Globals& g, const std::string& file, int n) {
  if (n < 8) throw CLI::ValidationError("range: need at least 8 directions");
  const ComplexMatrix a = read_matrix_file(file);
  emit(g, boundary_to_csv(boundary_polygon(a, n)));
  return kOk;
}

int cmd_gen(const Globals& g, EnsembleSpec spec, const std::string& kind,
            const std::string& orientation) {
  spec.kind = ensemble_kind_from_string(kind);
  spec.seed = g.seed;
  if (orientation == "lower") spec.orientation = ConeOrientation::lower;
  else if (orientation == "upper") spec.orientation = ConeOrientation::upper;
  else throw CLI::ValidationError("orientation must be lower or upper");
  const auto ms = generate(spec);
  if (ms.size() == 1 || g.out.empty()) {
    if (ms.size() == 1) {
      emit(g, dump(matrix_to_json(ms[0])));
    } else {
      json arr = json::array();
      for (const auto& m : ms) arr.push_back(matrix_to_json(m));
      emit(g, dump(json{{"family", arr}}));
    }
    return kOk;
  }
  // One file per member: out.json -> out_1.json, out_2.json, ...
  const std::filesystem::path base(g.out);
  for (std::size_t k = 0; k < ms.size(); ++k) {
    std::filesystem::path p = base;
    p.replace_filename(base.stem().string() + "_" + std::to_string(k + 1) +
                       (base.has_extension() ? base.extension().string() : ".json"));
    write_matrix_file(p.string(), ms[k]);
  }
  return kOk;
}

int cmd_reproduce(const Globals& g) {
  const auto rows = reproduce_example(g.tol);
  emit(g, g.format == "csv" ? goldens_to_csv(rows) : dump(goldens_to_json(rows)));
  for (const auto& r : rows)
    if (!r.pass) return kViolation;
  return kOk;
}

int cmd_list(const Globals& g) {
  if (g.format == "csv") {
    std::ostringstream os;
    os << "id,side,target,arity,signed,formula\n";
    for (const auto& s : list_catalog())
      os << s.id << "," << to_string(s.side) << "," << to_string(s.target) << "," << to_string(s.arity)
         << "," << (s.signed_pair ? "true" : "false") << ",\"" << s.formula << "\"\n";
    emit(g, os.str());
    return kOk;
  }
  json arr = json::array();
  for (const auto& s : list_catalog()) {
    json preds = json::array();
    for (auto p : s.applicability) preds.push_back(to_string(p));
    arr.push_back({{"id", s.id},
                   {"side", to_string(s.side)},
                   {"target", to_string(s.target)},
                   {"arity", to_string(s.arity)},
                   {"applicability", preds},
                   {"signed", s.signed_pair},
                   {"formula", s.formula}});
  }
  emit(g, dump(arr));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical radius inequalities for sectorial matrices"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "Absolute tolerance for numerical radii")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option_function<std::uint64_t>(
         "--seed", [&](const std::uint64_t& s) { g.seed = s, g.seed_set = true; }, "Run seed");
  app.add_option("--trials", g.trials, "Number of trials")->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  std::function<int()> run;

  auto* radius = app.add_subcommand("radius", "Certified numerical radius of a matrix file");
  std::string radius_file;
  radius->add_option("matrix", radius_file)->required()->check(CLI::ExistingFile);
  radius->callback([&] { run = [&] { return cmd_radius(g, radius_file); }; });

  auto* check = app.add_subcommand("check", "Evaluate one catalog bound on matrix files");
  std::string check_id;
  std::vector<std::string> check_files;
  int sign = +1;
  double alpha = 0.5;
  int halvings = 1;
  std::optional<double> gamma;
  check->add_option("bound", check_id)->required();
  check->add_option("matrices", check_files)->required()->check(CLI::ExistingFile);
  check->add_option("--sign", sign, "+1 or -1 for commutator bounds")->check(CLI::IsMember({1, -1}));
  check->add_option("--alpha", alpha, "Exponent split in (0, 1)");
  check->add_option("--n", halvings, "Number of square-root halvings")->check(CLI::Range(1, 6));
  check->add_option("--gamma", gamma, "Sectorial index override (radians)");
  check->callback([&] {
    run = [&] { return cmd_check(g, check_id, check_files, sign, alpha, halvings, gamma); };
  });

  bool timing = true;
  auto* fals = app.add_subcommand("falsify", "Seeded falsification sweep of one bound");
  std::string fals_id, fals_config;
  fals->add_option("bound", fals_id)->required();
  fals->add_option("--config", fals_config, "Ensemble configuration file")->check(CLI::ExistingFile);
  fals->add_flag("!--no-timing", timing, "Omit wall_time from JSON reports");
  fals->callback([&] { run = [&] { return cmd_falsify(g, fals_id, fals_config, timing); }; });

  auto* report = app.add_subcommand("report", "Sharpness comparison of two bounds");
  std::string rep_a, rep_b, rep_config, rep_condition = "claimed";
  std::int64_t conditioned = 0;
  report->add_option("bound_a", rep_a)->required();
  report->add_option("bound_b", rep_b)->required();
  report->add_option("--config", rep_config, "Ensemble configuration file")->check(CLI::ExistingFile);
  report->add_option("--condition", rep_condition)
      ->check(CLI::IsMember({"claimed", "im-dominates", "none"}))
      ->capture_default_str();
  report->add_option("--conditioned", conditioned,
                     "Sample until this many trials satisfy the condition");
  report->add_flag("!--no-timing", timing, "Omit wall_time from JSON reports");
  report->callback([&] {
    run = [&] { return cmd_report(g, rep_a, rep_b, rep_config, rep_condition, conditioned, timing); };
  });

  auto* range = app.add_subcommand("range", "Boundary of the numerical range as CSV");
  std::string range_file;
  int directions = 256;
  range->add_option("matrix", range_file)->required()->check(CLI::ExistingFile);
  range->add_option("--n", directions, "Number of directions (>= 8)")->capture_default_str();
  range->callback([&] { run = [&] { return cmd_range(g, range_file, directions); }; });

  auto* gen = app.add_subcommand("gen", "Sample a matrix (or family) from an ensemble");
  EnsembleSpec spec;
  std::string kind = "sectorial", orientation = "lower";
  gen->add_option("--kind", kind)
      ->check(CLI::IsMember({"sectorial", "accretive-dissipative", "double-commuting", "cone", "generic"}))
      ->capture_default_str();
  gen->add_option("--n", spec.n, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--family", spec.family_size, "Family size")->check(CLI::PositiveNumber);
  gen->add_option("--gamma", spec.gamma, "Sector half-angle")->capture_default_str();
  gen->add_option("--theta1", spec.theta1)->capture_default_str();
  gen->add_option("--theta2", spec.theta2)->capture_default_str();
  gen->add_option("--orientation", orientation)->capture_default_str();
  gen->add_option("--r-min", spec.r_min)->capture_default_str();
  gen->add_option("--r-max", spec.r_max)->capture_default_str();
  gen->callback([&] { run = [&] { return cmd_gen(g, spec, kind, orientation); }; });

  auto* reproduce = app.add_subcommand("reproduce", "Worked example diag(3+2i, 1) against goldens");
  reproduce->callback([&] { run = [&] { return cmd_reproduce(g); }; });

  auto* list = app.add_subcommand("list", "List catalog bound ids");
  list->callback([&] { run = [&] { return cmd_list(g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return run();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ApplicabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInapplicable;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
}
