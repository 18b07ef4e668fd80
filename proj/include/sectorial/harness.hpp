#pragma once

// Verification harness: seeded falsification sweeps over matched ensembles,
// sharpness comparisons between bounds, the 2x2 worked example, and the
// JSON / CSV formats used by the command-line tool.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sectorial/catalog.hpp"
#include "sectorial/fov.hpp"
#include "sectorial/generators.hpp"

namespace sectorial {

/// Sampling ranges for a run; each trial draws its own EnsembleSpec from them.
struct EnsembleConfig {
  std::optional<EnsembleKind> kind;  // default: matched to the bound's applicability
  int n_min = 2;
  int n_max = 8;
  double gamma_min = 0.05;
  double gamma_max = 1.5;
  double theta_min = 0.05;  // cone angles
  double theta_max = 1.5;
  double r_min = 0.5;
  double r_max = 2.0;
  int family_min = 1;
  int family_max = 3;
  double alpha_min = 0.05;
  double alpha_max = 0.95;
  int halvings_min = 1;
  int halvings_max = 4;
  std::uint64_t seed = 20240601;
  double tol = 1e-10;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Ensemble kind the harness uses for a bound when none is configured.
EnsembleKind matched_kind(const BoundSpec& spec);

/// Deterministic input of trial `index` (before the sign is applied).
InequalityInput make_trial(const BoundSpec& spec, const EnsembleConfig& config,
                           std::uint64_t index);

struct SlackHistogram {
  // Buckets of relative slack: (-inf, 0), [0, 1e-12), [1e-12, 1e-9),
  // [1e-9, 1e-6), [1e-6, 1e-3), [1e-3, 1e-1), [1e-1, 1), [1, inf).
  static const std::vector<std::string>& labels();
  static std::size_t bucket(double relative_slack);
  std::vector<std::int64_t> counts = std::vector<std::int64_t>(8, 0);
};

struct RunReport {
  std::string bound_id;
  int sign = 0;
  std::int64_t trials = 0;
  std::int64_t violations = 0;  // slack < -certified_error
  double min_slack = std::numeric_limits<double>::infinity();
  double min_relative_slack = std::numeric_limits<double>::infinity();
  double max_certified_error = 0.0;
  std::int64_t min_slack_trial = -1;
  nlohmann::json min_slack_witness;  // serialized input of the minimum-slack trial
  SlackHistogram histogram;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds
};

/// Runs `trials` seeded trials of a bound; signed bounds give one report per sign.
/// Throws ApplicabilityError when a configured ensemble does not satisfy the bound.
std::vector<RunReport> falsify(const std::string& bound_id, const EnsembleConfig& config,
                               std::int64_t trials);

enum class SharpnessCondition {
  im_dominates,  // ||Im A|| >= ||Re A||
  none,
};

struct SharpnessReport {
  std::string bound_a;
  std::string bound_b;
  SharpnessCondition condition = SharpnessCondition::none;
  std::int64_t trials = 0;
  std::int64_t dominates = 0;  // rhs(a) at least as sharp as rhs(b), within certified error
  std::int64_t conditioned = 0;
  std::int64_t dominates_conditioned = 0;
  std::int64_t dominates_complement = 0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;

  double fraction() const;
  double fraction_conditioned() const;
  double fraction_complement() const;
};

/// Compares the right-hand sides of two bounds sharing target and side on the
/// same inputs. With conditioned_target > 0, sampling continues until that
/// many trials satisfy the condition (at most 100x as many trials overall).
SharpnessReport report_sharpness(const std::string& bound_a, const std::string& bound_b,
                                 const EnsembleConfig& config, std::int64_t trials,
                                 SharpnessCondition condition,
                                 std::int64_t conditioned_target = 0);

/// Condition a sharpness claim is made under.
SharpnessCondition claimed_condition(const std::string& bound_a, const std::string& bound_b);

struct GoldenRow {
  std::string quantity;
  double value = 0.0;
  double golden = 0.0;
  double abs_error = 0.0;
  bool pass = false;
};

/// The worked example A = diag(3+2i, 1): w^2, thm-2.2 and base-quarter right-hand
/// sides, sin(gamma) and the threshold of the sharpness criterion, each within 1e-9.
std::vector<GoldenRow> reproduce_example(double tol = 1e-10);

// ---------------------------------------------------------------------------
// I/O

/// {"n": k, "entries": [[[re, im], ...], ...]}, row-major. Throws ParseError.
ComplexMatrix parse_matrix(const std::string& text);
ComplexMatrix read_matrix_file(const std::string& path);
nlohmann::json matrix_to_json(const ComplexMatrix& a);
void write_matrix_file(const std::string& path, const ComplexMatrix& a);

EnsembleConfig parse_config(const std::string& text);
EnsembleConfig read_config_file(const std::string& path);
nlohmann::json config_to_json(const EnsembleConfig& config);

nlohmann::json input_to_json(const InequalityInput& in);
nlohmann::json evaluation_to_json(const BoundEvaluation& e);
nlohmann::json report_to_json(const RunReport& r, bool include_timing = true);
nlohmann::json sharpness_to_json(const SharpnessReport& r, bool include_timing = true);
nlohmann::json goldens_to_json(const std::vector<GoldenRow>& rows);

std::string reports_to_csv(const std::vector<RunReport>& reports);
std::string sharpness_to_csv(const SharpnessReport& r);
std::string goldens_to_csv(const std::vector<GoldenRow>& rows);
/// Header theta,p,re,im; one row per direction.
std::string boundary_to_csv(const BoundaryScan& scan);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace sectorial
