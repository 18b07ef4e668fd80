// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "sectorial/catalog.hpp"
#include "sectorial/fov.hpp"
#include "sectorial/generators.hpp"
#include "sectorial/harness.hpp"
#include "sectorial/matfun.hpp"

using namespace sectorial;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double rel_frobenius(const ComplexMatrix& x, const ComplexMatrix& ref) {
  return (x - ref).norm() / std::max(ref.norm(), 1e-300);
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(3);
  ss << x;
  return ss.str();
}

// Serialized output of a full sweep, kept for the determinism check.
struct SuiteOutput {
  std::string reports;
  std::string sharpness;
};

const std::vector<std::pair<std::string, std::string>> kSharpnessPairs = {
    {"thm-2.2", "base-quarter"}, {"thm-2.2", "base-refined"}, {"cor-2.5", "base-fong"},
    {"cor-2.5", "base-kitt-comm"}, {"thm-3.5", "base-1p"},   {"thm-3.7", "base-2p"},
};

constexpr std::int64_t kSweepTrials = 10000;
constexpr std::int64_t kSharpnessSamples = 5000;

json run_sweep(const EnsembleConfig& config, std::int64_t& violations, double& seconds) {
  const auto start = Clock::now();
  json out = json::array();
  violations = 0;
  for (const auto& spec : list_catalog()) {
    for (const auto& r : falsify(spec.id, config, kSweepTrials)) {
      violations += r.violations;
      if (r.violations > 0)
        std::cerr << "  violation: " << spec.id << " sign " << r.sign << " min_slack " << r.min_slack << "\n";
      out.push_back(report_to_json(r, false));
    }
  }
  seconds = seconds_since(start);
  return out;
}

json run_sharpness(const EnsembleConfig& config, std::vector<SharpnessReport>& reports) {
  json out = json::array();
  reports.clear();
  for (const auto& [a, b] : kSharpnessPairs) {
    reports.push_back(report_sharpness(a, b, config, 0, claimed_condition(a, b), kSharpnessSamples));
    out.push_back(sharpness_to_json(reports.back(), false));
  }
  return out;
}

Outcome criterion_reproduce() {
  const auto start = Clock::now();
  const std::string cmd = std::string(SECTORIAL_CLI) + " reproduce";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {false, "could not launch the command-line tool"};
  std::string text;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), n);
  const int raw = pclose(pipe);
  const double elapsed = seconds_since(start);
  const int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;

  const std::vector<std::pair<std::string, double>> goldens = {
      {"w^2(A)", 13.0},
      {"thm-2.2 rhs", 13.0},
      {"base-quarter rhs", 6.5},
      {"sin(gamma)", 2.0 / std::sqrt(13.0)},
      {"threshold", 2.0 * std::sqrt(2.0) / std::sqrt(13.0)},
  };
  json rows;
  try {
    rows = json::parse(text);
  } catch (const std::exception& e) {
    return {false, std::string("unparseable output: ") + e.what()};
  }
  double worst = 0.0;
  bool ok = status == 0 && rows.size() == goldens.size();
  for (std::size_t i = 0; ok && i < goldens.size(); ++i) {
    ok = rows[i]["quantity"] == goldens[i].first;
    const double err = std::abs(rows[i]["value"].get<double>() - goldens[i].second);
    worst = std::max(worst, err);
    ok = ok && err <= 1e-9;
  }
  ok = ok && elapsed < 1.0;
  return {ok, "max abs error " + fmt(worst) + ", exit " + std::to_string(status) + ", " + fmt(elapsed) + " s"};
}

Outcome criterion_sweep(SuiteOutput& first) {
  EnsembleConfig config;
  std::int64_t violations = 0;
  double seconds = 0.0;
  first.reports = run_sweep(config, violations, seconds).dump();
  const bool ok = violations == 0 && seconds < 300.0;
  return {ok, std::to_string(list_catalog().size()) + " ids x " + std::to_string(kSweepTrials) + " trials, " +
                  std::to_string(violations) + " violations, " + fmt(seconds) + " s"};
}

Outcome criterion_radius() {
  Rng rng(stream_seed(20240601, 3));
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = rng.uniform_int(2, 8);
    const double scale = std::exp(rng.uniform(-3.0, 3.0));
    const ComplexMatrix u = random_unitary(n, rng);
    ComplexVector d(n);
    for (int i = 0; i < n; ++i) d(i) = scale * rng.complex_normal();
    const ComplexMatrix a = u * d.asDiagonal() * u.adjoint();
    const double rho = d.cwiseAbs().maxCoeff();
    const double w = numerical_radius(a, 1e-11 * rho).value;
    worst = std::max(worst, std::abs(w - rho) / rho);
  }
  return {worst <= 1e-9, "1000 normal matrices, max |w - rho| / rho = " + fmt(worst)};
}

Outcome criterion_powers() {
  Rng rng(stream_seed(20240601, 4));
  double worst_db = 0.0;
  int accepted = 0, rejected = 0;
  while (accepted < 500) {
    EnsembleSpec spec;
    spec.n = rng.uniform_int(2, 8);
    spec.gamma = rng.uniform(0.05, 1.5);
    const ComplexMatrix a = gen_sectorial(spec, rng);
    const double delta = is_accretive(a).delta;
    if (delta / numerical_radius(a).value < 1e-3) {
      ++rejected;
      continue;
    }
    ++accepted;
    worst_db = std::max(worst_db, rel_frobenius(fractional_power(a, 0.5).matrix, sqrt_db(a).matrix));
  }
  double worst_normal = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = rng.uniform_int(2, 8);
    const double gamma = rng.uniform(0.05, 1.5);
    const ComplexMatrix u = random_unitary(n, rng);
    ComplexVector d(n);
    for (int i = 0; i < n; ++i) d(i) = std::polar(rng.uniform(0.5, 2.0), rng.uniform(-gamma, gamma));
    const ComplexMatrix a = u * d.asDiagonal() * u.adjoint();
    for (int k = 1; k <= 9; ++k) {
      const double t = 0.1 * k;
      ComplexVector dt(n);
      for (int i = 0; i < n; ++i) dt(i) = std::pow(d(i), t);
      const ComplexMatrix ref = u * dt.asDiagonal() * u.adjoint();
      worst_normal = std::max(worst_normal, rel_frobenius(fractional_power(a, t).matrix, ref));
    }
  }
  const bool ok = worst_db <= 1e-8 && worst_normal <= 1e-8;
  return {ok, "A^{1/2} vs Denman-Beavers " + fmt(worst_db) + " on 500 samples (" + std::to_string(rejected) +
                  " below delta/w = 1e-3 redrawn), A^t vs diagonal oracle " + fmt(worst_normal)};
}

Outcome criterion_sector_shrink() {
  Rng rng(stream_seed(20240601, 5));
  double worst = -1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    EnsembleSpec spec;
    spec.n = rng.uniform_int(2, 8);
    spec.gamma = rng.uniform(0.05, 1.5);
    const ComplexMatrix a = gen_sectorial(spec, rng);
    const double gamma = sectorial_index(a).gamma;
    for (int k = 1; k <= 9; ++k) {
      const double t = 0.1 * k;
      const double g = sectorial_index(fractional_power(a, t).matrix).gamma;
      worst = std::max(worst, g - t * gamma);
    }
  }
  return {worst <= 1e-6, "9000 powers, max index(A^t) - t gamma = " + fmt(worst)};
}

Outcome criterion_sharpness(SuiteOutput& first) {
  std::vector<SharpnessReport> reports;
  first.sharpness = run_sharpness(EnsembleConfig{}, reports).dump();
  bool ok = true;
  std::string detail;
  for (const auto& r : reports) {
    const double f = r.fraction_conditioned();
    ok = ok && r.conditioned == kSharpnessSamples && f == 1.0;
    detail += (detail.empty() ? "" : ", ") + r.bound_a + "/" + r.bound_b + " " + fmt(f) + " of " +
              std::to_string(r.conditioned);
  }
  return {ok, detail};
}

Outcome criterion_index_methods() {
  Rng rng(stream_seed(20240601, 7));
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    EnsembleSpec spec;
    spec.kind = trial % 2 == 0 ? EnsembleKind::sectorial : EnsembleKind::accretive_dissipative;
    spec.n = rng.uniform_int(2, 8);
    spec.gamma = rng.uniform(0.05, 1.5);
    const ComplexMatrix a = generate(spec, rng).front();
    worst = std::max(worst, std::abs(sectorial_index(a).gamma - sectorial_index_sweep(a).gamma));
  }
  return {worst <= 1e-6, "1000 accretive samples, max |generalized - sweep| = " + fmt(worst) + " rad"};
}

Outcome criterion_determinism(const SuiteOutput& first) {
  if (first.reports.empty() || first.sharpness.empty())
    return {false, "first run unavailable"};
  std::int64_t violations = 0;
  double seconds = 0.0;
  EnsembleConfig config;
  SuiteOutput second;
  second.reports = run_sweep(config, violations, seconds).dump();
  std::vector<SharpnessReport> reports;
  second.sharpness = run_sharpness(config, reports).dump();
  const bool ok = first.reports == second.reports && first.sharpness == second.sharpness;
  return {ok, std::to_string(first.reports.size() + first.sharpness.size()) + " bytes compared"};
}

}  // namespace

int main() {
  SuiteOutput first;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"example reproduction", criterion_reproduce},
      {"soundness sweep", [&] { return criterion_sweep(first); }},
      {"radius oracle", criterion_radius},
      {"fractional-power cross-oracle", criterion_powers},
      {"sector shrink", criterion_sector_shrink},
      {"sharpness fractions", [&] { return criterion_sharpness(first); }},
      {"index cross-method", criterion_index_methods},
      {"determinism", [&] { return criterion_determinism(first); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
