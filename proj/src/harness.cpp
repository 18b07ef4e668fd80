#include "sectorial/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

namespace sectorial {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool has(const BoundSpec& spec, Predicate p) {
  return std::find(spec.applicability.begin(), spec.applicability.end(), p) !=
         spec.applicability.end();
}

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Calls body(i) for i in [begin, end) on a pool of threads. Exceptions are
// captured per index; the caller decides which one to report.
template <typename Body>
void parallel_for(std::int64_t begin, std::int64_t end, unsigned threads,
                  std::vector<std::exception_ptr>& errors, Body&& body) {
  std::atomic<std::int64_t> next{begin};
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= end) return;
      try {
        body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i - begin)] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<std::int64_t>(worker_count(threads), std::max<std::int64_t>(end - begin, 1));
  if (n <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

void rethrow_first(const std::vector<std::exception_ptr>& errors, std::int64_t offset) {
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    const std::string where = "trial " + std::to_string(offset + static_cast<std::int64_t>(i));
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ApplicabilityError& e) {
      throw ApplicabilityError(e.predicate(),
                               where + ": ensemble does not satisfy the bound (" + e.what() + ")");
    } catch (const std::exception& e) {
      throw Error(where + ": " + e.what());
    }
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Draws the EnsembleSpec of one matrix (or one family) of a trial.
EnsembleSpec draw_spec(EnsembleKind kind, int n, const EnsembleConfig& c, Rng& rng) {
  EnsembleSpec s;
  s.kind = kind;
  s.n = n;
  s.r_min = c.r_min;
  s.r_max = c.r_max;
  s.gamma = rng.uniform(c.gamma_min, c.gamma_max);
  double t1 = rng.uniform(c.theta_min, c.theta_max);
  double t2 = rng.uniform(c.theta_min, c.theta_max);
  if (t1 > t2) std::swap(t1, t2);
  s.theta1 = t1;
  s.theta2 = t2;
  s.orientation = rng.uniform() < 0.5 ? ConeOrientation::lower : ConeOrientation::upper;
  return s;
}

ComplexMatrix one(const EnsembleSpec& s, Rng& rng) {
  EnsembleSpec single = s;
  single.family_size = 1;
  return generate(single, rng).front();
}

void validate(const EnsembleConfig& c) {
  if (c.n_min < 1 || c.n_max < c.n_min) throw InvalidInput("config: need 1 <= n_min <= n_max");
  if (!(c.gamma_min >= 0.0 && c.gamma_max >= c.gamma_min && c.gamma_max < std::numbers::pi / 2))
    throw InvalidInput("config: need 0 <= gamma_min <= gamma_max < pi/2");
  if (!(c.theta_min > 0.0 && c.theta_max >= c.theta_min && c.theta_max < std::numbers::pi / 2))
    throw InvalidInput("config: need 0 < theta_min <= theta_max < pi/2");
  if (!(c.r_min > 0.0 && c.r_max >= c.r_min))
    throw InvalidInput("config: need 0 < r_min <= r_max");
  if (c.family_min < 1 || c.family_max < c.family_min)
    throw InvalidInput("config: need 1 <= family_min <= family_max");
  if (!(c.alpha_min > 0.0 && c.alpha_max >= c.alpha_min && c.alpha_max < 1.0))
    throw InvalidInput("config: need 0 < alpha_min <= alpha_max < 1");
  if (c.halvings_min < 1 || c.halvings_max < c.halvings_min || c.halvings_max > 6)
    throw InvalidInput("config: need 1 <= halvings_min <= halvings_max <= 6");
  if (!(c.tol > 0.0)) throw InvalidInput("config: tol must be positive");
}

}  // namespace

// ---------------------------------------------------------------------------
// Trials

EnsembleKind matched_kind(const BoundSpec& spec) {
  if (has(spec, Predicate::double_commuting)) return EnsembleKind::double_commuting;
  if (has(spec, Predicate::cone)) return EnsembleKind::cone;
  if (has(spec, Predicate::accretive_dissipative)) return EnsembleKind::accretive_dissipative;
  if (has(spec, Predicate::sectorial) || has(spec, Predicate::gamma_nonzero) ||
      has(spec, Predicate::no_nonpositive_eigs))
    return EnsembleKind::sectorial;
  return EnsembleKind::generic;
}

InequalityInput make_trial(const BoundSpec& spec, const EnsembleConfig& config,
                           std::uint64_t index) {
  Rng rng(stream_seed(config.seed ^ fnv1a(spec.id), index));
  const EnsembleKind kind = config.kind.value_or(matched_kind(spec));
  const int n = rng.uniform_int(config.n_min, config.n_max);
  InequalityInput in;
  in.tol = config.tol;
  in.halvings = rng.uniform_int(config.halvings_min, config.halvings_max);
  in.alpha = rng.uniform(config.alpha_min, config.alpha_max);

  const EnsembleSpec base = draw_spec(kind, n, config, rng);
  EnsembleSpec generic = base;
  generic.kind = EnsembleKind::generic;

  switch (spec.arity) {
    case Arity::single: in.a = one(base, rng); break;
    case Arity::commutator: {
      in.a = one(base, rng);
      if (spec.id == "cor-2.7") {
        EnsembleSpec other = draw_spec(kind, n, config, rng);
        in.b = one(other, rng);
      } else {
        in.b = one(generic, rng);
      }
      if (spec.target == Target::generalized_commutator) {
        in.x = one(generic, rng);
        in.y = one(generic, rng);
      }
      break;
    }
    case Arity::pair: {
      if (kind == EnsembleKind::double_commuting) {
        EnsembleSpec fam = base;
        fam.family_size = 2;
        auto members = generate(fam, rng);
        in.a = members[0];
        in.b = members[1];
      } else {
        in.a = one(base, rng);
        EnsembleSpec other = draw_spec(kind, n, config, rng);
        other.orientation = base.orientation;
        in.b = one(other, rng);
      }
      break;
    }
    case Arity::family: {
      const int m = rng.uniform_int(config.family_min, config.family_max);
      if (kind == EnsembleKind::double_commuting) {
        EnsembleSpec fam = base;
        fam.family_size = m;
        in.family_a = generate(fam, rng);
      } else {
        for (int k = 0; k < m; ++k) {
          EnsembleSpec member = k == 0 ? base : draw_spec(kind, n, config, rng);
          member.orientation = base.orientation;
          in.family_a.push_back(one(member, rng));
        }
      }
      break;
    }
    case Arity::paired_family: {
      const int m = rng.uniform_int(config.family_min, config.family_max);
      std::vector<ComplexMatrix> all;
      if (kind == EnsembleKind::double_commuting) {
        EnsembleSpec fam = base;
        fam.family_size = 2 * m;
        all = generate(fam, rng);
      } else {
        for (int k = 0; k < 2 * m; ++k) {
          EnsembleSpec member = k == 0 ? base : draw_spec(kind, n, config, rng);
          all.push_back(one(member, rng));
        }
      }
      in.family_a.assign(all.begin(), all.begin() + m);
      in.family_b.assign(all.begin() + m, all.end());
      break;
    }
  }
  return in;
}

// ---------------------------------------------------------------------------
// Falsification

const std::vector<std::string>& SlackHistogram::labels() {
  static const std::vector<std::string> l = {"<0",        "[0,1e-12)",  "[1e-12,1e-9)",
                                             "[1e-9,1e-6)", "[1e-6,1e-3)", "[1e-3,1e-1)",
                                             "[1e-1,1)",  ">=1"};
  return l;
}

std::size_t SlackHistogram::bucket(double r) {
  if (!(r >= 0.0)) return 0;
  if (r < 1e-12) return 1;
  if (r < 1e-9) return 2;
  if (r < 1e-6) return 3;
  if (r < 1e-3) return 4;
  if (r < 1e-1) return 5;
  if (r < 1.0) return 6;
  return 7;
}

std::vector<RunReport> falsify(const std::string& bound_id, const EnsembleConfig& config,
                               std::int64_t trials) {
  if (trials < 0) throw InvalidInput("trials must be non-negative");
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const BoundSpec& spec = find_bound(bound_id);
  const std::vector<int> signs = spec.signed_pair ? std::vector<int>{+1, -1} : std::vector<int>{+1};

  std::vector<std::vector<BoundEvaluation>> results(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
  parallel_for(0, trials, config.threads, errors, [&](std::int64_t i) {
    InequalityInput in = make_trial(spec, config, static_cast<std::uint64_t>(i));
    auto& out = results[static_cast<std::size_t>(i)];
    for (int s : signs) {
      in.sign = s;
      out.push_back(evaluate(bound_id, in));
    }
  });
  rethrow_first(errors, 0);

  std::vector<RunReport> reports;
  for (std::size_t k = 0; k < signs.size(); ++k) {
    RunReport r;
    r.bound_id = bound_id;
    r.sign = spec.signed_pair ? signs[k] : 0;
    r.trials = trials;
    r.seed = config.seed;
    for (std::int64_t i = 0; i < trials; ++i) {
      const BoundEvaluation& e = results[static_cast<std::size_t>(i)][k];
      if (!e.holds) ++r.violations;
      if (e.slack < r.min_slack) {
        r.min_slack = e.slack;
        r.min_slack_trial = i;
      }
      r.min_relative_slack = std::min(r.min_relative_slack, e.relative_slack);
      r.max_certified_error = std::max(r.max_certified_error, e.certified_error);
      ++r.histogram.counts[SlackHistogram::bucket(e.relative_slack)];
    }
    if (r.min_slack_trial >= 0) {
      InequalityInput w = make_trial(spec, config, static_cast<std::uint64_t>(r.min_slack_trial));
      w.sign = signs[k];
      r.min_slack_witness = input_to_json(w);
      r.min_slack_witness["trial"] = r.min_slack_trial;
      r.min_slack_witness["seed"] = config.seed;
    }
    reports.push_back(std::move(r));
  }
  const double elapsed = seconds_since(start);
  for (auto& r : reports) r.wall_time = elapsed;
  return reports;
}

// ---------------------------------------------------------------------------
// Sharpness

double SharpnessReport::fraction() const {
  return trials > 0 ? static_cast<double>(dominates) / static_cast<double>(trials) : 0.0;
}
double SharpnessReport::fraction_conditioned() const {
  return conditioned > 0 ? static_cast<double>(dominates_conditioned) / static_cast<double>(conditioned)
                         : 0.0;
}
double SharpnessReport::fraction_complement() const {
  const std::int64_t rest = trials - conditioned;
  return rest > 0 ? static_cast<double>(dominates_complement) / static_cast<double>(rest) : 0.0;
}

SharpnessCondition claimed_condition(const std::string& bound_a, const std::string& bound_b) {
  const auto& a = find_bound(bound_a);
  const auto& b = find_bound(bound_b);
  if (has(a, Predicate::cone) || has(b, Predicate::cone)) return SharpnessCondition::none;
  return SharpnessCondition::im_dominates;
}

SharpnessReport report_sharpness(const std::string& bound_a, const std::string& bound_b,
                                 const EnsembleConfig& config, std::int64_t trials,
                                 SharpnessCondition condition, std::int64_t conditioned_target) {
  if (trials < 0 || conditioned_target < 0) throw InvalidInput("trials must be non-negative");
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const BoundSpec& sa = find_bound(bound_a);
  const BoundSpec& sb = find_bound(bound_b);
  if (sa.target != sb.target || sa.side != sb.side)
    throw InvalidInput("mismatched targets: '" + bound_a + "' and '" + bound_b +
                       "' do not bound the same quantity from the same side");
  // Inputs come from the more demanding of the two ensembles.
  const BoundSpec& ensemble_spec = matched_kind(sa) != EnsembleKind::generic ? sa : sb;

  struct Outcome {
    bool dominates = false;
    bool conditioned = false;
  };
  auto run_one = [&](std::int64_t i) {
    InequalityInput in = make_trial(ensemble_spec, config, static_cast<std::uint64_t>(i));
    const BoundEvaluation ea = evaluate(bound_a, in);
    const BoundEvaluation eb = evaluate(bound_b, in);
    const double margin = ea.certified_error + eb.certified_error;
    Outcome o;
    o.dominates = sa.side == BoundSide::lower ? ea.rhs >= eb.rhs - margin : ea.rhs <= eb.rhs + margin;
    if (condition == SharpnessCondition::im_dominates) {
      const auto parts = cartesian_parts(in.a);
      o.conditioned = operator_norm(parts.im) >= operator_norm(parts.re);
    } else {
      o.conditioned = true;
    }
    return o;
  };

  SharpnessReport rep;
  rep.bound_a = bound_a;
  rep.bound_b = bound_b;
  rep.condition = condition;
  rep.seed = config.seed;
  const std::int64_t limit = conditioned_target > 0 ? 100 * conditioned_target : trials;
  const std::int64_t batch = conditioned_target > 0 ? std::max<std::int64_t>(conditioned_target, 64) : trials;
  std::int64_t done = 0;
  bool finished = false;
  while (!finished && done < limit) {
    const std::int64_t end = std::min(limit, done + batch);
    std::vector<Outcome> out(static_cast<std::size_t>(end - done));
    std::vector<std::exception_ptr> errors(out.size());
    parallel_for(done, end, config.threads, errors,
                 [&](std::int64_t i) { out[static_cast<std::size_t>(i - done)] = run_one(i); });
    rethrow_first(errors, done);
    for (const auto& o : out) {
      ++rep.trials;
      if (o.dominates) ++rep.dominates;
      if (o.conditioned) {
        ++rep.conditioned;
        if (o.dominates) ++rep.dominates_conditioned;
      } else if (o.dominates) {
        ++rep.dominates_complement;
      }
      if (conditioned_target > 0 && rep.conditioned >= conditioned_target) {
        finished = true;
        break;
      }
    }
    done = end;
    if (conditioned_target == 0) finished = true;
  }
  rep.wall_time = seconds_since(start);
  return rep;
}

// ---------------------------------------------------------------------------
// Worked example

std::vector<GoldenRow> reproduce_example(double tol) {
  ComplexMatrix a(2, 2);
  a << Complex(3.0, 2.0), 0.0, 0.0, 1.0;
  InequalityInput in;
  in.a = a;
  in.tol = tol;
  const double w = numerical_radius(a, tol).value;
  const auto parts = cartesian_parts(a);
  const double re = operator_norm(parts.re);
  const double im = operator_norm(parts.im);
  const double sum_sq = operator_norm(ComplexMatrix(parts.re * parts.re + parts.im * parts.im));
  const double sqrt13 = std::sqrt(13.0);

  std::vector<GoldenRow> rows = {
      {"w^2(A)", w * w, 13.0},
      {"thm-2.2 rhs", evaluate("thm-2.2", in).rhs, 13.0},
      {"base-quarter rhs", evaluate("base-quarter", in).rhs, 6.5},
      {"sin(gamma)", std::sin(sectorial_index(a).gamma), 2.0 / sqrt13},
      {"threshold", std::sqrt(1.0 - (re * re - im * im) / sum_sq), 2.0 * std::numbers::sqrt2 / sqrt13},
  };
  for (auto& r : rows) {
    r.abs_error = std::abs(r.value - r.golden);
    r.pass = r.abs_error <= 1e-9;
  }
  return rows;
}

// ---------------------------------------------------------------------------
// I/O

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(what + ": syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(field + ": non-finite value");
  return v;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

ComplexMatrix parse_matrix(const std::string& text) {
  const json doc = parse_json(text, "matrix");
  if (!doc.is_object()) throw ParseError("matrix: top level must be an object");
  if (!doc.contains("n")) throw ParseError("matrix: missing field 'n'");
  if (!doc.contains("entries")) throw ParseError("matrix: missing field 'entries'");
  const json& jn = doc.at("n");
  if (!jn.is_number_integer() || jn.get<long long>() < 1)
    throw ParseError("n: expected a positive integer");
  const auto n = static_cast<Eigen::Index>(jn.get<long long>());
  const json& rows = doc.at("entries");
  if (!rows.is_array()) throw ParseError("entries: expected an array of rows");
  if (static_cast<Eigen::Index>(rows.size()) != n)
    throw ParseError("entries: non-square data, " + std::to_string(rows.size()) + " rows for n = " +
                     std::to_string(n));
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    const std::string rname = "entries[" + std::to_string(i) + "]";
    if (!row.is_array()) throw ParseError(rname + ": expected an array");
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw ParseError(rname + ": non-square data, " + std::to_string(row.size()) +
                       " entries for n = " + std::to_string(n));
    for (Eigen::Index j = 0; j < n; ++j) {
      const json& z = row[static_cast<std::size_t>(j)];
      const std::string zname = rname + "[" + std::to_string(j) + "]";
      if (!z.is_array() || z.size() != 2)
        throw ParseError(zname + ": expected a two-element [re, im] array");
      a(i, j) = Complex(number_at(z[0], zname + "[0]"), number_at(z[1], zname + "[1]"));
    }
  }
  return a;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  try {
    return parse_matrix(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json matrix_to_json(const ComplexMatrix& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(complex_to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"n", a.rows()}, {"entries", std::move(rows)}};
}

void write_matrix_file(const std::string& path, const ComplexMatrix& a) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << matrix_to_json(a).dump(2) << "\n";
}

namespace {

template <typename T>
void read_range(const json& doc, const std::string& key, T& lo, T& hi) {
  if (!doc.contains(key)) return;
  const json& v = doc.at(key);
  auto get = [&](const json& x, const std::string& field) -> T {
    if constexpr (std::is_integral_v<T>) {
      if (!x.is_number_integer()) throw ParseError(field + ": expected an integer");
      return x.get<T>();
    } else {
      return number_at(x, field);
    }
  };
  if (v.is_array()) {
    if (v.size() != 2) throw ParseError(key + ": expected [lo, hi]");
    lo = get(v[0], key + "[0]");
    hi = get(v[1], key + "[1]");
  } else {
    lo = hi = get(v, key);
  }
}

}  // namespace

EnsembleConfig parse_config(const std::string& text) {
  const json doc = parse_json(text, "config");
  if (!doc.is_object()) throw ParseError("config: top level must be an object");
  static const std::vector<std::string> known = {"kind",     "n",        "gamma",   "theta",
                                                 "modulus_range", "family_size", "alpha",
                                                 "halvings", "seed",     "tol",     "threads"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("config: unknown field '" + key + "'");
  EnsembleConfig c;
  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) throw ParseError("kind: expected a string");
    const std::string k = doc["kind"].get<std::string>();
    if (k != "matched") {
      try {
        c.kind = ensemble_kind_from_string(k);
      } catch (const InvalidInput& e) {
        throw ParseError(std::string("kind: ") + e.what());
      }
    }
  }
  read_range(doc, "n", c.n_min, c.n_max);
  read_range(doc, "gamma", c.gamma_min, c.gamma_max);
  read_range(doc, "theta", c.theta_min, c.theta_max);
  read_range(doc, "modulus_range", c.r_min, c.r_max);
  read_range(doc, "family_size", c.family_min, c.family_max);
  read_range(doc, "alpha", c.alpha_min, c.alpha_max);
  read_range(doc, "halvings", c.halvings_min, c.halvings_max);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) throw ParseError("seed: expected a non-negative integer");
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("tol")) c.tol = number_at(doc["tol"], "tol");
  if (doc.contains("threads")) {
    if (!doc["threads"].is_number_unsigned()) throw ParseError("threads: expected a non-negative integer");
    c.threads = doc["threads"].get<unsigned>();
  }
  try {
    validate(c);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
  return c;
}

EnsembleConfig read_config_file(const std::string& path) {
  try {
    return parse_config(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json config_to_json(const EnsembleConfig& c) {
  return json{{"kind", c.kind ? to_string(*c.kind) : "matched"},
              {"n", {c.n_min, c.n_max}},
              {"gamma", {c.gamma_min, c.gamma_max}},
              {"theta", {c.theta_min, c.theta_max}},
              {"modulus_range", {c.r_min, c.r_max}},
              {"family_size", {c.family_min, c.family_max}},
              {"alpha", {c.alpha_min, c.alpha_max}},
              {"halvings", {c.halvings_min, c.halvings_max}},
              {"seed", c.seed},
              {"tol", c.tol},
              {"threads", c.threads}};
}

json input_to_json(const InequalityInput& in) {
  json j = json::object();
  auto put = [&](const char* key, const ComplexMatrix& m) {
    if (m.size() != 0) j[key] = matrix_to_json(m);
  };
  put("A", in.a);
  put("B", in.b);
  put("X", in.x);
  put("Y", in.y);
  auto put_family = [&](const char* key, const std::vector<ComplexMatrix>& fam) {
    if (fam.empty()) return;
    json arr = json::array();
    for (const auto& m : fam) arr.push_back(matrix_to_json(m));
    j[key] = std::move(arr);
  };
  put_family("A_i", in.family_a);
  put_family("B_i", in.family_b);
  j["alpha"] = in.alpha;
  j["halvings"] = in.halvings;
  j["sign"] = in.sign;
  j["tol"] = in.tol;
  return j;
}

namespace {

json finite_or_string(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

}  // namespace

json evaluation_to_json(const BoundEvaluation& e) {
  json j{{"bound_id", e.bound_id},
         {"lhs", e.lhs},
         {"rhs", e.rhs},
         {"slack", e.slack},
         {"relative_slack", e.relative_slack},
         {"certified_error", e.certified_error},
         {"holds", e.holds}};
  if (e.sign != 0) j["sign"] = e.sign > 0 ? "+" : "-";
  return j;
}

json report_to_json(const RunReport& r, bool include_timing) {
  json hist = json::object();
  for (std::size_t k = 0; k < r.histogram.counts.size(); ++k)
    hist[SlackHistogram::labels()[k]] = r.histogram.counts[k];
  json j{{"bound_id", r.bound_id},
         {"trials", r.trials},
         {"violations", r.violations},
         {"min_slack", finite_or_string(r.min_slack)},
         {"min_relative_slack", finite_or_string(r.min_relative_slack)},
         {"max_certified_error", r.max_certified_error},
         {"min_slack_witness", r.min_slack_witness},
         {"slack_histogram", hist},
         {"seed", r.seed}};
  if (r.sign != 0) j["sign"] = r.sign > 0 ? "+" : "-";
  if (include_timing) j["wall_time"] = r.wall_time;
  return j;
}

json sharpness_to_json(const SharpnessReport& r, bool include_timing) {
  json j{{"bound_a", r.bound_a},
         {"bound_b", r.bound_b},
         {"condition", r.condition == SharpnessCondition::im_dominates ? "||Im A|| >= ||Re A||" : "none"},
         {"trials", r.trials},
         {"dominates", r.dominates},
         {"fraction", r.fraction()},
         {"conditioned", r.conditioned},
         {"dominates_conditioned", r.dominates_conditioned},
         {"fraction_conditioned", r.fraction_conditioned()},
         {"dominates_complement", r.dominates_complement},
         {"fraction_complement", r.fraction_complement()},
         {"seed", r.seed}};
  if (include_timing) j["wall_time"] = r.wall_time;
  return j;
}

json goldens_to_json(const std::vector<GoldenRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"quantity", r.quantity},
                   {"value", r.value},
                   {"golden", r.golden},
                   {"abs_error", r.abs_error},
                   {"pass", r.pass}});
  return arr;
}

std::string reports_to_csv(const std::vector<RunReport>& reports) {
  std::ostringstream os;
  os << "bound_id,sign,trials,violations,min_slack,min_relative_slack,max_certified_error";
  for (const auto& l : SlackHistogram::labels()) os << ",\"" << l << "\"";
  os << ",wall_time\n";
  for (const auto& r : reports) {
    os << r.bound_id << "," << (r.sign == 0 ? "" : (r.sign > 0 ? "+" : "-")) << "," << r.trials << ","
       << r.violations << "," << format_double(r.min_slack) << ","
       << format_double(r.min_relative_slack) << "," << format_double(r.max_certified_error);
    for (auto c : r.histogram.counts) os << "," << c;
    os << "," << format_double(r.wall_time) << "\n";
  }
  return os.str();
}

std::string sharpness_to_csv(const SharpnessReport& r) {
  std::ostringstream os;
  os << "bound_a,bound_b,condition,trials,fraction,conditioned,fraction_conditioned,"
        "fraction_complement,wall_time\n";
  os << r.bound_a << "," << r.bound_b << ","
     << (r.condition == SharpnessCondition::im_dominates ? "im>=re" : "none") << "," << r.trials << ","
     << format_double(r.fraction()) << "," << r.conditioned << ","
     << format_double(r.fraction_conditioned()) << "," << format_double(r.fraction_complement())
     << "," << format_double(r.wall_time) << "\n";
  return os.str();
}

std::string goldens_to_csv(const std::vector<GoldenRow>& rows) {
  std::ostringstream os;
  os << "quantity,value,golden,abs_error,pass\n";
  for (const auto& r : rows)
    os << r.quantity << "," << format_double(r.value) << "," << format_double(r.golden) << ","
       << format_double(r.abs_error) << "," << (r.pass ? "true" : "false") << "\n";
  return os.str();
}

std::string boundary_to_csv(const BoundaryScan& scan) {
  std::ostringstream os;
  os << "theta,p,re,im\n";
  for (std::size_t k = 0; k < scan.angles.size(); ++k)
    os << format_double(scan.angles[k]) << "," << format_double(scan.support_values[k]) << ","
       << format_double(scan.boundary_points[k].real()) << ","
       << format_double(scan.boundary_points[k].imag()) << "\n";
  return os.str();
}

}  // namespace sectorial
