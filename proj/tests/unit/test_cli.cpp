#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "test_util.hpp"

using nlohmann::json;
using testutil::data_file;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the command-line tool with the given arguments; stderr is discarded.
Run cli(const std::string& args) {
  const std::string cmd = std::string(SECTORIAL_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sectorial_cli_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("radius") {
  SUBCASE("worked example") {
    const Run r = cli("radius " + data_file("remark.json"));
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j["value"].get<double>() - std::sqrt(13.0)) <= 1e-10);
    CHECK(std::abs(j["sin_gamma"].get<double>() - 2.0 / std::sqrt(13.0)) <= 1e-12);
    CHECK(j["norm"].get<double>() == doctest::Approx(std::sqrt(13.0)));
  }
  SUBCASE("identity") {
    const Run r = cli("radius " + data_file("identity.json"));
    CHECK(std::abs(json::parse(r.out)["value"].get<double>() - 1.0) <= 1e-10);
  }
  SUBCASE("nilpotent") {
    const json j = json::parse(cli("radius " + data_file("nilpotent.json")).out);
    CHECK(std::abs(j["value"].get<double>() - 0.5) <= 1e-10);
    CHECK_FALSE(j["accretive"].get<bool>());
  }
  SUBCASE("tolerance flag") {
    const json j = json::parse(cli("--tol 1e-6 radius " + data_file("remark.json")).out);
    CHECK(j["error_bound"].get<double>() <= 1e-6);
  }
  SUBCASE("parse errors exit 2 with a diagnostic") {
    CHECK(cli("radius " + data_file("nonsquare.json")).status == 2);
    CHECK(cli("radius " + data_file("bad_syntax.json")).status == 2);
    const std::string cmd = std::string(SECTORIAL_CLI) + " radius " + data_file("nonsquare.json") + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::array<char, 4096> buf{};
    const std::size_t n = fread(buf.data(), 1, buf.size(), pipe);
    pclose(pipe);
    CHECK(std::string(buf.data(), n).find("non-square") != std::string::npos);
  }
}

TEST_CASE("check") {
  SUBCASE("thm-2.2 on the worked example") {
    const Run r = cli("check thm-2.2 " + data_file("remark.json"));
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["lhs"].get<double>() == doctest::Approx(13.0));
    CHECK(j["rhs"].get<double>() == doctest::Approx(13.0));
    CHECK(j["holds"].get<bool>());
  }
  SUBCASE("base-quarter on the worked example") {
    const json j = json::parse(cli("check base-quarter " + data_file("remark.json")).out);
    CHECK(j["rhs"].get<double>() == doctest::Approx(6.5));
  }
  SUBCASE("cor-2.17 on a non-commuting pair is inapplicable") {
    const Run r = cli("check cor-2.17 " + data_file("noncommuting_a.json") + " " +
                      data_file("noncommuting_b.json"));
    CHECK(r.status == 3);
  }
  SUBCASE("commutator sign flag") {
    const std::string files = data_file("remark.json") + " " + data_file("identity.json");
    // identity.json is 3x3: dimension mismatch is a usage error.
    CHECK(cli("check cor-2.5 " + files).status == 2);
    const std::string ok = data_file("remark.json") + " " + data_file("diag_1_i.json");
    const json plus = json::parse(cli("check cor-2.5 --sign 1 " + ok).out);
    const json minus = json::parse(cli("check cor-2.5 --sign -1 " + ok).out);
    CHECK(plus["sign"] == "+");
    CHECK(minus["sign"] == "-");
  }
  SUBCASE("wrong file count and unknown id") {
    CHECK(cli("check thm-2.2 " + data_file("remark.json") + " " + data_file("remark.json")).status == 2);
    CHECK(cli("check thm-9.9 " + data_file("remark.json")).status == 2);
  }
  SUBCASE("halvings flag") {
    CHECK(cli("check thm-2.12 --n 3 " + data_file("remark.json")).status == 0);
    CHECK(cli("check thm-2.12 --n 9 " + data_file("remark.json")).status == 2);
  }
}

TEST_CASE("falsify and report") {
  SUBCASE("falsify writes a report and exits 0") {
    const std::string out = temp_path("falsify.json");
    const Run r = cli("falsify thm-2.2 --trials 50 --seed 11 --out " + out);
    CHECK(r.status == 0);
    const json j = json::parse(slurp(out));
    CHECK(j["reports"][0]["violations"] == 0);
    CHECK(j["reports"][0]["trials"] == 50);
    CHECK(j["reports"][0]["seed"] == 11);
    CHECK(j["reports"][0].contains("min_slack_witness"));
    std::filesystem::remove(out);
  }
  SUBCASE("identical seeds give identical bytes without timing") {
    const std::string args = "falsify lem-2.9 --trials 30 --config " + data_file("sweep.json") + " --no-timing";
    CHECK(cli(args).out == cli(args).out);
  }
  SUBCASE("csv format") {
    const Run r = cli("falsify cor-2.5 --trials 10 --format csv");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("bound_id,sign,trials,violations", 0) == 0);
  }
  SUBCASE("inapplicable configured ensemble exits 3") {
    const std::string cfg = temp_path("generic.json");
    std::ofstream(cfg) << R"({"kind": "generic"})";
    CHECK(cli("falsify thm-2.2 --trials 10 --config " + cfg).status == 3);
    std::filesystem::remove(cfg);
  }
  SUBCASE("bad configuration exits 2") {
    const std::string cfg = temp_path("bad.json");
    std::ofstream(cfg) << R"({"colour": 1})";
    CHECK(cli("falsify thm-2.2 --config " + cfg).status == 2);
    std::filesystem::remove(cfg);
  }
  SUBCASE("sharpness report") {
    const Run r = cli("report thm-2.2 base-quarter --conditioned 100");
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["conditioned"] == 100);
    CHECK(j["fraction_conditioned"] == 1.0);
  }
  SUBCASE("mismatched targets exit 2") { CHECK(cli("report thm-2.2 lem-2.9 --trials 5").status == 2); }
}

TEST_CASE("range, gen, reproduce, list") {
  SUBCASE("range of the identity") {
    const Run r = cli("range " + data_file("identity.json") + " --n 8");
    CHECK(r.status == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "theta,p,re,im");
    int rows = 0;
    while (std::getline(lines, line)) {
      const auto c2 = line.find(',', line.find(',') + 1);
      const auto c3 = line.find(',', c2 + 1);
      CHECK(std::stod(line.substr(c2 + 1, c3 - c2 - 1)) == doctest::Approx(1.0));
      CHECK(std::abs(std::stod(line.substr(c3 + 1))) <= 1e-15);
      ++rows;
    }
    CHECK(rows == 8);
  }
  SUBCASE("range of the worked example peaks at sqrt(13)") {
    const Run r = cli("range " + data_file("remark.json") + " --n 512");
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    double best = 0.0;
    while (std::getline(lines, line)) {
      const auto c2 = line.find(',', line.find(',') + 1);
      const auto c3 = line.find(',', c2 + 1);
      const double re = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
      const double im = std::stod(line.substr(c3 + 1));
      best = std::max(best, std::hypot(re, im));
    }
    CHECK(std::abs(best - std::sqrt(13.0)) <= 1e-10);
  }
  SUBCASE("range needs at least 8 directions") {
    CHECK(cli("range " + data_file("identity.json") + " --n 4").status == 2);
  }
  SUBCASE("gen writes a matrix file the other commands accept") {
    const std::string out = temp_path("gen.json");
    CHECK(cli("gen --kind sectorial --n 4 --gamma 0.6 --seed 3 --out " + out).status == 0);
    const json j = json::parse(cli("radius " + out).out);
    CHECK(j["gamma"].get<double>() == doctest::Approx(0.6).epsilon(1e-8));
    std::filesystem::remove(out);
  }
  SUBCASE("gen families are split into numbered files") {
    const std::string out = temp_path("fam.json");
    CHECK(cli("gen --kind double-commuting --family 2 --n 3 --out " + out).status == 0);
    const std::string a = temp_path("fam_1.json"), b = temp_path("fam_2.json");
    CHECK(cli("check cor-2.17 " + a + " " + b).status == 0);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
  }
  SUBCASE("reproduce") {
    const Run r = cli("reproduce");
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.size() == 5);
    for (const auto& row : j) CHECK(row["pass"].get<bool>());
    CHECK(cli("reproduce").out == r.out);
    CHECK(cli("reproduce --format csv").out.rfind("quantity,value,golden,abs_error,pass\n", 0) == 0);
  }
  SUBCASE("list") {
    const json j = json::parse(cli("list").out);
    CHECK(j.size() == 39);
  }
  SUBCASE("usage errors exit 2") {
    CHECK(cli("").status == 2);
    CHECK(cli("frobnicate").status == 2);
    CHECK(cli("--format xml reproduce").status == 2);
  }
}
