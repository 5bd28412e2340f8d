#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "../support/instances.h"
#include "../support/kappa_cells.h"
#include "../support/schema_check.h"
#include "srbm2d/cli.h"
#include "srbm2d/errors.h"
#include "srbm2d/instance_io.h"

using namespace srbm2d;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string instance(const std::string& name) { return std::string(SRBM2D_SOURCE_DIR) + "/instances/" + name; }

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("srbm2d_cli_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string write_instance(const std::string& name, const SrbmData& d) {
  const fs::path p = scratch() / (name + ".json");
  std::ofstream(p) << instance_to_json({name, d});
  return p.string();
}

std::string write_text(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

json report(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Run r = cli(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const json j = json::parse(r.out);
  const auto errors = srbm2d::testing::report_errors(j);
  for (const auto& e : errors) FAIL_CHECK(e);
  return j;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

void check_rectangular(const std::vector<std::vector<std::string>>& rows) {
  REQUIRE(!rows.empty());
  for (const auto& r : rows) CHECK(r.size() == rows[0].size());
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("validate") {
  CHECK(cli({"validate", "--input", instance("identity.json")}).code == 0);

  SrbmData d = srbm2d::testing::identity_data();
  d.mu = {1, -1};
  const std::string unstable = write_instance("unstable", d);
  const Run r = cli({"validate", "--input", unstable, "--format", "json"});
  CHECK(r.code == 1);
  const json j = json::parse(r.out);
  CHECK(srbm2d::testing::report_errors(j).empty());
  CHECK(j["payload"]["failures"] == json::array({"NotStable1"}));
  CHECK(cli({"points", "--input", unstable}).code == 1);

  const Run bad = cli({"validate", "--input",
                       write_text("bad3.json", R"({"sigma": [[1,0,0],[0,1,0],[0,0,1]], "mu": [-1,-1], "r": [[1,0],[0,1]]})")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("sigma") != std::string::npos);

  const Run syntax = cli({"validate", "--input", write_text("syntax.json", "{\"sigma\": [[1,0],\n  [0,1]],, }")});
  CHECK(syntax.code == 2);
  CHECK(syntax.err.find("line 2") != std::string::npos);

  CHECK(cli({"validate", "--input", (scratch() / "missing.json").string()}).code == 2);
}

TEST_CASE("argument errors and help") {
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"--version"}).out == std::string(kVersion) + "\n");
  CHECK(cli({"frobnicate", "--input", instance("identity.json")}).code == 2);
  CHECK(cli({"points"}).code == 2);
  CHECK(cli({"points", "--input", instance("identity.json"), "--format", "xml"}).code == 2);
  CHECK(cli({"rate", "--input", instance("identity.json"), "--dir", "1;2"}).code == 2);
  CHECK(cli({"rate", "--input", instance("identity.json"), "--dir", "-1,2"}).code == 2);
  CHECK(cli({"points", "--input", instance("identity.json"), "--tol", "-1"}).code == 2);
}

TEST_CASE("exit code contract") {
  CHECK(exit_code_for(ErrorCode::kInvalidInstance) == 1);
  for (ErrorCode c : {ErrorCode::kParseError, ErrorCode::kDomainError, ErrorCode::kZeroDirection,
                      ErrorCode::kOutOfSupport})
    CHECK(exit_code_for(c) == 2);
  for (ErrorCode c : {ErrorCode::kImpossibleCase, ErrorCode::kInconsistentCriteria, ErrorCode::kUnclassifiable,
                      ErrorCode::kInsufficientHorizon, ErrorCode::kDegenerateFit, ErrorCode::kNoSolution})
    CHECK(exit_code_for(c) == 3);
  CHECK(exit_code_for(ErrorCode::kConfigError) == 4);
  CHECK(exit_code_for(ErrorCode::kNoFeasiblePath) == 5);
}

TEST_CASE("points") {
  json j = report({"points", "--input", instance("identity.json")});
  CHECK(j["command"] == "points");
  CHECK(j["instance"] == "identity");
  CHECK(j["version"] == kVersion);
  CHECK(j["payload"]["tau"] == json::array({2.0, 2.0}));
  CHECK(j["payload"]["category"] == "I");
  CHECK(j["payload"]["self_check"]["ok"] == true);

  j = report({"points", "--input", instance("e1.json")});
  CHECK(j["payload"]["tau"][0].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j["payload"]["tau"][1].get<double>() == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(j["payload"]["tau_in_gamma"] == true);

  std::mt19937_64 rng(61);
  for (int n = 0; n < 20; ++n) {
    const std::string p = write_instance("random" + std::to_string(n), srbm2d::testing::random_instance(rng));
    CHECK(report({"points", "--input", p})["payload"]["self_check"]["ok"] == true);
  }
}

TEST_CASE("rate") {
  json j = report({"rate", "--input", instance("identity.json"), "--dir", "1,0"});
  CHECK(j["payload"]["rows"][0]["I"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));

  const Run r = cli({"rate", "--input", instance("e1.json"), "--polar", "90", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  check_rectangular(rows);
  REQUIRE(rows.size() == 91);
  CHECK(rows[0] == std::vector<std::string>{"angle", "v1", "v2", "I", "I1", "I2", "case_fired"});
  for (std::size_t k = 2; k < rows.size(); ++k) CHECK(std::stod(rows[k][0]) > std::stod(rows[k - 1][0]));
  CHECK(rows.back()[1] == "0");
  CHECK(rows.back()[2] == "1");
  CHECK(std::stod(rows.back()[3]) == doctest::Approx(0.8).epsilon(1e-12));
  for (std::size_t k = 1; k < rows.size(); ++k)
    CHECK(std::stod(rows[k][3]) == std::min(std::stod(rows[k][4]), std::stod(rows[k][5])));

  j = report({"rate", "--input", instance("e1.json"), "--dir", "0,0", "--dir", "1,1"});
  CHECK(j["payload"]["rows"][0]["error"] == "ZeroDirection");
  CHECK(j["payload"]["rows"][1]["I"].get<double>() == doctest::Approx(3.2).epsilon(1e-12));
  CHECK(j["warnings"].size() == 1);
}

TEST_CASE("product-form") {
  json j = report({"product-form", "--input", instance("identity.json")});
  CHECK(j["payload"]["is_product_form"] == true);
  CHECK(j["payload"]["alpha"] == json::array({2.0, 2.0}));
  CHECK(j["payload"]["max_bar_residual"].get<double>() <= 1e-10);

  j = report({"product-form", "--input", instance("e1.json")});
  CHECK(j["payload"]["is_product_form"] == false);
  CHECK(j["payload"]["alpha"].is_null());

  std::mt19937_64 rng(62);
  const std::string skew = write_instance("skew", srbm2d::testing::skew_instance(rng));
  j = report({"product-form", "--input", skew});
  CHECK(j["payload"]["skew_symmetric"] == true);
  CHECK(j["payload"]["geometric"] == true);
  CHECK(j["payload"]["max_bar_residual"].get<double>() <= 1e-10);
}

TEST_CASE("tail") {
  for (const char* name : {"identity.json", "e1.json"}) {
    const json j = report({"tail", "--input", instance(name), "--measure", "nu2"});
    CHECK(j["payload"]["decay"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(j["payload"]["kappa"].get<double>() == 0.0);
  }
  for (const auto& c : srbm2d::testing::kappa_cells()) {
    const json j = report({"tail", "--input", write_instance("cell", c.data)});
    CHECK(j["payload"]["kappa"].get<double>() == c.kappa);
  }
  CHECK(cli({"tail", "--input", instance("e1.json"), "--measure", "nu3"}).code == 2);
}

TEST_CASE("simulate") {
  const fs::path a = scratch() / "sim_a", b = scratch() / "sim_b", c = scratch() / "sim_c";
  const std::vector<std::string> base{"simulate", "--input", instance("e1.json"), "--horizon", "600", "--seed", "7",
                                      "--replications", "3"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  const json j = report(with({"--out", a.string()}));
  CHECK(j["payload"]["csv"] == (a / "simulate.csv").string());
  CHECK(cli(with({"--out", b.string()})).code == 0);
  CHECK(cli(with({"--out", c.string(), "--threads", "3"})).code == 0);
  const std::string csv = slurp(a / "simulate.csv");
  CHECK(!csv.empty());
  CHECK(csv == slurp(b / "simulate.csv"));
  CHECK(csv == slurp(c / "simulate.csv"));

  const auto rows = parse_csv(csv);
  check_rectangular(rows);
  CHECK(rows[0].size() == 9);
  CHECK(rows[0].back() == "tail_se_2");

  const Run single = cli({"simulate", "--input", instance("identity.json"), "--horizon", "300", "--format", "csv"});
  REQUIRE(single.code == 0);
  CHECK(parse_csv(single.out)[0].size() == 7);

  CHECK(cli({"simulate", "--input", instance("identity.json"), "--dt", "0.5"}).code == 4);
  CHECK(cli({"simulate", "--input", instance("identity.json"), "--horizon", "50"}).code == 4);
}

TEST_CASE("oracle") {
  json j = report({"oracle", "--input", instance("identity.json"), "--dir", "1,1"});
  CHECK(std::fabs(j["payload"]["rows"][0]["rel_gap"].get<double>()) <= 0.02);
  j = report({"oracle", "--input", instance("e1.json"), "--dir", "0,1", "--dir", "0,0"});
  CHECK(std::fabs(j["payload"]["rows"][0]["rel_gap"].get<double>()) <= 0.02);
  CHECK(j["payload"]["rows"][1]["I"].get<double>() == 0.0);
  CHECK(j["payload"]["rows"][1]["oracle"].get<double>() == 0.0);
}

TEST_CASE("plot") {
  const fs::path dir = scratch() / "plot_id";
  json j = report({"plot", "--input", instance("identity.json"), "--what", "ellipse", "--out", dir.string()});
  CHECK(j["payload"]["files"].size() == 2);
  auto rows = parse_csv(slurp(dir / "ellipse.csv"));
  check_rectangular(rows);
  REQUIRE(rows.size() == 513);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double x = std::stod(rows[k][0]), y = std::stod(rows[k][1]);
    CHECK(std::fabs(-0.5 * (x * x + y * y) + x + y) <= 1e-9);
  }

  const fs::path e1 = scratch() / "plot_e1";
  report({"plot", "--input", instance("e1.json"), "--out", e1.string()});
  for (const char* f : {"ellipse.csv", "points.csv", "rays.csv", "domains.csv", "rate.csv"})
    check_rectangular(parse_csv(slurp(e1 / f)));
  rows = parse_csv(slurp(e1 / "domains.csv"));
  double xmax = -1e300, ymax = -1e300;
  int seen = 0;
  for (const auto& r : rows)
    if (r[0] == "D") {
      ++seen;
      xmax = std::max(xmax, std::stod(r[1]));
      ymax = std::max(ymax, std::stod(r[2]));
    }
  CHECK(seen > 0);
  CHECK(xmax == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ymax == doctest::Approx(0.8).epsilon(1e-12));

  // rays: every row is collinear with its p vector
  rows = parse_csv(slurp(e1 / "rays.csv"));
  const Vector2 p[2] = {{1, 0}, {-0.5, 1}};
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const int i = rows[k][0] == "p_1" ? 0 : 1;
    CHECK(std::fabs(cross(p[i], {std::stod(rows[k][1]), std::stod(rows[k][2])})) <= 1e-9);
  }
  CHECK(parse_csv(slurp(e1 / "rate.csv")).size() == 91);
  CHECK(cli({"plot", "--input", instance("e1.json"), "--what", "pictures"}).code == 2);
}

TEST_CASE("json output is deterministic apart from wall time") {
  auto strip = [](std::string s) {
    json j = json::parse(s);
    j.erase("wall_time_s");
    return j.dump();
  };
  const Run a = cli({"rate", "--input", instance("e1.json"), "--polar", "7", "--format", "json"});
  const Run b = cli({"rate", "--input", instance("e1.json"), "--polar", "7", "--format", "json"});
  CHECK(strip(a.out) == strip(b.out));
  const Run c = cli({"rate", "--input", instance("e1.json"), "--polar", "7", "--format", "csv"});
  const Run d = cli({"rate", "--input", instance("e1.json"), "--polar", "7", "--format", "csv"});
  CHECK(c.out == d.out);
}

TEST_CASE("shortest round-trip float formatting") {
  for (double x : {0.1, 1.0 / 3.0, 2.0, 1e-300, -7.25, 123456789.123}) CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("instance round trip") {
  std::mt19937_64 rng(63);
  for (int n = 0; n < 50; ++n) {
    const InstanceFile in{"x", srbm2d::testing::random_instance(rng)};
    const InstanceFile out = parse_instance(instance_to_json(in));
    CHECK(out.name == "x");
    CHECK(out.data.sigma == in.data.sigma);
    CHECK(out.data.mu == in.data.mu);
    CHECK(out.data.r == in.data.r);
  }
}
