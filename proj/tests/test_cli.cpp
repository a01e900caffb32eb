#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lieweight/cli.hpp"
#include "lieweight/expression.hpp"
#include "lieweight/weighted.hpp"

using namespace lieweight;
using nlohmann::json;

namespace {

const std::string problems = LIEWEIGHT_PROBLEMS_DIR;
const std::string cli = LIEWEIGHT_CLI_PATH;

json example1_doc() {
  return json::parse(R"({
    "variables": ["x", "y", "z"],
    "order": 3,
    "filtration": {"-1": ["dx + x*dz"], "-2": ["dx + x*dz", "dy"], "-3": "full"},
    "submanifold": {"tangent": [], "base_point": ["0", "0", "0"]}
  })");
}

std::string input_error(const json& doc) {
  try {
    parse_problem(doc);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

int run_cli(const std::string& args) {
  const int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::ordered_json stage(const Report& r, const std::string& name) {
  const auto doc = nlohmann::ordered_json::parse(emit_json(r));
  for (const auto& s : doc["stages"])
    if (s["name"] == name) return s;
  return nlohmann::ordered_json();
}

}  // namespace

TEST_CASE("problem files") {
  const ProblemSpec p = parse_problem(example1_doc());
  CHECK(p.order == 3);
  CHECK(p.chart.names() == std::vector<std::string>{"x", "y", "z"});
  CHECK(p.filtration.generators(3).size() == 4);
  CHECK(p.submanifold.dimension() == 0);
  CHECK_FALSE(p.degree_bound.has_value());

  SUBCASE("validation") {
    json d = example1_doc();
    d["variables"] = {"x", "x", "z"};
    CHECK(input_error(d).find("variables") != std::string::npos);

    d = example1_doc();
    d["order"] = 0;
    CHECK(input_error(d).find("order") != std::string::npos);

    d = example1_doc();
    d["filtration"]["-1"] = "full";
    CHECK(input_error(d).find("full") != std::string::npos);

    d = example1_doc();
    d["filtration"].erase("-2");
    CHECK(input_error(d).find("-2") != std::string::npos);

    d = example1_doc();
    d["filtration"]["-4"] = json::array();
    CHECK(input_error(d).find("-4") != std::string::npos);

    d = example1_doc();
    d["filtration"]["-1"] = {"dx + w*dz"};
    CHECK(input_error(d).find("level -1 entry 0") != std::string::npos);

    d = example1_doc();
    d["filtration"]["-1"] = {"x*y"};
    CHECK_FALSE(input_error(d).empty());

    d = example1_doc();
    d["submanifold"]["base_point"] = {"0", "0"};
    CHECK(input_error(d).find("base_point") != std::string::npos);

    d = example1_doc();
    d["submanifold"]["base_point"] = {"0", "1/0", "0"};
    CHECK(input_error(d).find("malformed") != std::string::npos);

    // Fiber coordinates of the base point must vanish.
    d = example1_doc();
    d["submanifold"]["base_point"] = {"1", "0", "0"};
    CHECK(input_error(d).find("submanifold") != std::string::npos);

    d = example1_doc();
    d["submanifold"]["tangent"] = {"w"};
    CHECK(input_error(d).find("unknown variable") != std::string::npos);

    d = example1_doc();
    d["sample"] = 3;
    CHECK(input_error(d).find("unknown key") != std::string::npos);

    d = example1_doc();
    d["seed"] = -1;
    CHECK(input_error(d).find("seed") != std::string::npos);
  }

  SUBCASE("optional settings") {
    json d = example1_doc();
    d["degree_bound"] = 4;
    d["seed"] = 9;
    d["samples"] = 5;
    d["submanifold"] = {{"tangent", {"x"}}, {"base_point", {"1/2", 0, "0"}}};
    const ProblemSpec q = parse_problem(d);
    CHECK(*q.degree_bound == 4);
    CHECK(*q.seed == 9);
    CHECK(*q.samples == 5);
    CHECK(q.submanifold.base_point()[0] == Rational(1, 2));
  }

  CHECK_THROWS_AS(load_problem(problems + "/does-not-exist.json"), InputError);
}

TEST_CASE("commands and stages") {
  CHECK(stages_for(Command::Check) == std::vector<std::string>{"bracket_compat", "clean"});
  CHECK(stages_for(Command::Coords).back() == "coordinates");
  CHECK(stages_for(Command::Jets).back() == "jets");
  CHECK(stages_for(Command::Osculate).back() == "osculating");
  CHECK(stages_for(Command::Report).size() == 6);
  CHECK(parse_command("coords") == Command::Coords);
  CHECK_FALSE(parse_command("coordinates").has_value());
  CHECK(emit_json(Report{}) == "{\n  \"stages\": []\n}\n");
  CHECK(exit_code(Report{}) == 0);
}

TEST_CASE("coordinates of the worked examples") {
  const Report r1 = run_pipeline(load_problem(problems + "/example1.json"), Command::Coords, {});
  CHECK(exit_code(r1) == 0);
  const auto c1 = stage(r1, "coordinates");
  CHECK(c1["data"]["weights"] == json({1, 2, 3}));
  CHECK(c1["data"]["coordinates"] == json({"x", "y", "z - 1/2*x^2"}));

  const Report r2 = run_pipeline(load_problem(problems + "/example2.json"), Command::Coords, {});
  const auto w2 = stage(r2, "weights");
  CHECK(w2["data"]["weights"] == json({1, 2, 4}));
  CHECK(w2["data"].begin().key() == "weights");
  CHECK(stage(r2, "coordinates")["data"]["coordinates"] == json({"x", "y", "z - x^2 - x*y"}));
}

TEST_CASE("failing and inconclusive pipelines") {
  const Report b = run_pipeline(load_problem(problems + "/broken.json"), Command::Report, {});
  REQUIRE(b.stages.size() == 1);
  CHECK(b.stages[0].verdict == Verdict::Fail);
  CHECK(exit_code(b) == 1);
  const auto issue = stage(b, "bracket_compat")["data"]["issues"][0];
  CHECK(issue["bracket"] == "dz");
  CHECK(issue["witness"] == json({"0", "0", "0"}));

  // [dx, x^3 dy] = 3x (x dy) needs a degree-one coefficient.
  json d = example1_doc();
  d["filtration"] = {{"-1", {"dx", "x^3*dy"}}, {"-2", {"x*dy"}}, {"-3", "full"}};
  const ProblemSpec p = parse_problem(d);
  const Report r = run_pipeline(p, Command::Check, {0, std::nullopt, std::nullopt});
  CHECK(r.stages[0].verdict == Verdict::Inconclusive);
  const auto s = stage(r, "bracket_compat");
  CHECK(s["verdict"] == "inconclusive");
  CHECK(s["data"]["issues"][0]["verdict"] == "inconclusive");
  CHECK(s["data"]["issues"][0]["reason"] == "degree_bound");
  // N is the origin alone, so cleanness holds and nothing fails.
  CHECK(r.stages[1].verdict == Verdict::Pass);
  CHECK(exit_code(r) == 2);
  CHECK(run_pipeline(p, Command::Check, {2, std::nullopt, std::nullopt}).stages[0].verdict == Verdict::Pass);

  Report mixed = r;
  mixed.stages.push_back(b.stages[0]);
  CHECK(exit_code(mixed) == 1);
}

TEST_CASE("reports round-trip and are deterministic") {
  for (const char* name : {"example1", "example2", "heisenberg", "axis"}) {
    const ProblemSpec p = load_problem(problems + "/" + name + ".json");
    const Report r = run_pipeline(p, Command::Report, {});
    CHECK_MESSAGE(exit_code(r) == 0, name);
    CHECK(emit_json(r) == emit_json(run_pipeline(p, Command::Report, {})));
    const auto c = stage(r, "coordinates");
    const Chart slots(c["data"]["variables"].get<std::vector<std::string>>());
    const WeightedChart w = weighted_coordinates(p.filtration, p.submanifold, p.chart);
    for (std::size_t k = 0; k < w.n; ++k) {
      CHECK(parse_ratfunc(c["data"]["coordinates"][k].get<std::string>(), p.chart) == w.coordinates[k]);
      CHECK(parse_ratfunc(c["data"]["inverse"][k].get<std::string>(), slots) == w.inverse[k]);
    }
    for (const auto& rep : stage(r, "osculating")["data"]["representatives"])
      CHECK(parse_vf(rep.get<std::string>(), p.chart).dimension() == 3);
  }
  SUBCASE("seed changes the samples, not the verdict") {
    const ProblemSpec p = load_problem(problems + "/example1.json");
    const Report a = run_pipeline(p, Command::Jets, {std::nullopt, 10, 1});
    CHECK(stage(a, "jets")["data"]["samples"]["tested"] == 10);
    CHECK(stage(a, "jets")["data"]["samples"]["seed"] == 1);
    CHECK(stage(a, "jets")["data"]["samples"]["first_failure"].is_null());
  }
}

TEST_CASE("command-line exit codes") {
  CHECK(run_cli("coords " + problems + "/example1.json") == 0);
  CHECK(run_cli("check " + problems + "/broken.json") == 1);
  CHECK(run_cli("check " + problems + "/does-not-exist.json") == 3);
  CHECK(run_cli("frobnicate " + problems + "/example1.json") == 3);
  CHECK(run_cli("coords") == 3);

  const std::string out = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/lieweight_cli_test.json";
  CHECK(run_cli("weights " + problems + "/example2.json --quiet --json " + out) == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc["stages"].size() == 3);
  CHECK(doc["stages"][2]["data"]["weights"] == json({1, 2, 4}));
  std::remove(out.c_str());
}
