#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lieweight/chart.hpp"
#include "lieweight/filtration.hpp"
#include "lieweight/submanifold.hpp"

namespace lieweight {

/// Malformed or invalid problem file; maps to exit code 3.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct ProblemSpec {
  Chart chart;
  int order = 0;
  Filtration filtration;
  Submanifold submanifold;
  std::optional<int> degree_bound;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
};

/// {"variables": [...], "order": r, "filtration": {"-1": [...], ..., "-r":
/// [...] | "full"}, "submanifold": {"tangent": [...], "base_point": [...]},
/// "degree_bound"?, "seed"?, "samples"?}. Unknown keys are rejected.
ProblemSpec parse_problem(const nlohmann::json& doc);
/// Reads and parses a file; every failure is an InputError naming the path.
ProblemSpec load_problem(const std::string& path);

enum class Command { Check, Weights, Coords, Jets, Osculate, Report };

std::optional<Command> parse_command(const std::string& name);
/// Stage names the command runs, in order.
std::vector<std::string> stages_for(Command c);

/// Flags override the values in the problem file.
struct RunOptions {
  std::optional<int> degree_bound;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
};

struct StageResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
};

struct Report {
  std::vector<StageResult> stages;
};

/// Runs the stages of a command in order; the pipeline stops after the first
/// failing stage.
Report run_pipeline(const ProblemSpec& p, Command c, const RunOptions& opts);

/// 0 when every stage passed, 1 on any failure, 2 when inconclusive only.
int exit_code(const Report& r);

nlohmann::ordered_json to_json(const Report& r);
/// Indented JSON with a trailing newline; byte-stable for fixed input.
std::string emit_json(const Report& r);
/// One aligned line per stage.
std::string emit_text(const Report& r);

}  // namespace lieweight
