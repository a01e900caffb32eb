// lieweight: weighted coordinates and osculating algebras for singular Lie
// filtrations given in a JSON problem file.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "lieweight/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Weightings from singular Lie filtrations"};
  std::string command, file, json_path;
  std::optional<int> degree_bound;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  bool quiet = false;

  app.add_option("command", command, "check | weights | coords | jets | osculate | report")->required();
  app.add_option("file", file, "problem file (JSON)")->required();
  app.add_option("--json", json_path, "write the JSON report to this path ('-' for stdout)");
  app.add_option("--degree-bound", degree_bound, "coefficient degree bound for module solves")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--samples", samples, "flow-out samples for the jets stage");
  app.add_option("--seed", seed, "seed for the flow-out samples");
  app.add_flag("--quiet", quiet, "suppress the text summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  const auto cmd = lieweight::parse_command(command);
  if (!cmd) {
    std::cerr << "unknown command '" << command << "'\n";
    return 3;
  }
  try {
    const lieweight::ProblemSpec spec = lieweight::load_problem(file);
    const lieweight::Report rep = lieweight::run_pipeline(spec, *cmd, {degree_bound, samples, seed});
    if (!json_path.empty()) {
      const std::string doc = lieweight::emit_json(rep);
      if (json_path == "-") {
        std::cout << doc;
      } else {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) {
          std::cerr << json_path << ": cannot write report\n";
          return 3;
        }
        out << doc;
      }
    }
    if (!quiet && json_path != "-") std::cout << lieweight::emit_text(rep);
    return lieweight::exit_code(rep);
  } catch (const lieweight::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  }
}
