#include <CLI11.hpp>

#include <iostream>

#include "skewcalc/commands.hpp"

int main(int argc, char** argv) {
  using namespace skewcalc;
  CLI::App app{"skewcalc: exact arithmetic and invariants of iterated Ore extensions"};
  SessionConfig cfg;
  std::vector<std::string> args;
  std::string format = "text";

  std::string commands;
  for (const auto& c : command_names()) commands += (commands.empty() ? "" : ", ") + c;
  app.add_option("command", cfg.command, "one of: " + commands)->required();
  app.add_option("args", args, "input file, then operands (factors for mul)");
  app.add_option("--max-degree", cfg.max_degree, "degree bound for center computations");
  app.add_option("--N", cfg.growth_N, "largest n in the growth table");
  app.add_option("--degree-cap", cfg.degree_cap, "degree cap for closures and isomorphism checks");
  app.add_option("--max-rounds", cfg.max_rounds, "round limit for divisor closures");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed, "seed for randomized choices");
  app.add_option("--assert", cfg.asserts, "attach a flag with provenance \"user\" (repeatable)");
  app.add_option("--from", cfg.from, "element of F for divisor and controlling (repeatable)");
  app.add_option("--name", cfg.name, "stanza to use instead of the last one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code_for(ErrorCode::Usage);
  }
  cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
  if (cfg.command != "registry" && !args.empty()) {
    cfg.inputs.push_back(args[0]);
    cfg.operands.assign(args.begin() + 1, args.end());
  } else {
    cfg.inputs = args;
  }

  const RunResult r = run(cfg);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
