#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cwl/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace cwl::cli;
  CLI::App app{"Random walks, entropy and norms on homogeneous spaces of groups"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path, out_dir = "cwl-out";
  long long seed = -1, budget = -1, threads = -1;
  bool exact = false, as_float = false, timing = false, print_config = false;
  app.add_option("--config", config_path, "JSON experiment config");
  app.add_option("--out", out_dir, "output directory for CSV and JSON reports");
  app.add_option("--threads", threads, "worker cap");
  app.add_option("--seed", seed, "RNG seed");
  auto* ex = app.add_flag("--exact", exact, "exact rational arithmetic");
  auto* fl = app.add_flag("--float", as_float, "double arithmetic");
  ex->excludes(fl);
  app.add_option("--budget-elems", budget, "maximum stored elements per enumeration");
  app.add_flag("--timing", timing, "record wall-clock times in reports");
  app.add_flag("--print-config", print_config, "print the effective config and exit");

  std::vector<std::string> positional;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    if (name == "verify") sub->add_option("example_id", positional, "named example")->required();
    if (name == "classify-free") sub->add_option("words", positional, "subgroup generators (overrides config)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw cwl::ConfigError("cannot open config '" + config_path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      cfg = parse_config(buf.str());
    }
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (budget >= 0) cfg.budget_elems = static_cast<std::size_t>(budget);
    if (threads >= 0) cfg.threads = static_cast<unsigned>(threads);
    if (exact) cfg.exact = true;
    if (as_float) cfg.exact = false;
  } catch (const cwl::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  if (print_config) {
    std::cout << emit_config(cfg);
    return kExitOk;
  }

  if (app.get_subcommands().empty()) {
    std::cerr << "a command is required; run with --help\n";
    return kExitConfig;
  }
  RunOptions opt;
  opt.command = app.get_subcommands().front()->get_name();
  opt.args = positional;
  opt.timing = timing;
  opt.out_dir = out_dir;
  return run_and_write(cfg, opt, std::cout, std::cerr);
}
