// Command-line driver for config-file experiments on the mixed
// local-nonlocal operator.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixlap/experiment.hpp"

namespace {

struct RunArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
};

int run_kind(const std::string& kind, const RunArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) {
    std::cerr << "config error: cannot open " << args.config_path << "\n";
    return 2;
  }
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    std::cerr << "config error: invalid JSON in " << args.config_path << ": " << e.what()
              << "\n";
    return 2;
  }
  if (cfg.contains("experiment")) {
    if (!cfg.at("experiment").is_string() ||
        cfg.at("experiment").get<std::string>() != kind) {
      std::cerr << "config error: key \"experiment\" does not match subcommand \"" << kind
                << "\"\n";
      return 2;
    }
  } else {
    cfg["experiment"] = kind;
  }

  mixlap::ExperimentOutcome outcome = mixlap::run_experiment(cfg, args.out_dir, args.seed);
  if (!outcome.error.empty()) std::cerr << outcome.error << "\n";
  if (outcome.exit_code == 0)
    std::cout << "ok: " << kind << " -> " << args.out_dir << "/report.json\n";
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixlap: numerical laboratory for the operator -Laplace + (-Laplace)^s"};
  app.require_subcommand(1);

  RunArgs args;
  bool presets_as_json = false;

  auto add_run = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", args.config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--seed", args.seed, "seed for randomized pieces");
    return sub;
  };

  add_run("solve", "solve L u = f(u) with exterior-zero data");
  add_run("eigen", "first variational eigenvalue of the interior operator");
  add_run("scan", "eigenvalue scan over shrinking domains");
  add_run("symmetry", "solve and verify plane symmetry / monotonicity diagnostics");
  add_run("gibbons", "far-field problem on a truncated line or strip");
  CLI::App* presets = app.add_subcommand("presets", "list nonlinearity presets");
  presets->add_flag("--json", presets_as_json, "machine-readable output");

  CLI11_PARSE(app, argc, argv);

  std::string kind = app.get_subcommands().front()->get_name();
  if (kind == "presets") {
    if (presets_as_json)
      std::cout << mixlap::presets_json().dump(2) << "\n";
    else
      std::cout << mixlap::presets_text();
    return 0;
  }
  return run_kind(kind, args);
}
