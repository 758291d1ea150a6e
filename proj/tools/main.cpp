#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "duallim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"duallim: limits of dual plane curves for one-parameter degenerations"};
  app.require_subcommand(1);

  duallim::RunConfig cfg;
  std::string mode;
  const std::vector<std::string> names = {"parse",  "polygon", "branches",
                                          "disc-limit", "vertex", "zd",
                                          "type",   "limit-dual", "check"};
  for (const std::string& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input,-i,input", cfg.input_path, "family file or directory")->required();
    sub->add_option("--mode", mode, "exact|numeric (overrides the file's mode)");
    auto* prec = sub->add_option("--precision", cfg.precision_bits,
                                 "numeric precision in bits (>= 64)");
    sub->add_option("--trunc", [&cfg](const std::vector<std::string>& vals) {
      cfg.trunc_override = std::stoi(vals[0]);
      return true;
    }, "override the truncation order");
    sub->add_flag("--json", cfg.json, "structured JSON output");
    sub->add_option("--trials", cfg.trials, "perturbation trials for verification");
    sub->add_option("--seed", cfg.seed, "seed for randomized verification");
    if (name == "disc-limit") sub->add_flag("--check", cfg.check, "run the Theorem 2.7 comparison");
    if (name == "type")
      sub->add_flag("--verify-truncation", cfg.verify_truncation,
                    "run the truncation sufficiency check");
    sub->callback([&cfg, name, &mode, prec]() {
      cfg.subcommand = name;
      if (!mode.empty()) cfg.mode = mode;
      cfg.precision_given = prec->count() > 0;
    });
  }

  CLI11_PARSE(app, argc, argv);
  return duallim::run(cfg, std::cout);
}
