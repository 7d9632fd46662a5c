#include <iostream>

#include <CLI11.hpp>

#include "robba/version.hpp"
#include "robba_cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"(phi, nabla)-modules, Frobenius cohomology and monodromy verdicts"};
  app.set_version_flag("--version", std::string(robba::kVersion));
  app.require_subcommand(1);

  robba::cli::JobRequest job;
  int window = 0;
  int precision = 0;
  auto common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input) sub->add_option("input", job.input_path, "input JSON file, - for stdin")->required();
    sub->add_option("--window", window, "exponent window for series computations")->check(CLI::PositiveNumber);
    sub->add_option("--precision", precision, "required p-adic precision")->check(CLI::PositiveNumber);
    sub->add_option("--seed", job.seed, "seed echoed in the report");
    sub->add_option("--format", job.format, "output format")->check(CLI::IsMember({"json"}));
  };

  for (const char* name : {"validate", "cohomology", "residue", "nonsingular"}) {
    common(app.add_subcommand(name), true);
  }
  auto* verdict = app.add_subcommand("verdict", "good reduction verdict from Lie data or H1");
  common(verdict, true);
  verdict->add_option("--level", job.level, "truncation level when the input is H1")->check(CLI::Range(3, 4));
  auto* ranks = app.add_subcommand("ranks", "ranks of the universal unipotent objects");
  common(ranks, false);
  ranks->add_option("--g", job.g, "genus")->check(CLI::PositiveNumber);
  ranks->add_option("--level", job.level, "number of levels")->check(CLI::Range(1, 4));
  ranks->add_option("--oracle", job.oracle, "Euler characteristic oracle")->check(CLI::IsMember({"default", "hall"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : robba::cli::kInputError;
  }
  job.command = app.get_subcommands().front()->get_name();
  if (window > 0) job.window = window;
  if (precision > 0) job.precision = precision;

  const auto result = robba::cli::run(job);
  std::cout << result.report;
  return result.exit_code;
}
