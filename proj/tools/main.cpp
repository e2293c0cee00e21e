#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace torus::cli;

  CLI::App app{"Spectral solver and well-posedness classifier for periodic Cauchy problems"};
  app.require_subcommand(1);

  Options options;
  std::string out_dir;
  int trials = 0;

  auto add_common = [&](CLI::App* sub, const char* input_help) {
    sub->add_option("input", options.input, input_help)->required();
    sub->add_option("--out", out_dir, "Directory for output artifacts");
    sub->add_option("--seed", options.seed, "Seed for randomized suites")->capture_default_str();
    return sub;
  };

  auto* classify = add_common(app.add_subcommand("classify", "Print the well-posedness verdict"), "Problem file");
  auto* solve = add_common(app.add_subcommand("solve", "Write field CSVs and a manifest"), "Problem file");
  auto* witness = add_common(app.add_subcommand("witness", "Run the probe block"), "Problem file");
  auto* oracle = add_common(app.add_subcommand("oracle-check", "Compare closed form against RK4"), "Problem file");
  oracle->add_option("--trials", trials, "Override the trial count")->check(CLI::PositiveNumber);
  auto* fit = add_common(app.add_subcommand("fit-decay", "Fit Gevrey decay to a field CSV"), "Field CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kSchema;
  }

  if (!out_dir.empty()) options.out = out_dir;
  if (trials > 0) options.trials = trials;

  if (*classify) return run_classify(options, std::cout, std::cerr);
  if (*solve) return run_solve(options, std::cout, std::cerr);
  if (*witness) return run_witness(options, std::cout, std::cerr);
  if (*oracle) return run_oracle_check(options, std::cout, std::cerr);
  if (*fit) return run_fit_decay(options, std::cout, std::cerr);
  return kSchema;
}
