// lab: finite-group weight laboratory.
//
//   lab run <config.json>   sweep the configured checks, write reports
//   lab describe <model>    print the family/theta/doubling tables
//   lab selftest            run the full acceptance suite
//
// Exit codes: 0 all checks pass, 1 a check reported a failure, 2 bad input.
// LAB_THREADS caps the worker pool.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lab/config.hpp"
#include "lab/runner.hpp"
#include "lab/selftest.hpp"

int main(int argc, char** argv) {
  CLI::App app{"finite-group maximal functions, Muckenhoupt constants and theorem certifiers"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run the checks described by a JSON config");
  run->add_option("config", config_path, "path to the experiment config")->required();

  std::string model_text;
  CLI::App* describe = app.add_subcommand("describe", "print a model summary");
  describe->add_option("model", model_text, "model spec, e.g. padic{3,2} or window{8}")->required();

  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      const lab::ExperimentConfig cfg = lab::ExperimentConfig::load(config_path);
      return lab::run_experiment(cfg, std::cout);
    }
    if (describe->parsed()) {
      lab::describe_model(lab::ModelSpec::parse(model_text), std::cout);
      return 0;
    }
    if (selftest->parsed()) return lab::selftest::run_and_report(std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
