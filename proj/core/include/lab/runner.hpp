#pragma once

#include <iosfwd>
#include <string>

#include "lab/config.hpp"

namespace lab {

/// Number of worker threads: LAB_THREADS when set (>= 1), otherwise the
/// hardware concurrency.
int worker_thread_count();

/// Runs every requested check over the (model, weight, parameter) sweep and
/// writes report.csv / report.json, constants.csv, cz_families/*.json and
/// summary.txt under the config's output directory.
/// Returns 0 when every row passes, 1 otherwise. Invalid inputs throw
/// std::invalid_argument (the CLI maps those to exit code 2).
int run_experiment(const ExperimentConfig& config, std::ostream& log);

/// Prints element count, index range, |U_i| and theta tables and the
/// verified doubling constant.
void describe_model(const ModelSpec& spec, std::ostream& out);

}  // namespace lab
