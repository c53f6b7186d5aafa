#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lab/group.hpp"

namespace lab {

struct PadicSpec {
  int p = 3;
  int level = 2;
  std::vector<double> masses;  // empty = Haar
};

struct WindowSpec {
  int half_width = 8;
};

struct ModelSpec {
  std::variant<PadicSpec, WindowSpec> spec;

  GroupModel build() const;
  std::string to_string() const;

  /// Parses the CLI shorthand "padic{3,2}", "padic{3,2,haar}" or "window{8}".
  static ModelSpec parse(const std::string& text);
};

struct PowerWeightSpec {
  double a = 1;
};
struct RandomWeightSpec {
  double log_min = -3;
  double log_max = 3;
  std::uint64_t seed = 1;
  int count = 1;
};
struct FileWeightSpec {
  std::string path;
};
using WeightSpec = std::variant<PowerWeightSpec, RandomWeightSpec, FileWeightSpec>;

enum class CheckKind { RHI, OPEN, WEAK, BUCKLEY, CZ, LOCALIZATION, A1, DUALITY };
std::string check_name(CheckKind c);
std::optional<CheckKind> check_from_name(const std::string& name);

enum class ReportFormat { Csv, Json, Both };
enum class PrecisionMode { Float, Rational };

struct ExperimentConfig {
  ModelSpec model;
  std::vector<WeightSpec> weights;
  std::vector<double> p_grid;      // exponents > 1
  std::vector<double> q_grid;      // weak-type exponents >= 1
  double lambda_rho = 1.5;         // geometric lambda grid ratio
  std::vector<CheckKind> checks;   // deduplicated, in declaration order
  std::string output_dir = "out";
  ReportFormat format = ReportFormat::Both;
  PrecisionMode precision = PrecisionMode::Float;

  /// Loads and validates; throws std::invalid_argument with a message
  /// suitable for the CLI (exit code 2) on any schema violation.
  static ExperimentConfig load(const std::string& path);
  void validate() const;
};

}  // namespace lab
