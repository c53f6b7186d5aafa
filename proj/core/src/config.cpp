#include "lab/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "lab/weight.hpp"

namespace lab {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("config: " + what); }

ModelSpec model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) bad("model must be an object with a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  ModelSpec m;
  if (type == "padic") {
    PadicSpec s;
    s.p = j.at("p").get<int>();
    s.level = j.at("L").get<int>();
    if (j.contains("measure") && !j.at("measure").is_null()) {
      const auto& meas = j.at("measure");
      if (meas.is_string()) {
        if (meas.get<std::string>() != "haar") bad("padic measure must be \"haar\" or a mass array");
      } else if (meas.is_array()) {
        s.masses = meas.get<std::vector<double>>();
      } else {
        bad("padic measure must be \"haar\" or a mass array");
      }
    }
    m.spec = s;
  } else if (type == "window") {
    WindowSpec s;
    s.half_width = j.at("N").get<int>();
    m.spec = s;
  } else {
    bad("unknown model type \"" + type + "\"");
  }
  return m;
}

WeightSpec weight_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) bad("weight spec must be an object with a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  if (type == "power") {
    PowerWeightSpec s;
    s.a = j.at("a").get<double>();
    return s;
  }
  if (type == "random") {
    RandomWeightSpec s;
    s.log_min = j.at("log_min").get<double>();
    s.log_max = j.at("log_max").get<double>();
    s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("count")) s.count = j.at("count").get<int>();
    return s;
  }
  if (type == "file") {
    FileWeightSpec s;
    s.path = j.at("path").get<std::string>();
    return s;
  }
  bad("unknown weight type \"" + type + "\"");
}

}  // namespace

GroupModel ModelSpec::build() const {
  if (const auto* p = std::get_if<PadicSpec>(&spec))
    return GroupModel::padic(p->p, p->level, p->masses);
  const auto& w = std::get<WindowSpec>(spec);
  return GroupModel::integer_window(w.half_width);
}

std::string ModelSpec::to_string() const {
  std::ostringstream os;
  if (const auto* p = std::get_if<PadicSpec>(&spec)) {
    os << "padic{" << p->p << ";" << p->level << ";" << (p->masses.empty() ? "haar" : "custom")
       << "}";
  } else {
    os << "window{" << std::get<WindowSpec>(spec).half_width << "}";
  }
  return os.str();
}

ModelSpec ModelSpec::parse(const std::string& text) {
  const auto open = text.find('{');
  const auto close = text.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open)
    bad("model spec must look like padic{p,L[,haar]} or window{N}");
  const std::string head = text.substr(0, open);
  std::vector<std::string> args;
  {
    std::string inner = text.substr(open + 1, close - open - 1);
    std::istringstream is(inner);
    std::string tok;
    while (std::getline(is, tok, ',')) args.push_back(tok);
  }
  ModelSpec m;
  if (head == "padic") {
    if (args.size() < 2 || args.size() > 3) bad("padic spec takes p,L[,haar]");
    if (args.size() == 3 && args[2] != "haar")
      bad("custom p-adic measures are only available through the config file");
    PadicSpec s;
    s.p = std::stoi(args[0]);
    s.level = std::stoi(args[1]);
    m.spec = s;
  } else if (head == "window") {
    if (args.size() != 1) bad("window spec takes a single half-width");
    WindowSpec s;
    s.half_width = std::stoi(args[0]);
    m.spec = s;
  } else {
    bad("unknown model \"" + head + "\"");
  }
  return m;
}

std::string check_name(CheckKind c) {
  switch (c) {
    case CheckKind::RHI: return "RHI";
    case CheckKind::OPEN: return "OPEN";
    case CheckKind::WEAK: return "WEAK";
    case CheckKind::BUCKLEY: return "BUCKLEY";
    case CheckKind::CZ: return "CZ";
    case CheckKind::LOCALIZATION: return "LOCALIZATION";
    case CheckKind::A1: return "A1";
    case CheckKind::DUALITY: return "DUALITY";
  }
  return "?";
}

std::optional<CheckKind> check_from_name(const std::string& name) {
  static const std::pair<const char*, CheckKind> table[] = {
      {"RHI", CheckKind::RHI},
      {"OPEN", CheckKind::OPEN},
      {"WEAK", CheckKind::WEAK},
      {"BUCKLEY", CheckKind::BUCKLEY},
      {"CZ", CheckKind::CZ},
      {"LOCALIZATION", CheckKind::LOCALIZATION},
      {"A1", CheckKind::A1},
      {"DUALITY", CheckKind::DUALITY},
  };
  for (const auto& [n, k] : table)
    if (name == n) return k;
  return std::nullopt;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    bad(std::string("JSON parse error: ") + e.what());
  }

  ExperimentConfig cfg;
  if (!j.contains("model")) bad("missing \"model\"");
  cfg.model = model_from_json(j.at("model"));

  if (!j.contains("weights") || !j.at("weights").is_array() || j.at("weights").empty())
    bad("\"weights\" must be a nonempty array");
  for (const auto& wj : j.at("weights")) cfg.weights.push_back(weight_from_json(wj));

  if (j.contains("p_grid")) cfg.p_grid = j.at("p_grid").get<std::vector<double>>();
  if (j.contains("q_grid")) cfg.q_grid = j.at("q_grid").get<std::vector<double>>();
  if (j.contains("lambda_rho")) cfg.lambda_rho = j.at("lambda_rho").get<double>();

  if (!j.contains("checks") || !j.at("checks").is_array()) bad("missing \"checks\" array");
  for (const auto& cj : j.at("checks")) {
    const auto kind = check_from_name(cj.get<std::string>());
    if (!kind) bad("unknown check \"" + cj.get<std::string>() + "\"");
    if (std::find(cfg.checks.begin(), cfg.checks.end(), *kind) == cfg.checks.end())
      cfg.checks.push_back(*kind);
  }

  if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("format")) {
    const std::string f = j.at("format").get<std::string>();
    if (f == "csv")
      cfg.format = ReportFormat::Csv;
    else if (f == "json")
      cfg.format = ReportFormat::Json;
    else if (f == "both")
      cfg.format = ReportFormat::Both;
    else
      bad("format must be csv, json or both");
  }
  if (j.contains("precision_mode")) {
    const std::string m = j.at("precision_mode").get<std::string>();
    if (m == "float")
      cfg.precision = PrecisionMode::Float;
    else if (m == "rational")
      cfg.precision = PrecisionMode::Rational;
    else
      bad("precision_mode must be float or rational");
  }
  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  if (checks.empty()) bad("checks list must not be empty");
  if (weights.empty()) bad("weights list must not be empty");
  if (p_grid.empty()) bad("p_grid must not be empty");
  for (double p : p_grid)
    if (!(p > 1)) bad("p_grid entries must exceed 1");
  const bool needs_q =
      std::find(checks.begin(), checks.end(), CheckKind::WEAK) != checks.end();
  if (needs_q) {
    if (q_grid.empty()) bad("q_grid must not be empty when WEAK is requested");
    for (double q : q_grid)
      if (!(q >= 1)) bad("q_grid entries must be >= 1");
  }
  if (!(lambda_rho > 1)) bad("lambda_rho must exceed 1");
  for (const WeightSpec& ws : weights) {
    if (const auto* r = std::get_if<RandomWeightSpec>(&ws)) {
      if (r->log_min > r->log_max) bad("random weight: log_min > log_max");
      if (r->count < 1) bad("random weight: count must be >= 1");
    }
  }
}

}  // namespace lab
