#include "lab/weight.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lab/prng.hpp"
#include "json.hpp"

namespace lab {

namespace {
constexpr double kDynamicRange = 1e12;
}

Weight::Weight(const GroupModel& model, std::vector<double> values) {
  if (static_cast<int>(values.size()) != model.size())
    throw std::invalid_argument("Weight: value count does not match the group size");
  for (double v : values)
    if (!(v > 0) || !std::isfinite(v))
      throw std::invalid_argument("Weight: values must be strictly positive and finite");
  values_ = std::move(values);
}

// Generators and ingestion enforce the 1e12 range so exp/log/pow stay
// well-conditioned; derived weights (duals) may exceed it.
void check_weight_range(const std::vector<double>& values) {
  double lo = values[0], hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi / lo > kDynamicRange)
    throw std::invalid_argument("weight dynamic range exceeds the supported 1e12");
}

GroupFunction::GroupFunction(const GroupModel& model, std::vector<double> values) {
  if (static_cast<int>(values.size()) != model.size())
    throw std::invalid_argument("GroupFunction: value count does not match the group size");
  for (double v : values)
    if (!(v >= 0) || !std::isfinite(v))
      throw std::invalid_argument("GroupFunction: values must be nonnegative and finite");
  values_ = std::move(values);
}

GroupFunction GroupFunction::zero(const GroupModel& model) {
  return GroupFunction(model, std::vector<double>(static_cast<size_t>(model.size()), 0.0));
}

GroupFunction GroupFunction::indicator(const GroupModel& model, const ElementSet& support) {
  std::vector<double> v(static_cast<size_t>(model.size()), 0.0);
  for (ElementId x : support) v[static_cast<size_t>(x)] = 1.0;
  return GroupFunction(model, std::move(v));
}

double average(const GroupModel& model, const std::vector<double>& values, const ElementSet& v) {
  if (v.empty()) throw std::invalid_argument("average: empty set");
  double num = 0, den = 0;
  for (ElementId x : v) {
    num += values[static_cast<size_t>(x)] * model.mass(x);
    den += model.mass(x);
  }
  return num / den;
}

double weight_mass(const GroupModel& model, const Weight& w, const ElementSet& v) {
  double s = 0;
  for (ElementId x : v) s += w(x) * model.mass(x);
  return s;
}

Weight dual_weight(const GroupModel& model, const Weight& w, double p) {
  if (!(p > 1)) throw std::invalid_argument("dual_weight: requires p > 1");
  const double pprime = p / (p - 1.0);
  std::vector<double> v(w.values().size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = std::pow(w.values()[i], 1.0 - pprime);
  return Weight(model, std::move(v));
}

Weight power_weight(const GroupModel& model, double a) {
  std::vector<double> v(static_cast<size_t>(model.size()));
  if (model.prime() != 0) {
    const double amax = 12.0 * std::log(10.0) / (model.level() * std::log(model.prime()));
    if (std::abs(a) > amax)
      throw std::invalid_argument("power_weight: exponent exceeds the dynamic-range guard");
    for (int x = 0; x < model.size(); ++x)
      v[static_cast<size_t>(x)] =
          std::pow(static_cast<double>(model.prime()), -a * model.valuation(static_cast<ElementId>(x)));
    check_weight_range(v);
  } else if (model.window_half_width() != 0) {
    const double reach = 1.0 + model.size() / 2.0;
    const double amax = 12.0 * std::log(10.0) / std::log(reach);
    if (std::abs(a) > amax)
      throw std::invalid_argument("power_weight: exponent exceeds the dynamic-range guard");
    for (int x = 0; x < model.size(); ++x) {
      const long k = model.signed_value(static_cast<ElementId>(x));
      v[static_cast<size_t>(x)] = std::pow(1.0 + std::abs(static_cast<double>(k)), a);
    }
    check_weight_range(v);
  } else {
    throw std::invalid_argument("power_weight: model has no canonical power family");
  }
  return Weight(model, std::move(v));
}

Weight random_weight(const GroupModel& model, const LogUniformSpec& spec, std::uint64_t seed) {
  if (spec.log_min > spec.log_max)
    throw std::invalid_argument("random_weight: log_min > log_max");
  SplitMix64 rng(seed);
  std::vector<double> v(static_cast<size_t>(model.size()));
  for (auto& x : v) x = std::exp(rng.next_in(spec.log_min, spec.log_max));
  check_weight_range(v);
  return Weight(model, std::move(v));
}

GroupFunction random_function(const GroupModel& model, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> v(static_cast<size_t>(model.size()));
  for (auto& x : v) x = rng.next_unit();
  return GroupFunction(model, std::move(v));
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_weight_csv(const std::vector<double>& values, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "element_id,value\n";
  for (size_t i = 0; i < values.size(); ++i) out << i << "," << format_double(values[i]) << "\n";
}

std::vector<double> read_values_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  std::vector<std::pair<long, double>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("element_id", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("malformed CSV row: " + line);
    rows.emplace_back(std::stol(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  std::sort(rows.begin(), rows.end());
  std::vector<double> values(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != static_cast<long>(i))
      throw std::runtime_error("CSV element ids are not 0..n-1: " + path);
    values[i] = rows[i].second;
  }
  return values;
}

void write_weight_json(const std::vector<double>& values, const std::string& path) {
  nlohmann::json j = values;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump() << "\n";
}

std::vector<double> read_values_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  in >> j;
  return j.get<std::vector<double>>();
}

}  // namespace lab
