#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lab/group.hpp"

namespace lab {

/// Strictly positive, finite function on the group elements.
class Weight {
 public:
  Weight() = default;
  /// Validates positivity and finiteness.
  Weight(const GroupModel& model, std::vector<double> values);

  double operator()(ElementId x) const { return values_[static_cast<size_t>(x)]; }
  const std::vector<double>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  std::vector<double> values_;
};

/// Nonnegative, finite function on the group elements (test functions f).
class GroupFunction {
 public:
  GroupFunction() = default;
  GroupFunction(const GroupModel& model, std::vector<double> values);
  static GroupFunction zero(const GroupModel& model);
  static GroupFunction indicator(const GroupModel& model, const ElementSet& support);

  double operator()(ElementId x) const { return values_[static_cast<size_t>(x)]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  std::vector<double> values_;
};

/// Average of f over V with respect to the point measure:
/// (sum_{x in V} f(x) mu(x)) / mu(V). Throws on empty V.
double average(const GroupModel& model, const std::vector<double>& values, const ElementSet& v);

/// w(V) = sum_{x in V} w(x) mu(x); zero on the empty set.
double weight_mass(const GroupModel& model, const Weight& w, const ElementSet& v);

/// Dual weight sigma = w^(1 - p') with p' = p/(p-1); requires p > 1.
Weight dual_weight(const GroupModel& model, const Weight& w, double p);

/// Canonical test family. p-adic models: w(x) = p^(-a v(x)) with v the
/// valuation (v(0) = L). Window models: w(k) = (1 + |k|)^a on the signed
/// representative. |a| is capped so values stay within the 1e12 range.
Weight power_weight(const GroupModel& model, double a);

struct LogUniformSpec {
  double log_min = 0;
  double log_max = 0;
};

/// i.i.d. values exp(U) with U uniform on [log_min, log_max], drawn from
/// splitmix64 seeded with `seed`. Same seed, same weight.
Weight random_weight(const GroupModel& model, const LogUniformSpec& spec, std::uint64_t seed);

/// Seeded nonnegative test function with i.i.d. values uniform in [0, 1).
GroupFunction random_function(const GroupModel& model, std::uint64_t seed);

// Serialization: CSV rows "element_id,value" with a header, or a bare JSON
// array of values in element order.
void write_weight_csv(const std::vector<double>& values, const std::string& path);
std::vector<double> read_values_csv(const std::string& path);
void write_weight_json(const std::vector<double>& values, const std::string& path);
std::vector<double> read_values_json(const std::string& path);

/// 17-significant-digit formatting (round-trip safe for IEEE doubles).
std::string format_double(double x);

/// Rejects value sets whose max/min ratio exceeds 1e12. Applied by the
/// weight generators and by file ingestion, not by derived weights.
void check_weight_range(const std::vector<double>& values);

}  // namespace lab
