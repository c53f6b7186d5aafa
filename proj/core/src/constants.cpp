#include "lab/constants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lab {

namespace {

template <typename TermFn>
ConstantValue max_over_base_sets(const GroupModel& model, TermFn&& term) {
  ConstantValue best;
  bool first = true;
  for (const BaseSetKey& key : model.distinct_base_sets()) {
    const double t = term(key);
    if (first || t > best.value) {
      best.value = t;
      best.witness = key;
      first = false;
    }
  }
  return best;
}

}  // namespace

ConstantValue ap_constant(const GroupModel& model, const Weight& w, double p) {
  if (!(p >= 1)) throw std::invalid_argument("ap_constant: requires p >= 1");
  SetAverager aw(model, std::span<const double>(w.values()));
  if (p == 1.0) {
    return max_over_base_sets(model, [&](const BaseSetKey& key) {
      double wmin = std::numeric_limits<double>::infinity();
      for (ElementId x : model.base_set(key.center, key.index).points) wmin = std::min(wmin, w(x));
      return aw.average(key) / wmin;
    });
  }
  Weight sigma = dual_weight(model, w, p);
  SetAverager as(model, std::span<const double>(sigma.values()));
  return max_over_base_sets(model, [&](const BaseSetKey& key) {
    return aw.average(key) * std::pow(as.average(key), p - 1.0);
  });
}

ConstantValue ainfty_exp(const GroupModel& model, const Weight& w) {
  SetAverager aw(model, std::span<const double>(w.values()));
  std::vector<double> neglog(w.values().size());
  for (size_t i = 0; i < neglog.size(); ++i) neglog[i] = -std::log(w.values()[i]);
  SetAverager al(model, std::span<const double>(neglog));
  return max_over_base_sets(model, [&](const BaseSetKey& key) {
    return aw.average(key) * std::exp(al.average(key));
  });
}

ConstantValue ainfty_fw(const GroupModel& model, const Weight& w) {
  return max_over_base_sets(model, [&](const BaseSetKey& key) {
    const BaseSet u = model.base_set(key.center, key.index);
    std::vector<double> wu(static_cast<size_t>(model.size()), 0.0);
    for (ElementId x : u.points) wu[static_cast<size_t>(x)] = w(x);
    GroupFunction m = maximal(model, GroupFunction(model, std::move(wu)));
    double num = 0, den = 0;
    for (ElementId x : u.points) {
      num += m(x) * model.mass(x);
      den += w(x) * model.mass(x);
    }
    return num / den;
  });
}

double rhi_exponent(double doubling, double fw) {
  if (!(doubling >= 1) || !(fw >= 1))
    throw std::invalid_argument("rhi_exponent: requires D >= 1 and fw >= 1");
  return 1.0 + 1.0 / (4.0 * std::pow(doubling, 10.0) * fw - 1.0);
}

double open_epsilon(double p, double doubling, double fw_sigma) {
  if (!(p > 1)) throw std::invalid_argument("open_epsilon: requires p > 1");
  return (p - 1.0) / (4.0 * std::pow(doubling, 10.0) * fw_sigma);
}

double buckley_explicit_constant(double p, double doubling) {
  if (!(p > 1)) throw std::invalid_argument("buckley_explicit_constant: requires p > 1");
  const double inner =
      (p / (p - 1.0)) * std::pow(2.0, 2.0 * p + 1.0) * std::pow(doubling, 6.0 * p + 8.0);
  return std::pow(inner, 1.0 / p);
}

}  // namespace lab
