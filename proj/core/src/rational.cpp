#include "lab/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace lab::rational {

bool counting_measure_required(const GroupModel& model) {
  if (!model.counting_measure())
    throw std::invalid_argument("rational mode: model must carry the counting measure");
  return true;
}

Rational average(const GroupModel& model, const RationalValues& v, const ElementSet& set) {
  counting_measure_required(model);
  if (set.empty()) throw std::invalid_argument("rational average: empty set");
  Rational num = 0;
  for (ElementId x : set) num += v[static_cast<size_t>(x)];
  return num / static_cast<long>(set.size());
}

Rational mass(const GroupModel& model, const RationalValues& v, const ElementSet& set) {
  counting_measure_required(model);
  Rational num = 0;
  for (ElementId x : set) num += v[static_cast<size_t>(x)];
  return num;
}

RationalValues maximal(const GroupModel& model, const RationalValues& f) {
  counting_measure_required(model);
  RationalValues best(static_cast<size_t>(model.size()), 0);
  for (const BaseSetKey& key : model.distinct_base_sets()) {
    const BaseSet b = model.base_set(key.center, key.index);
    const Rational a = average(model, f, b.points);
    for (ElementId x : b.points) {
      auto& v = best[static_cast<size_t>(x)];
      if (a > v) v = a;
    }
  }
  return best;
}

Rational ap2_constant(const GroupModel& model, const RationalValues& w) {
  counting_measure_required(model);
  RationalValues inv(w.size());
  for (size_t i = 0; i < w.size(); ++i) inv[i] = Rational(1) / w[i];
  Rational best = 0;
  for (const BaseSetKey& key : model.distinct_base_sets()) {
    const BaseSet b = model.base_set(key.center, key.index);
    const Rational t = average(model, w, b.points) * average(model, inv, b.points);
    if (t > best) best = t;
  }
  return best;
}

Rational a1_constant(const GroupModel& model, const RationalValues& w) {
  counting_measure_required(model);
  Rational best = 0;
  for (const BaseSetKey& key : model.distinct_base_sets()) {
    const BaseSet b = model.base_set(key.center, key.index);
    Rational wmin = w[static_cast<size_t>(b.points.front())];
    for (ElementId x : b.points) wmin = std::min(wmin, w[static_cast<size_t>(x)]);
    const Rational t = average(model, w, b.points) / wmin;
    if (t > best) best = t;
  }
  return best;
}

Rational ainfty_fw(const GroupModel& model, const RationalValues& w) {
  counting_measure_required(model);
  Rational best = 0;
  for (const BaseSetKey& key : model.distinct_base_sets()) {
    const BaseSet u = model.base_set(key.center, key.index);
    RationalValues wu(static_cast<size_t>(model.size()), 0);
    for (ElementId x : u.points) wu[static_cast<size_t>(x)] = w[static_cast<size_t>(x)];
    const RationalValues m = maximal(model, wu);
    Rational num = 0, den = 0;
    for (ElementId x : u.points) {
      num += m[static_cast<size_t>(x)];
      den += w[static_cast<size_t>(x)];
    }
    const Rational t = num / den;
    if (t > best) best = t;
  }
  return best;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

double relative_error(double computed, const Rational& exact) {
  const double e = to_double(exact);
  return std::abs(computed - e) / std::max(std::abs(e), 1.0);
}

}  // namespace lab::rational
