#pragma once

#include <span>
#include <vector>

#include "lab/group.hpp"
#include "lab/weight.hpp"

namespace lab {

/// Exact averages of a fixed pointwise array over base sets, with O(1)
/// per-set lookups after an O(n * #indices) precompute. Used by every
/// enumeration that ranges over all distinct base sets.
class SetAverager {
 public:
  SetAverager(const GroupModel& model, std::span<const double> values);

  /// Sum of value*mu over center + U_index.
  double sum(int index, ElementId center) const {
    return sums_[static_cast<size_t>(index)][static_cast<size_t>(center)];
  }
  /// mu(center + U_index).
  double mass(int index, ElementId center) const {
    return masses_[static_cast<size_t>(index)][static_cast<size_t>(center)];
  }
  double average(int index, ElementId center) const { return sum(index, center) / mass(index, center); }
  double average(const BaseSetKey& key) const { return average(key.index, key.center); }

 private:
  std::vector<std::vector<double>> sums_;    // per index, per center
  std::vector<std::vector<double>> masses_;  // per index, per center
};

/// Hardy-Littlewood maximal function over all base sets:
/// Mf(x) = max over V containing x of the average of f over V.
GroupFunction maximal(const GroupModel& model, const GroupFunction& f);

struct PointWitness {
  double value = 0;
  BaseSetKey set;  // attaining set, smallest (index, center) among ties
};

/// As `maximal`, with the attaining base set recorded per point under the
/// global tie-break rule. Enumerates distinct sets directly, so it also
/// serves as the slow reference path for the structure-aware maximal.
std::vector<PointWitness> maximal_with_witness(const GroupModel& model, const GroupFunction& f);

/// Truncated maximal operator: averages over base sets of index <= K only.
GroupFunction truncated_maximal(const GroupModel& model, const GroupFunction& f, int K);

/// Local maximal function of w relative to the base set U: for y in U-hat the
/// max average of w over sets of the local base B_U containing y; zero
/// elsewhere (w is read as supported on U-hat).
GroupFunction local_maximal(const GroupModel& model, const Weight& w, const BaseSet& u);

/// Same operator applied to a nonnegative function (the restricted weights
/// w chi_E of the localization lemma are functions, not weights).
GroupFunction local_maximal(const GroupModel& model, const GroupFunction& f, const BaseSet& u);

/// {x in domain : g(x) > lambda}; the inequality is strict.
ElementSet level_set(const GroupModel& model, const GroupFunction& g, double lambda,
                     const ElementSet& domain);

}  // namespace lab
