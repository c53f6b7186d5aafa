#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lab/group.hpp"
#include "lab/maximal.hpp"
#include "lab/weight.hpp"

namespace lab {

/// One selected base set of a Calderon-Zygmund family.
struct CZItem {
  ElementId center = 0;  // y_i
  int index = 0;         // alpha_i
  BaseSet set;           // y_i + U_alpha_i
  double average = 0;    // average of w over the set (> lambda by construction)
};

/// Pairwise disjoint base sets from the local base of `base` selected by the
/// greedy maximal-alpha procedure over the level set Omega_lambda of the
/// local maximal function.
struct CZFamily {
  BaseSet base;          // the fixed base set U
  double lambda = 0;
  double hat_average = 0;  // average of w over U-hat
  ElementSet hat;          // U-hat
  ElementSet omega;        // Omega_lambda
  std::vector<CZItem> items;
  std::vector<std::pair<ElementId, int>> alpha_map;  // per point of omega
};

/// Greedy decomposition. Requires lambda > (average of w over U-hat); w is
/// read as supported on U-hat. The result always satisfies the family
/// properties re-checked by verify_cz; a violation throws std::logic_error.
CZFamily cz_decompose(const GroupModel& model, const BaseSet& u, const Weight& w, double lambda);

struct CZCheckReport {
  bool pass = true;
  std::string failure;            // first violated property, empty when pass
  double min_average_margin = 0;  // min over items of (avg - lambda)
  double min_big_average_margin = 0;  // min over (i, r > alpha_i) of (D^2 lambda - avg)
  double omega_mass = 0;
  double items_mass = 0;  // sum of mu(V_i)
  int item_count = 0;
};

/// Re-checks properties (a)-(d) of the decomposition plus the measure
/// sandwich sum mu(V_i) <= mu(Omega) <= D^2 sum mu(V_i), reporting margins.
CZCheckReport verify_cz(const GroupModel& model, const CZFamily& family, const Weight& w);

struct LocalizationReport {
  double lambda = 0;
  double level = 0;  // L * lambda with L = D^6
  int item_count = 0;
  long checked_points = 0;
  double min_slack = 0;  // min over checked points of rhs - lhs
  bool pass = true;
};

/// For each CZ item V_i and each x in V_i** with M_U w(x) > D^6 lambda,
/// checks M_U w(x) <= M_U(w restricted to V_i^{4*})(x).
LocalizationReport localization_check(const GroupModel& model, const BaseSet& u, const Weight& w,
                                      double lambda);

/// Greedy Vitali selection: pairwise disjoint base sets of index <= K with
/// average of f above lambda, maximal index first, such that the twice-
/// dilated selection covers {M_K f > lambda} within `window`. Violated
/// coverage throws std::logic_error.
std::vector<BaseSet> vitali_select(const GroupModel& model, const GroupFunction& f, double lambda,
                                   int K, const ElementSet& window);

/// {"lambda": ..., "items": [{"center":..., "index":..., "points": [...]}]}
std::string cz_family_to_json(const CZFamily& family);

}  // namespace lab
