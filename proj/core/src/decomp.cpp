#include "lab/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lab {

namespace {

constexpr double kRelTol = 1e-9;

// Smallest index <= cap at which the point set of `key` can be written as a
// translate; -1 when impossible. Canonical keys carry the maximal index, so
// this only has to search below it.
int representation_index_at_most(const GroupModel& model, const BaseSetKey& key, int cap) {
  if (key.index <= cap) return key.index;
  const BaseSet v = model.base_set(key.center, key.index);
  for (int j = cap; j >= model.index_min(); --j) {
    if (model.unit_set(j).size() != v.points.size()) continue;
    for (ElementId y : v.points)
      if (model.base_set(y, j).points == v.points) return j;
  }
  return -1;
}

}  // namespace

CZFamily cz_decompose(const GroupModel& model, const BaseSet& u, const Weight& w, double lambda) {
  CZFamily fam;
  fam.base = u;
  fam.lambda = lambda;

  const std::vector<BaseSet> base_sets = local_base(model, u);
  fam.hat.clear();
  for (const BaseSet& v : base_sets) fam.hat = set_union(fam.hat, v.points);
  fam.hat_average = average(model, w.values(), fam.hat);
  if (!(lambda > fam.hat_average))
    throw std::invalid_argument("cz_decompose: requires lambda > average of w over U-hat");

  const int k = j_index(model, u);
  const GroupFunction mu_w = local_maximal(model, w, u);
  fam.omega = level_set(model, mu_w, lambda, fam.hat);
  if (fam.omega.empty()) return fam;

  // Per-set averages and the qualifying sets (average > lambda). The alpha
  // index of a set is its maximal representation index, capped at j(U).
  struct Qualifier {
    int alpha;
    const BaseSet* set;
  };
  std::vector<Qualifier> qualifiers;
  for (const BaseSet& v : base_sets) {
    if (average(model, w.values(), v.points) > lambda)
      qualifiers.push_back({std::min(v.index, k), &v});
  }

  std::map<ElementId, int> alpha;
  for (const Qualifier& q : qualifiers)
    for (ElementId x : q.set->points) {
      auto [it, inserted] = alpha.emplace(x, q.alpha);
      if (!inserted) it->second = std::max(it->second, q.alpha);
    }
  for (ElementId x : fam.omega) {
    if (alpha.find(x) == alpha.end())
      throw std::logic_error("cz_decompose: point of Omega_lambda with no qualifying set");
    fam.alpha_map.emplace_back(x, alpha.at(x));
  }

  // Greedy selection: extremal alpha first (ties: smallest element id), then
  // discard everything inside the twice-dilated witness.
  std::vector<ElementId> pool(fam.omega);
  while (!pool.empty()) {
    ElementId extremal = pool.front();
    for (ElementId x : pool)
      if (alpha.at(x) > alpha.at(extremal)) extremal = x;
    const int a = alpha.at(extremal);

    // Witness: the valid (y, j = alpha) pair with the smallest center,
    // scanning centers of U in ascending order.
    const BaseSet* witness = nullptr;
    BaseSet witness_storage;
    for (ElementId y : u.points) {
      BaseSet cand = model.base_set(y, a);
      if (!set_contains(cand.points, extremal)) continue;
      if (!(average(model, w.values(), cand.points) > lambda)) continue;
      witness_storage = std::move(cand);
      witness = &witness_storage;
      break;
    }
    if (witness == nullptr)
      throw std::logic_error("cz_decompose: no witness set at the extremal alpha");

    for (const CZItem& prior : fam.items)
      if (!sets_disjoint(prior.set.points, witness->points))
        throw std::logic_error("cz_decompose: selected set meets an earlier selection");

    CZItem item;
    item.center = witness->center;
    item.index = a;
    item.set = *witness;
    item.average = average(model, w.values(), witness->points);
    fam.items.push_back(std::move(item));

    const BaseSet discard = model.base_set(witness->center, model.theta_pow(a, 2));
    std::vector<ElementId> next;
    next.reserve(pool.size());
    for (ElementId x : pool)
      if (!set_contains(discard.points, x)) next.push_back(x);
    if (next.size() == pool.size())
      throw std::logic_error("cz_decompose: selection failed to shrink the point pool");
    pool = std::move(next);
  }

  const CZCheckReport report = verify_cz(model, fam, w);
  if (!report.pass)
    throw std::logic_error("cz_decompose: produced family fails verification: " + report.failure);
  return fam;
}

CZCheckReport verify_cz(const GroupModel& model, const CZFamily& family, const Weight& w) {
  CZCheckReport rep;
  rep.item_count = static_cast<int>(family.items.size());
  rep.min_average_margin = std::numeric_limits<double>::infinity();
  rep.min_big_average_margin = std::numeric_limits<double>::infinity();

  auto fail = [&](const std::string& what) {
    rep.pass = false;
    if (rep.failure.empty()) rep.failure = what;
  };

  const double lambda = family.lambda;
  const double d2_lambda =
      model.doubling_constant() * model.doubling_constant() * lambda;

  // (a) indices nonincreasing along the selection order.
  for (size_t i = 1; i < family.items.size(); ++i)
    if (family.items[i].index > family.items[i - 1].index) {
      fail("indices increase along the selection");
      break;
    }

  // Pairwise disjoint.
  for (size_t i = 0; i < family.items.size(); ++i)
    for (size_t j = i + 1; j < family.items.size(); ++j)
      if (!sets_disjoint(family.items[i].set.points, family.items[j].set.points)) {
        fail("items are not pairwise disjoint");
        break;
      }

  // Each item belongs to the local base of U.
  {
    std::set<BaseSetKey> keys;
    for (const BaseSet& v : local_base(model, family.base)) keys.insert(BaseSetKey{v.index, v.center});
    for (const CZItem& item : family.items)
      if (keys.find(canonical_key(model, item.set)) == keys.end())
        fail("item outside the local base of U");
  }

  // (b) union of items inside Omega, Omega inside the union of 2-dilates.
  ElementSet covered;
  ElementSet union_items;
  for (const CZItem& item : family.items) {
    union_items = set_union(union_items, item.set.points);
    covered = set_union(covered, dilate(model, item.set, 2).points);
  }
  if (!set_includes(family.omega, union_items)) fail("an item escapes Omega_lambda");
  if (!set_includes(covered, family.omega)) fail("2-dilates do not cover Omega_lambda");

  // (c) every item average exceeds lambda.
  for (const CZItem& item : family.items) {
    const double avg = average(model, w.values(), item.set.points);
    rep.min_average_margin = std::min(rep.min_average_margin, avg - lambda);
    if (!(avg > lambda)) fail("item average does not exceed lambda");
  }

  // (d) for r > alpha_i the average of w chi_hat over y_i + U_r stays below
  // D^2 lambda.
  std::vector<double> w_hat(static_cast<size_t>(model.size()), 0.0);
  for (ElementId x : family.hat) w_hat[static_cast<size_t>(x)] = w(x);
  for (const CZItem& item : family.items) {
    for (int r = item.index + 1; r <= model.index_max(); ++r) {
      const BaseSet big = model.base_set(item.center, r);
      const double avg = average(model, w_hat, big.points);
      rep.min_big_average_margin = std::min(rep.min_big_average_margin, d2_lambda - avg);
      if (avg > d2_lambda * (1.0 + kRelTol)) fail("big-average bound D^2 lambda fails");
    }
  }

  // Measure sandwich.
  rep.omega_mass = model.mass_of(family.omega);
  rep.items_mass = 0;
  for (const CZItem& item : family.items) rep.items_mass += model.mass_of(item.set.points);
  const double d2 = model.doubling_constant() * model.doubling_constant();
  if (rep.items_mass > rep.omega_mass * (1.0 + kRelTol)) fail("sum of item masses exceeds mu(Omega)");
  if (rep.omega_mass > d2 * rep.items_mass * (1.0 + kRelTol) && !family.items.empty())
    fail("mu(Omega) exceeds D^2 * sum of item masses");
  if (family.items.empty() && !family.omega.empty()) fail("empty family for nonempty Omega");

  if (rep.item_count == 0) {
    rep.min_average_margin = 0;
    rep.min_big_average_margin = 0;
  }
  return rep;
}

LocalizationReport localization_check(const GroupModel& model, const BaseSet& u, const Weight& w,
                                      double lambda) {
  const CZFamily fam = cz_decompose(model, u, w, lambda);
  LocalizationReport rep;
  rep.lambda = lambda;
  const double L = std::pow(model.doubling_constant(), 6.0);
  rep.level = L * lambda;
  rep.item_count = static_cast<int>(fam.items.size());
  rep.min_slack = std::numeric_limits<double>::infinity();

  const GroupFunction mu_w = local_maximal(model, w, u);
  const ElementSet high = level_set(model, mu_w, rep.level, fam.hat);
  if (high.empty()) {
    rep.min_slack = 0;
    return rep;
  }

  for (const CZItem& item : fam.items) {
    const ElementSet region = set_intersection(dilate(model, item.set, 2).points, high);
    if (region.empty()) continue;
    const BaseSet four = dilate(model, item.set, 4);
    std::vector<double> restricted(static_cast<size_t>(model.size()), 0.0);
    for (ElementId x : set_intersection(four.points, fam.hat))
      restricted[static_cast<size_t>(x)] = w(x);
    const GroupFunction rhs = local_maximal(model, GroupFunction(model, std::move(restricted)), u);
    for (ElementId x : region) {
      ++rep.checked_points;
      rep.min_slack = std::min(rep.min_slack, rhs(x) - mu_w(x));
      if (mu_w(x) > rhs(x) * (1.0 + kRelTol)) rep.pass = false;
    }
  }
  if (rep.checked_points == 0) rep.min_slack = 0;
  return rep;
}

std::vector<BaseSet> vitali_select(const GroupModel& model, const GroupFunction& f, double lambda,
                                   int K, const ElementSet& window) {
  if (!(lambda > 0)) throw std::invalid_argument("vitali_select: requires lambda > 0");
  if (K < model.index_min() || K > model.index_max())
    throw std::invalid_argument("vitali_select: K outside the index range");

  SetAverager avg(model, std::span<const double>(f.values()));
  struct Candidate {
    int index;
    ElementId center;
  };
  std::vector<Candidate> candidates;
  for (const BaseSetKey& key : model.distinct_base_sets()) {
    const int idx = representation_index_at_most(model, key, K);
    if (idx < 0) continue;
    if (avg.average(key) > lambda) candidates.push_back({idx, key.center});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::pair(-a.index, a.center) < std::pair(-b.index, b.center);
  });

  std::vector<BaseSet> selected;
  for (const Candidate& c : candidates) {
    BaseSet v = model.base_set(c.center, c.index);
    bool disjoint = true;
    for (const BaseSet& s : selected)
      if (!sets_disjoint(s.points, v.points)) {
        disjoint = false;
        break;
      }
    if (disjoint) selected.push_back(std::move(v));
  }

  // Coverage: the twice-dilated selection must capture the truncated level
  // set within the window.
  const GroupFunction mk = truncated_maximal(model, f, K);
  ElementSet covered;
  for (const BaseSet& s : selected) covered = set_union(covered, dilate(model, s, 2).points);
  for (ElementId x : level_set(model, mk, lambda, window))
    if (!set_contains(covered, x))
      throw std::logic_error("vitali_select: dilated selection fails to cover the level set");
  return selected;
}

std::string cz_family_to_json(const CZFamily& family) {
  nlohmann::ordered_json j;
  j["lambda"] = family.lambda;
  j["items"] = nlohmann::ordered_json::array();
  for (const CZItem& item : family.items) {
    nlohmann::ordered_json ji;
    ji["center"] = item.center;
    ji["index"] = item.index;
    ji["points"] = item.set.points;
    j["items"].push_back(std::move(ji));
  }
  return j.dump(2);
}

}  // namespace lab
