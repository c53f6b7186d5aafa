#include "lab/maximal.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace lab {

namespace {

// max over x of the averages of sets at `index` containing x, written into
// `best`. `avg(index, center)` must be valid for every center.
void fold_index_max(const GroupModel& model, const SetAverager& avg, int index,
                    std::vector<double>& best) {
  const int n = model.size();
  switch (model.structure()) {
    case FamilyStructure::Subgroup: {
      // Cosets partition the group: the only set at this index containing x
      // is x + U_index itself.
      for (int x = 0; x < n; ++x)
        best[static_cast<size_t>(x)] =
            std::max(best[static_cast<size_t>(x)], avg.average(index, static_cast<ElementId>(x)));
      return;
    }
    case FamilyStructure::Interval: {
      if (model.is_whole_group_index(index)) {
        const double a = avg.average(index, 0);
        for (auto& b : best) b = std::max(b, a);
        return;
      }
      // Sets containing x are centered at y in [x-r, x+r]: sliding-window
      // maximum of the per-center averages over the circular center array.
      const int r = model.interval_radius(index);
      const int len = 2 * r + 1;
      std::deque<std::pair<double, int>> dq;
      for (int j = 0; j < n + 2 * r; ++j) {
        const double v = avg.average(index, static_cast<ElementId>(j % n));
        while (!dq.empty() && dq.back().first < v) dq.pop_back();
        dq.emplace_back(v, j);
        while (dq.front().second <= j - len) dq.pop_front();
        if (j >= len - 1) {
          const int x = (j - r) % n;
          best[static_cast<size_t>(x)] = std::max(best[static_cast<size_t>(x)], dq.front().first);
        }
      }
      return;
    }
    case FamilyStructure::Generic: {
      for (ElementId c : model.canonical_centers(index)) {
        const double a = avg.average(index, c);
        for (ElementId x : model.base_set(c, index).points)
          best[static_cast<size_t>(x)] = std::max(best[static_cast<size_t>(x)], a);
      }
      return;
    }
  }
}

GroupFunction maximal_up_to(const GroupModel& model, const GroupFunction& f, int top_index) {
  SetAverager avg(model, std::span<const double>(f.values()));
  std::vector<double> best(static_cast<size_t>(model.size()), 0.0);
  for (int i = model.index_min(); i <= top_index; ++i) fold_index_max(model, avg, i, best);
  return GroupFunction(model, std::move(best));
}

}  // namespace

GroupFunction maximal(const GroupModel& model, const GroupFunction& f) {
  return maximal_up_to(model, f, model.index_max());
}

GroupFunction truncated_maximal(const GroupModel& model, const GroupFunction& f, int K) {
  if (K < model.index_min() || K > model.index_max())
    throw std::invalid_argument("truncated_maximal: K outside the index range");
  return maximal_up_to(model, f, K);
}

std::vector<PointWitness> maximal_with_witness(const GroupModel& model, const GroupFunction& f) {
  SetAverager avg(model, std::span<const double>(f.values()));
  std::vector<PointWitness> best(static_cast<size_t>(model.size()));
  std::vector<char> seen(static_cast<size_t>(model.size()), 0);
  // Distinct sets are sorted by (index, center); strict improvement keeps the
  // smallest key among ties.
  for (const BaseSetKey& key : model.distinct_base_sets()) {
    const double a = avg.average(key);
    for (ElementId x : model.base_set(key.center, key.index).points) {
      auto& b = best[static_cast<size_t>(x)];
      if (!seen[static_cast<size_t>(x)] || a > b.value) {
        seen[static_cast<size_t>(x)] = 1;
        b.value = a;
        b.set = key;
      }
    }
  }
  return best;
}

namespace {

GroupFunction local_maximal_values(const GroupModel& model, const std::vector<double>& values,
                                   const BaseSet& u) {
  std::vector<double> out(static_cast<size_t>(model.size()), 0.0);
  // Every V in B_U lies inside U-hat, so restricting the input to U-hat does
  // not change any of these averages.
  for (const BaseSet& v : local_base(model, u)) {
    const double a = average(model, values, v.points);
    for (ElementId x : v.points)
      out[static_cast<size_t>(x)] = std::max(out[static_cast<size_t>(x)], a);
  }
  return GroupFunction(model, std::move(out));
}

}  // namespace

GroupFunction local_maximal(const GroupModel& model, const Weight& w, const BaseSet& u) {
  return local_maximal_values(model, w.values(), u);
}

GroupFunction local_maximal(const GroupModel& model, const GroupFunction& f, const BaseSet& u) {
  return local_maximal_values(model, f.values(), u);
}

ElementSet level_set(const GroupModel& model, const GroupFunction& g, double lambda,
                     const ElementSet& domain) {
  (void)model;
  ElementSet out;
  for (ElementId x : domain)
    if (g(x) > lambda) out.push_back(x);
  return out;
}

}  // namespace lab
