#include "lab/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>

namespace lab {

namespace {

constexpr double kMassRatioLimit = 1e12;

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<long>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void validate_masses(const std::vector<double>& masses) {
  double lo = masses[0], hi = masses[0];
  for (double m : masses) {
    if (!(m > 0) || !std::isfinite(m))
      throw std::invalid_argument("group: all point masses must be strictly positive and finite");
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  if (hi / lo > kMassRatioLimit)
    throw std::invalid_argument("group: mass ratio exceeds supported dynamic range (1e12)");
}

}  // namespace

// Pointwise translate sums: out[x] = sum of values over x + U_index.
std::vector<double> translate_sums(const GroupModel& model, int index,
                                   std::span<const double> values) {
  const int n = model.size();
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  const ElementSet& u = model.unit_set(index);

  if (model.is_whole_group_index(index) || static_cast<int>(u.size()) == n) {
    const double total = std::accumulate(values.begin(), values.end(), 0.0);
    std::fill(out.begin(), out.end(), total);
    return out;
  }

  switch (model.structure()) {
    case FamilyStructure::Subgroup: {
      const int s = n / static_cast<int>(u.size());  // coset residue modulus
      std::vector<double> coset(static_cast<size_t>(s), 0.0);
      for (int x = 0; x < n; ++x) coset[static_cast<size_t>(x % s)] += values[static_cast<size_t>(x)];
      for (int x = 0; x < n; ++x) out[static_cast<size_t>(x)] = coset[static_cast<size_t>(x % s)];
      return out;
    }
    case FamilyStructure::Interval: {
      const int r = model.interval_radius(index);
      std::vector<double> prefix(static_cast<size_t>(n) + 1, 0.0);
      for (int x = 0; x < n; ++x) prefix[static_cast<size_t>(x) + 1] = prefix[static_cast<size_t>(x)] + values[static_cast<size_t>(x)];
      const double total = prefix[static_cast<size_t>(n)];
      const int len = 2 * r + 1;
      for (int x = 0; x < n; ++x) {
        int lo = x - r;
        lo %= n;
        if (lo < 0) lo += n;
        if (lo + len <= n) {
          out[static_cast<size_t>(x)] = prefix[static_cast<size_t>(lo + len)] - prefix[static_cast<size_t>(lo)];
        } else {
          out[static_cast<size_t>(x)] =
              (total - prefix[static_cast<size_t>(lo)]) + prefix[static_cast<size_t>(lo + len - n)];
        }
      }
      return out;
    }
    case FamilyStructure::Generic: {
      for (int x = 0; x < n; ++x) {
        double s = 0;
        for (ElementId v : u) s += values[static_cast<size_t>(model.add(static_cast<ElementId>(x), v))];
        out[static_cast<size_t>(x)] = s;
      }
      return out;
    }
  }
  return out;
}

double GroupModel::mass_of(const ElementSet& pts) const {
  double s = 0;
  for (ElementId x : pts) s += mass(x);
  return s;
}

int GroupModel::theta_pow(int index, int n) const {
  int i = index;
  for (int k = 0; k < n; ++k) i = theta(i);
  return i;
}

BaseSet GroupModel::base_set(ElementId center, int index) const {
  if (index < index_min() || index > index_max())
    throw std::invalid_argument("base_set: index outside the admissible range");
  if (center < 0 || center >= n_) throw std::invalid_argument("base_set: center is not an element");
  BaseSet b;
  b.center = center;
  b.index = index;
  const ElementSet& u = unit_set(index);
  b.points.reserve(u.size());
  for (ElementId v : u) b.points.push_back(add(center, v));
  std::sort(b.points.begin(), b.points.end());
  return b;
}

int GroupModel::valuation(ElementId x) const {
  if (prime_ == 0) throw std::logic_error("valuation: not a p-adic model");
  if (x == 0) return level_;
  int v = 0;
  while (x % prime_ == 0) {
    x /= static_cast<ElementId>(prime_);
    ++v;
  }
  return v;
}

ElementId GroupModel::element_of(long signed_value) const {
  long r = signed_value % n_;
  if (r < 0) r += n_;
  return static_cast<ElementId>(r);
}

long GroupModel::signed_value(ElementId x) const { return x <= n_ / 2 ? x : x - static_cast<long>(n_); }

ElementSet GroupModel::window_points() const {
  if (half_width_ == 0) throw std::logic_error("window_points: not a window model");
  ElementSet pts;
  for (long k = -half_width_; k <= half_width_; ++k) pts.push_back(element_of(k));
  std::sort(pts.begin(), pts.end());
  return pts;
}

GroupModel GroupModel::padic(int p, int level, std::vector<double> masses) {
  if (!is_prime(p)) throw std::invalid_argument("padic: p must be prime");
  if (level < 1 || level > 8) throw std::invalid_argument("padic: level must be in [1, 8]");
  long n_long = 1;
  for (int i = 0; i < level; ++i) {
    n_long *= p;
    if (n_long > (1L << 20)) throw std::invalid_argument("padic: group larger than the desk-scale guard (2^20)");
  }
  const int n = static_cast<int>(n_long);

  GroupModel g;
  g.n_ = n;
  g.prime_ = p;
  g.level_ = level;
  g.structure_ = FamilyStructure::Subgroup;
  const bool haar = masses.empty();
  if (haar) {
    g.masses_.assign(static_cast<size_t>(n), 1.0);
  } else {
    if (static_cast<int>(masses.size()) != n)
      throw std::invalid_argument("padic: mass vector length must equal p^L");
    validate_masses(masses);
    g.masses_ = std::move(masses);
  }

  // U_i = p^(L-i) Z / p^L Z, |U_i| = p^i.
  g.family_.resize(static_cast<size_t>(level) + 1);
  for (int i = 0; i <= level; ++i) {
    long step = 1;
    for (int k = 0; k < level - i; ++k) step *= p;
    ElementSet u;
    for (long x = 0; x < n; x += step) u.push_back(static_cast<ElementId>(x));
    g.family_[static_cast<size_t>(i)] = std::move(u);
  }
  g.theta_.resize(static_cast<size_t>(level) + 1);
  for (int i = 0; i <= level; ++i) g.theta_[static_cast<size_t>(i)] = std::min(i + 1, level);

  {
    std::ostringstream os;
    os << "padic{" << p << ";" << level << (haar ? ";haar" : ";custom") << "}";
    g.name_ = os.str();
  }
  g.finalize();
  if (haar && g.doubling_ != static_cast<double>(p))
    throw std::logic_error("padic: exhaustive doubling constant disagrees with D = p");
  return g;
}

GroupModel GroupModel::integer_window(int half_width) {
  int m = 0;
  {
    int v = half_width;
    if (v < 2) throw std::invalid_argument("window: half-width must be a power of two >= 2");
    while (v > 1) {
      if (v % 2 != 0) throw std::invalid_argument("window: half-width must be a power of two");
      v /= 2;
      ++m;
    }
  }
  if (half_width > 4096) throw std::invalid_argument("window: half-width above the desk-scale guard (4096)");

  const int n = 8 * half_width;  // guard margin of 4N on either side
  GroupModel g;
  g.n_ = n;
  g.half_width_ = half_width;
  g.structure_ = FamilyStructure::Interval;
  g.masses_.assign(static_cast<size_t>(n), 1.0);

  // U_0 = {0}, U_i = {|k| <= 2^(i-1)} for 1 <= i <= m+2, whole group on top.
  const int top = m + 3;
  g.family_.resize(static_cast<size_t>(top) + 1);
  g.radii_.resize(static_cast<size_t>(top) + 1, 0);
  for (int i = 0; i <= top; ++i) {
    ElementSet u;
    if (i == top) {
      u.resize(static_cast<size_t>(n));
      std::iota(u.begin(), u.end(), 0);
      g.radii_[static_cast<size_t>(i)] = n;  // unused for the whole-group index
    } else {
      const int r = i == 0 ? 0 : (1 << (i - 1));
      g.radii_[static_cast<size_t>(i)] = r;
      for (long k = -r; k <= r; ++k) u.push_back(g.element_of(k));
      std::sort(u.begin(), u.end());
    }
    g.family_[static_cast<size_t>(i)] = std::move(u);
  }
  // theta(0) = 0 keeps U_0 - U_0 = {0} inside U_0 with ratio 1; above that the
  // dilation steps one index, clamped at the whole-group entry.
  g.theta_.resize(static_cast<size_t>(top) + 1);
  g.theta_[0] = 0;
  for (int i = 1; i <= top; ++i) g.theta_[static_cast<size_t>(i)] = std::min(i + 1, top);

  {
    std::ostringstream os;
    os << "window{" << half_width << "}";
    g.name_ = os.str();
  }
  g.finalize();
  if (!(g.doubling_ <= 2.0)) throw std::logic_error("window: exhaustive doubling constant exceeds 2");
  g.doubling_ = 2.0;  // the family's nominal constant; exhaustion shows it is valid
  return g;
}

GroupModel GroupModel::from_family(std::string name, std::vector<double> masses,
                                   std::vector<ElementSet> family,
                                   std::optional<std::vector<int>> theta) {
  if (masses.empty()) throw std::invalid_argument("from_family: empty mass vector");
  validate_masses(masses);
  const int n = static_cast<int>(masses.size());
  if (family.empty()) throw std::invalid_argument("from_family: empty family");

  GroupModel g;
  g.n_ = n;
  g.structure_ = FamilyStructure::Generic;
  g.masses_ = std::move(masses);
  for (auto& u : family) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    for (ElementId x : u)
      if (x < 0 || x >= n) throw std::invalid_argument("from_family: set element out of range");
  }
  g.family_ = std::move(family);

  if (theta) {
    if (theta->size() != g.family_.size())
      throw std::invalid_argument("from_family: theta size does not match family size");
    g.theta_ = std::move(*theta);
  } else {
    // Minimal admissible dilation: smallest j >= i with U_i - U_i inside U_j.
    const int top = static_cast<int>(g.family_.size()) - 1;
    g.theta_.resize(g.family_.size());
    for (int i = 0; i <= top; ++i) {
      ElementSet diff;
      for (ElementId a : g.family_[static_cast<size_t>(i)])
        for (ElementId b : g.family_[static_cast<size_t>(i)]) diff.push_back(g.sub(a, b));
      std::sort(diff.begin(), diff.end());
      diff.erase(std::unique(diff.begin(), diff.end()), diff.end());
      int j = i;
      while (j <= top && !set_includes(g.family_[static_cast<size_t>(j)], diff)) ++j;
      if (j > top)
        throw std::invalid_argument("from_family: no admissible theta (difference set escapes the family)");
      g.theta_[static_cast<size_t>(i)] = j;
    }
  }
  g.name_ = std::move(name);
  g.finalize();
  return g;
}

void GroupModel::finalize() {
  counting_measure_ = std::all_of(masses_.begin(), masses_.end(), [](double m) { return m == 1.0; });
  total_mass_ = std::accumulate(masses_.begin(), masses_.end(), 0.0);
  whole_top_ = static_cast<int>(family_.back().size()) == n_;

  // Exhaustive doubling constant for this family and theta.
  double dmax = 1.0;
  for (int i = index_min(); i <= index_max(); ++i) {
    const auto num = translate_sums(*this, theta(i), std::span<const double>(masses_));
    const auto den = translate_sums(*this, i, std::span<const double>(masses_));
    for (int x = 0; x < n_; ++x)
      dmax = std::max(dmax, num[static_cast<size_t>(x)] / den[static_cast<size_t>(x)]);
  }
  doubling_ = dmax;

  // Canonical distinct base sets.
  canonical_centers_.assign(family_.size(), {});
  switch (structure_) {
    case FamilyStructure::Subgroup: {
      for (int i = index_min(); i <= index_max(); ++i) {
        const int s = n_ / static_cast<int>(unit_set(i).size());
        auto& cs = canonical_centers_[static_cast<size_t>(i)];
        cs.resize(static_cast<size_t>(s));
        std::iota(cs.begin(), cs.end(), 0);
      }
      break;
    }
    case FamilyStructure::Interval: {
      for (int i = index_min(); i <= index_max(); ++i) {
        auto& cs = canonical_centers_[static_cast<size_t>(i)];
        if (is_whole_group_index(i)) {
          cs = {0};
        } else {
          cs.resize(static_cast<size_t>(n_));
          std::iota(cs.begin(), cs.end(), 0);
        }
      }
      break;
    }
    case FamilyStructure::Generic: {
      std::map<ElementSet, BaseSetKey> seen;
      for (int i = index_max(); i >= index_min(); --i) {
        for (int c = 0; c < n_; ++c) {
          BaseSet b = base_set(static_cast<ElementId>(c), i);
          auto it = seen.find(b.points);
          if (it == seen.end()) seen.emplace(std::move(b.points), BaseSetKey{i, static_cast<ElementId>(c)});
        }
      }
      for (const auto& [pts, key] : seen)
        canonical_centers_[static_cast<size_t>(key.index)].push_back(key.center);
      for (auto& cs : canonical_centers_) std::sort(cs.begin(), cs.end());
      break;
    }
  }
  distinct_.clear();
  for (int i = index_min(); i <= index_max(); ++i)
    for (ElementId c : canonical_centers_[static_cast<size_t>(i)]) distinct_.push_back(BaseSetKey{i, c});

  check_axioms();
}

void GroupModel::check_axioms() const {
  auto fail = [&](const std::string& what) {
    throw std::logic_error("covering-family axiom violated (" + name_ + "): " + what);
  };

  if (family_.front() != ElementSet{0}) fail("U at the bottom index is not {0}");
  if (static_cast<int>(family_.back().size()) != n_) fail("U at the top index is not the whole group");

  std::vector<char> member(static_cast<size_t>(n_), 0);
  for (int i = index_min(); i <= index_max(); ++i) {
    const ElementSet& u = unit_set(i);
    if (!set_contains(u, 0)) fail("0 missing from U_" + std::to_string(i));
    for (ElementId x : u)
      if (!set_contains(u, neg(x))) fail("U_" + std::to_string(i) + " not symmetric");
    if (i < index_max() && !set_includes(unit_set(i + 1), u))
      fail("family not nested at index " + std::to_string(i));

    const int t = theta(i);
    if (t < i || t > index_max()) fail("theta out of range at index " + std::to_string(i));
    if (i < index_max() && theta(i + 1) < t) fail("theta not monotone at index " + std::to_string(i));

    // U_i - U_i inside U_theta(i), by exhaustion (trivial when the target is
    // the whole group).
    if (static_cast<int>(unit_set(t).size()) != n_) {
      for (ElementId x : unit_set(t)) member[static_cast<size_t>(x)] = 1;
      for (ElementId a : u)
        for (ElementId b : u)
          if (!member[static_cast<size_t>(sub(a, b))])
            fail("U_i - U_i escapes U_theta(i) at index " + std::to_string(i));
      for (ElementId x : unit_set(t)) member[static_cast<size_t>(x)] = 0;
    }

    // Doubling at every translate.
    const auto num = translate_sums(*this, t, std::span<const double>(masses_));
    const auto den = translate_sums(*this, i, std::span<const double>(masses_));
    for (int x = 0; x < n_; ++x)
      if (num[static_cast<size_t>(x)] > doubling_ * den[static_cast<size_t>(x)] * (1.0 + 1e-12))
        fail("doubling fails at index " + std::to_string(i) + ", x = " + std::to_string(x));
  }
}

// Base-set algebra ------------------------------------------------------------

int j_index(const GroupModel& model, const BaseSet& v) {
  for (int j = model.index_max(); j >= model.index_min(); --j) {
    if (model.unit_set(j).size() != v.points.size()) continue;
    for (ElementId y : v.points) {
      if (model.base_set(y, j).points == v.points) return j;
    }
  }
  throw std::logic_error("j_index: base set not representable (corrupt BaseSet?)");
}

BaseSetKey canonical_key_of(const GroupModel& model, ElementId center, int index) {
  switch (model.structure()) {
    case FamilyStructure::Subgroup: {
      // Unit sets have pairwise distinct sizes, so the index is canonical;
      // the smallest representative of the coset is the canonical center.
      const int s = model.size() / static_cast<int>(model.unit_set(index).size());
      return BaseSetKey{index, static_cast<ElementId>(center % s)};
    }
    case FamilyStructure::Interval: {
      if (static_cast<int>(model.unit_set(index).size()) == model.size())
        return BaseSetKey{index, 0};
      return BaseSetKey{index, center};  // interval translates have unique centers
    }
    case FamilyStructure::Generic:
      break;
  }
  const BaseSet v = model.base_set(center, index);
  for (int j = model.index_max(); j >= model.index_min(); --j) {
    if (model.unit_set(j).size() != v.points.size()) continue;
    for (ElementId y : v.points) {
      if (model.base_set(y, j).points == v.points) return BaseSetKey{j, y};
    }
  }
  throw std::logic_error("canonical_key: base set not representable");
}

BaseSetKey canonical_key(const GroupModel& model, const BaseSet& v) {
  return canonical_key_of(model, v.center, v.index);
}

std::optional<BaseSet> engulf_check(const GroupModel& model, const BaseSet& u, const BaseSet& v) {
  if (u.index > v.index)
    throw std::invalid_argument("engulf_check: requires index(U) <= index(V)");
  if (sets_disjoint(u.points, v.points)) return std::nullopt;
  BaseSet container = model.base_set(v.center, model.theta_pow(v.index, 2));
  if (!set_includes(container.points, u.points))
    throw std::logic_error("engulf_check: containment fails; covering-family axioms are broken");
  return container;
}

std::vector<BaseSet> local_base(const GroupModel& model, const BaseSet& u, LocalIndexPolicy policy) {
  const int k = policy == LocalIndexPolicy::MaximalIndex ? j_index(model, u) : u.index;
  std::set<BaseSetKey> seen;
  std::vector<BaseSet> out;
  for (ElementId y : u.points) {
    for (int j = model.index_min(); j <= k; ++j) {
      const BaseSetKey key = canonical_key_of(model, y, j);
      if (!seen.insert(key).second) continue;
      BaseSet canon = model.base_set(key.center, key.index);
      out.push_back(std::move(canon));
    }
  }
  std::sort(out.begin(), out.end(), [](const BaseSet& a, const BaseSet& b) {
    return std::pair(a.index, a.center) < std::pair(b.index, b.center);
  });
  return out;
}

ElementSet hat(const GroupModel& model, const BaseSet& u, LocalIndexPolicy policy) {
  ElementSet acc;
  for (const BaseSet& v : local_base(model, u, policy)) acc = set_union(acc, v.points);
  return acc;
}

BaseSet dilate(const GroupModel& model, const BaseSet& v, int n) {
  if (n < 0) throw std::invalid_argument("dilate: iteration count must be >= 0");
  return model.base_set(v.center, model.theta_pow(v.index, n));
}

// Set utilities ---------------------------------------------------------------

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const ElementSet& a, ElementId x) {
  return std::binary_search(a.begin(), a.end(), x);
}

bool set_includes(const ElementSet& a, const ElementSet& b) {
  return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

bool sets_disjoint(const ElementSet& a, const ElementSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else
      return false;
  }
  return true;
}

}  // namespace lab
