#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lab {

using ElementId = std::int32_t;

/// Sorted, duplicate-free list of element ids. All set-valued quantities in
/// the library use this canonical form so point sets compare with ==.
using ElementSet = std::vector<ElementId>;

/// A translate center + U_index of one member of the covering family.
struct BaseSet {
  ElementId center = 0;
  int index = 0;
  ElementSet points;
};

/// Canonical handle for a distinct base set: the maximal index at which the
/// point set can be written as a translate, and the smallest center doing so.
struct BaseSetKey {
  int index = 0;
  ElementId center = 0;

  friend bool operator==(const BaseSetKey&, const BaseSetKey&) = default;
  friend auto operator<=>(const BaseSetKey&, const BaseSetKey&) = default;
};

/// Layout of the covering family, used to select exact fast paths for
/// averaging and maximal-function enumeration. `Generic` always works.
enum class FamilyStructure { Subgroup, Interval, Generic };

/// A finite cyclic group Z/nZ carrying a strictly positive point measure and
/// a covering family {U_i} with dilation map theta and doubling constant D.
///
/// Instances are immutable after construction and safe to share across
/// threads. All family axioms (symmetry, nesting, U_i - U_i inside
/// U_theta(i), doubling) are verified exhaustively by the constructors.
class GroupModel {
 public:
  /// Z/p^L Z with U_i = p^(L-i) * Z/p^L Z and theta(i) = min(i+1, L).
  /// `masses` empty means Haar (all masses 1), in which case D = p exactly;
  /// otherwise D is the exhaustively computed smallest valid constant.
  static GroupModel padic(int p, int level, std::vector<double> masses = {});

  /// Integer window of half-width N = 2^m hosted in Z/8N Z so that no base
  /// set that meets the window re-enters it from the far side. Family:
  /// U_0 = {0}, U_i = {|k| <= 2^(i-1)} for 1 <= i <= m+2, and the whole
  /// group on top. theta(0) = 0 and theta(i) = i+1 (clamped); D = 2.
  static GroupModel integer_window(int half_width);

  /// Cyclic group with a user-supplied family table. The table must be
  /// symmetric, nested, contain {0} at the bottom and the whole group on
  /// top. If `theta` is absent the minimal admissible dilation map is
  /// computed; D is always computed exhaustively.
  static GroupModel from_family(std::string name, std::vector<double> masses,
                                std::vector<ElementSet> family,
                                std::optional<std::vector<int>> theta = std::nullopt);

  // Group structure ---------------------------------------------------------
  int size() const { return n_; }
  ElementId add(ElementId a, ElementId b) const {
    ElementId s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  ElementId neg(ElementId a) const { return a == 0 ? 0 : static_cast<ElementId>(n_ - a); }
  ElementId sub(ElementId a, ElementId b) const { return add(a, neg(b)); }

  double mass(ElementId x) const { return masses_[static_cast<size_t>(x)]; }
  double mass_of(const ElementSet& pts) const;
  double total_mass() const { return total_mass_; }
  const std::vector<double>& masses() const { return masses_; }
  bool counting_measure() const { return counting_measure_; }

  // Covering family ---------------------------------------------------------
  int index_min() const { return 0; }
  int index_max() const { return static_cast<int>(family_.size()) - 1; }
  int index_count() const { return static_cast<int>(family_.size()); }
  const ElementSet& unit_set(int index) const { return family_[static_cast<size_t>(index)]; }
  int theta(int index) const { return theta_[static_cast<size_t>(index)]; }
  int theta_pow(int index, int n) const;
  double doubling_constant() const { return doubling_; }
  FamilyStructure structure() const { return structure_; }
  const std::string& name() const { return name_; }

  BaseSet base_set(ElementId center, int index) const;

  /// All distinct base sets, deduplicated as point sets and listed by their
  /// canonical key, sorted ascending by (index, center).
  const std::vector<BaseSetKey>& distinct_base_sets() const { return distinct_; }

  /// Number of distinct sets at a given family index (whole-group
  /// duplicates count once at the top index).
  const std::vector<ElementId>& canonical_centers(int index) const {
    return canonical_centers_[static_cast<size_t>(index)];
  }

  // Model-specific helpers --------------------------------------------------
  /// p-adic only: valuation of x in Z/p^L Z, with v(0) = L.
  int valuation(ElementId x) const;
  int prime() const { return prime_; }
  int level() const { return level_; }

  /// window only: host element for a signed integer value (reduced mod n)
  /// and the signed representative in (-n/2, n/2].
  int window_half_width() const { return half_width_; }
  ElementId element_of(long signed_value) const;
  long signed_value(ElementId x) const;
  /// window only: the element set {-N..N}.
  ElementSet window_points() const;

  /// Interval structure: radius of U_i (top whole-group index excluded).
  int interval_radius(int index) const { return radii_[static_cast<size_t>(index)]; }
  bool is_whole_group_index(int index) const { return index == index_max() && whole_top_; }

  /// Re-verifies every covering-family axiom by exhaustion; throws
  /// std::logic_error naming the violated axiom. Constructors call this.
  void check_axioms() const;

 private:
  GroupModel() = default;
  void finalize();  // computes D, canonical sets, runs check_axioms()

  std::string name_;
  int n_ = 0;
  std::vector<double> masses_;
  double total_mass_ = 0;
  bool counting_measure_ = false;
  std::vector<ElementSet> family_;
  std::vector<int> theta_;
  double doubling_ = 1;
  FamilyStructure structure_ = FamilyStructure::Generic;
  bool whole_top_ = true;

  int prime_ = 0;
  int level_ = 0;
  int half_width_ = 0;
  std::vector<int> radii_;

  std::vector<std::vector<ElementId>> canonical_centers_;  // per index
  std::vector<BaseSetKey> distinct_;
};

// Base-set algebra -----------------------------------------------------------

/// Maximal j in the index range such that V.points = x + U_j for some x,
/// found by exhaustive scan. Every base set is representable at its own
/// index, so the result is >= V.index.
int j_index(const GroupModel& model, const BaseSet& v);

/// Canonical key of a base set: maximal index, then smallest center
/// representing the point set at that index.
BaseSetKey canonical_key(const GroupModel& model, const BaseSet& v);

/// Canonical key of center + U_index without materializing the point set
/// (subgroup and interval families resolve it structurally).
BaseSetKey canonical_key_of(const GroupModel& model, ElementId center, int index);

/// Engulfing check for U = x+U_i, V = y+U_j with i <= j. Returns nullopt if
/// the sets are disjoint; otherwise returns the containing set y+U_theta^2(j)
/// after asserting the containment. A violated containment means the family
/// axioms are broken and throws std::logic_error.
std::optional<BaseSet> engulf_check(const GroupModel& model, const BaseSet& u, const BaseSet& v);

/// Which index bounds the local base B_U: the maximal representation index
/// j(U) (the default, per the local-base definition) or the representation
/// index U.index as written.
enum class LocalIndexPolicy { MaximalIndex, RepresentationIndex };

/// All distinct base sets y + U_j with y in U and j <= j(U), deduplicated as
/// point sets; each carries its canonical (maximal-index) representation.
/// Sorted by (index, center).
std::vector<BaseSet> local_base(const GroupModel& model, const BaseSet& u,
                                LocalIndexPolicy policy = LocalIndexPolicy::MaximalIndex);

/// Union of the local base of U (the enlarged set U-hat).
ElementSet hat(const GroupModel& model, const BaseSet& u,
               LocalIndexPolicy policy = LocalIndexPolicy::MaximalIndex);

/// y + U_theta^n(j): n applications of the dilation map, clamped at the top.
BaseSet dilate(const GroupModel& model, const BaseSet& v, int n);

/// For each x: sum of `values` over the translate x + U_index, computed in
/// O(n) per index through the family-structure fast paths (coset sums for
/// subgroup families, circular prefix sums for interval families).
std::vector<double> translate_sums(const GroupModel& model, int index,
                                   std::span<const double> values);

// Small set utilities used across modules.
ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
bool set_contains(const ElementSet& a, ElementId x);
bool set_includes(const ElementSet& a, const ElementSet& b);  // b subset of a
bool sets_disjoint(const ElementSet& a, const ElementSet& b);

}  // namespace lab
