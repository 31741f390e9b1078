#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "valcone/rat.hpp"

namespace valcone {

using Mask = std::uint64_t;

/// Finite T0 space, represented as a poset on named points.  The topology
/// is the Alexandroff one: the opens are exactly the upward-closed sets.
/// Immutable after construction; shared through shared_ptr.
class FinPoset {
 public:
  /// Builds the poset from the given relation pairs (names), taking the
  /// reflexive-transitive closure and validating antisymmetry.
  FinPoset(std::vector<std::string> elements,
           const std::vector<std::pair<std::string, std::string>>& leq_pairs);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(i); }
  int index(const std::string& name) const;  // throws on unknown point

  bool leq(int a, int b) const { return (up_[a] >> b) & 1u; }
  Mask upset_of(int a) const { return up_[a]; }
  Mask downset_of(int a) const { return down_[a]; }
  Mask full_mask() const { return size() == 64 ? ~Mask(0) : ((Mask(1) << size()) - 1); }

  bool is_upset(Mask m) const;
  bool is_downset(Mask m) const;
  /// Smallest upward-closed superset of m.
  Mask saturate(Mask m) const;
  /// Downward (Alexandroff) closure of m.
  Mask down_closure(Mask m) const;

  /// Least element, or -1 if there is none.
  int least() const;
  /// All minimal elements of m.
  std::vector<int> minimal_elements(Mask m) const;

  /// Every upset, in increasing (popcount, mask) order.  Guarded against
  /// spaces too large to enumerate.
  std::vector<Mask> all_upsets() const;

  /// Subspace on the complement of the least element (Edalat's trick);
  /// requires a least element.
  std::shared_ptr<FinPoset> without_least() const;

  bool same_space(const FinPoset& o) const;

 private:
  std::vector<std::string> names_;
  std::vector<Mask> up_;    // up_[a] = mask of {b : a <= b}
  std::vector<Mask> down_;  // down_[a] = mask of {b : b <= a}
};

using SpacePtr = std::shared_ptr<const FinPoset>;

/// Upward-closed subset of a finite space.
struct OpenSet {
  SpacePtr space;
  Mask members = 0;

  OpenSet() = default;
  OpenSet(SpacePtr s, Mask m);  // validates upward closure
};

/// Smallest open (= upward-closed) superset of the named points.
OpenSet saturate(const SpacePtr& space, const std::vector<std::string>& points);

/// One crescent C_I of a generating family U_1..U_n: the set of points x
/// with {i : x in U_i} = I.  Empty crescents are kept.
struct Crescent {
  Mask label = 0;    // subset of generator indices, bit i = U_{i+1}
  Mask members = 0;  // points of the space
};

/// Smallest family of opens containing the inputs plus the empty set and
/// the whole space, closed under binary union and intersection.  Output
/// sorted by (popcount, mask).
std::vector<Mask> generate_lattice(const FinPoset& space, const std::vector<Mask>& opens);

/// The crescents C_I for every I, indexed by label; pairwise disjoint and
/// covering the space.
std::vector<Crescent> crescent_partition(const FinPoset& space, const std::vector<Mask>& opens);

std::vector<int> mask_points(Mask m);
inline bool mask_has(Mask m, int i) { return (m >> i) & 1u; }

}  // namespace valcone
