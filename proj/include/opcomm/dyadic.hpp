#pragma once

#include <cstdint>
#include <vector>

#include "opcomm/rational.hpp"

namespace opcomm {

/// Finest grid the library will refine to; matrix dimensions stay <= 2^14.
inline constexpr int kMaxLevel = 14;

/// The half-open interval [index/2^level, (index+1)/2^level) of [0,1).
struct StandardInterval {
  int level = 0;
  std::int64_t index = 0;

  DyadicRational left() const { return DyadicRational(Integer(index), unsigned(level)); }
  DyadicRational length() const { return DyadicRational(Integer(1), unsigned(level)); }

  bool operator==(const StandardInterval& other) const = default;
};

/// Throws InvalidIntervalError unless 0 <= level <= kMaxLevel and
/// 0 <= index < 2^level.
void validate_interval(const StandardInterval& interval);

/// A finite union of standard intervals in canonical form: atoms pairwise
/// disjoint, maximal (no two siblings that would merge into their parent) and
/// sorted by left endpoint. Models a projection.
class DyadicSet {
public:
  DyadicSet() = default;  // empty set

  /// Canonicalizes an arbitrary (possibly overlapping) interval list.
  static DyadicSet normalize(const std::vector<StandardInterval>& intervals);
  static DyadicSet single(const StandardInterval& interval);
  static DyadicSet full();  // [0,1)

  const std::vector<StandardInterval>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  /// Level of the finest atom (0 for the empty set).
  int finest_level() const;

  /// Sum of the atom lengths.
  DyadicRational measure() const;

  /// Indices of the level-`level` cells covering the set, ascending.
  /// Requires level >= finest_level().
  std::vector<std::int64_t> cells_at(int level) const;

  bool contains(const DyadicSet& other) const;

  bool operator==(const DyadicSet& other) const = default;

private:
  std::vector<StandardInterval> atoms_;
};

enum class SetOp { Union, Intersect, Subtract };

DyadicSet set_algebra(const DyadicSet& a, const DyadicSet& b, SetOp op);

inline DyadicSet set_union(const DyadicSet& a, const DyadicSet& b) {
  return set_algebra(a, b, SetOp::Union);
}
inline DyadicSet set_intersect(const DyadicSet& a, const DyadicSet& b) {
  return set_algebra(a, b, SetOp::Intersect);
}
inline DyadicSet set_subtract(const DyadicSet& a, const DyadicSet& b) {
  return set_algebra(a, b, SetOp::Subtract);
}
inline DyadicSet complement(const DyadicSet& a) {
  return set_subtract(DyadicSet::full(), a);
}

}  // namespace opcomm
