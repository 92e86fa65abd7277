#include "opcomm/dyadic.hpp"

#include <algorithm>
#include <bit>

#include "opcomm/errors.hpp"

namespace opcomm {

namespace {

// Half-open run [begin, end) of cells at a common reference level.
struct CellRange {
  std::int64_t begin;
  std::int64_t end;
};

int common_level(const std::vector<StandardInterval>& intervals) {
  int level = 0;
  for (const auto& si : intervals) {
    level = std::max(level, si.level);
  }
  return level;
}

std::vector<CellRange> to_ranges(const std::vector<StandardInterval>& intervals, int level) {
  std::vector<CellRange> ranges;
  ranges.reserve(intervals.size());
  for (const auto& si : intervals) {
    const std::int64_t width = std::int64_t(1) << (level - si.level);
    ranges.push_back({si.index * width, (si.index + 1) * width});
  }
  std::sort(ranges.begin(), ranges.end(),
            [](const CellRange& a, const CellRange& b) { return a.begin < b.begin; });
  return ranges;
}

std::vector<CellRange> merge_ranges(std::vector<CellRange> ranges) {
  std::vector<CellRange> merged;
  for (const auto& r : ranges) {
    if (!merged.empty() && r.begin <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, r.end);
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

// Unique decomposition of a merged range list into maximal standard intervals.
std::vector<StandardInterval> to_intervals(const std::vector<CellRange>& ranges, int level) {
  std::vector<StandardInterval> atoms;
  for (const auto& r : ranges) {
    std::int64_t pos = r.begin;
    while (pos < r.end) {
      // Largest power of two dividing pos (everything divides 0), capped by
      // the remaining length.
      std::uint64_t align = pos == 0 ? (std::uint64_t(1) << level)
                                     : (std::uint64_t(pos) & (~std::uint64_t(pos) + 1));
      std::uint64_t remaining = std::uint64_t(r.end - pos);
      std::uint64_t size = std::min(align, std::bit_floor(remaining));
      int drop = std::countr_zero(size);
      atoms.push_back({level - drop, pos >> drop});
      pos += std::int64_t(size);
    }
  }
  return atoms;
}

}  // namespace

void validate_interval(const StandardInterval& interval) {
  if (interval.level < 0 || interval.level > kMaxLevel) {
    throw InvalidIntervalError("interval level " + std::to_string(interval.level) +
                               " outside [0, " + std::to_string(kMaxLevel) + "]");
  }
  if (interval.index < 0 || interval.index >= (std::int64_t(1) << interval.level)) {
    throw InvalidIntervalError("interval index " + std::to_string(interval.index) +
                               " out of range for level " + std::to_string(interval.level));
  }
}

DyadicSet DyadicSet::normalize(const std::vector<StandardInterval>& intervals) {
  for (const auto& si : intervals) {
    validate_interval(si);
  }
  if (intervals.empty()) {
    return DyadicSet();
  }
  const int level = common_level(intervals);
  DyadicSet result;
  result.atoms_ = to_intervals(merge_ranges(to_ranges(intervals, level)), level);
  return result;
}

DyadicSet DyadicSet::single(const StandardInterval& interval) {
  return normalize({interval});
}

DyadicSet DyadicSet::full() {
  return normalize({StandardInterval{0, 0}});
}

int DyadicSet::finest_level() const {
  int level = 0;
  for (const auto& si : atoms_) {
    level = std::max(level, si.level);
  }
  return level;
}

DyadicRational DyadicSet::measure() const {
  DyadicRational total;
  for (const auto& si : atoms_) {
    total = total + si.length();
  }
  return total;
}

std::vector<std::int64_t> DyadicSet::cells_at(int level) const {
  if (level < finest_level() || level > kMaxLevel) {
    throw RefinementError("cannot refine set with finest level " +
                          std::to_string(finest_level()) + " to level " +
                          std::to_string(level));
  }
  std::vector<std::int64_t> cells;
  for (const auto& si : atoms_) {
    const std::int64_t width = std::int64_t(1) << (level - si.level);
    for (std::int64_t t = 0; t < width; ++t) {
      cells.push_back(si.index * width + t);
    }
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

bool DyadicSet::contains(const DyadicSet& other) const {
  return set_subtract(other, *this).empty();
}

DyadicSet set_algebra(const DyadicSet& a, const DyadicSet& b, SetOp op) {
  std::vector<StandardInterval> all = a.atoms();
  all.insert(all.end(), b.atoms().begin(), b.atoms().end());
  const int level = all.empty() ? 0 : common_level(all);

  const auto ra = merge_ranges(to_ranges(a.atoms(), level));
  const auto rb = merge_ranges(to_ranges(b.atoms(), level));

  std::vector<CellRange> out;
  switch (op) {
    case SetOp::Union: {
      std::vector<CellRange> both = ra;
      both.insert(both.end(), rb.begin(), rb.end());
      std::sort(both.begin(), both.end(),
                [](const CellRange& x, const CellRange& y) { return x.begin < y.begin; });
      out = merge_ranges(std::move(both));
      break;
    }
    case SetOp::Intersect: {
      std::size_t i = 0, j = 0;
      while (i < ra.size() && j < rb.size()) {
        const std::int64_t lo = std::max(ra[i].begin, rb[j].begin);
        const std::int64_t hi = std::min(ra[i].end, rb[j].end);
        if (lo < hi) {
          out.push_back({lo, hi});
        }
        (ra[i].end < rb[j].end) ? ++i : ++j;
      }
      break;
    }
    case SetOp::Subtract: {
      std::size_t j = 0;
      for (const auto& r : ra) {
        std::int64_t pos = r.begin;
        while (j < rb.size() && rb[j].end <= pos) {
          ++j;
        }
        for (std::size_t l = j; l < rb.size() && rb[l].begin < r.end; ++l) {
          if (rb[l].begin > pos) {
            out.push_back({pos, rb[l].begin});
          }
          pos = std::max(pos, rb[l].end);
        }
        if (pos < r.end) {
          out.push_back({pos, r.end});
        }
      }
      break;
    }
  }

  std::vector<StandardInterval> atoms = to_intervals(out, level);
  return DyadicSet::normalize(atoms);
}

}  // namespace opcomm
