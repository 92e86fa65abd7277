#include "opcomm/algebra.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "opcomm/errors.hpp"

namespace opcomm {

namespace {

bool atom_order(const TranslationAtom& a, const TranslationAtom& b) {
  if (a.source.index != b.source.index) return a.source.index < b.source.index;
  return a.target.index < b.target.index;
}

std::vector<TranslationAtom> refine_atoms(const std::vector<TranslationAtom>& atoms,
                                          int level) {
  std::vector<TranslationAtom> out;
  for (const auto& atom : atoms) {
    const std::int64_t width = std::int64_t(1) << (level - atom.source.level);
    for (std::int64_t t = 0; t < width; ++t) {
      out.push_back({{level, atom.source.index * width + t},
                     {level, atom.target.index * width + t},
                     atom.coefficient});
    }
  }
  std::sort(out.begin(), out.end(), atom_order);
  return out;
}

// Merges duplicate (source, target) pairs of an ordered same-level list and
// drops zero coefficients.
std::vector<TranslationAtom> merge_atoms(std::vector<TranslationAtom> atoms) {
  std::vector<TranslationAtom> out;
  for (auto& atom : atoms) {
    if (!out.empty() && out.back().source == atom.source && out.back().target == atom.target) {
      out.back().coefficient += atom.coefficient;
    } else {
      out.push_back(std::move(atom));
    }
  }
  std::erase_if(out, [](const TranslationAtom& a) { return a.coefficient == 0; });
  return out;
}

// One joint coarsening step: succeeds iff the atoms pair up as
// (2a -> 2b, c) + (2a+1 -> 2b+1, c)  ==>  (a -> b, c).
bool coarsen_once(std::vector<TranslationAtom>& atoms, int& level) {
  if (level == 0 || atoms.empty()) {
    return false;
  }
  std::vector<TranslationAtom> parents;
  std::map<std::pair<std::int64_t, std::int64_t>, Rational> odd;
  for (const auto& atom : atoms) {
    if (atom.source.index % 2 != atom.target.index % 2) {
      return false;
    }
    if (atom.source.index % 2 == 1) {
      odd.emplace(std::make_pair(atom.source.index, atom.target.index), atom.coefficient);
    }
  }
  for (const auto& atom : atoms) {
    if (atom.source.index % 2 != 0) {
      continue;
    }
    auto it = odd.find({atom.source.index + 1, atom.target.index + 1});
    if (it == odd.end() || it->second != atom.coefficient) {
      return false;
    }
    odd.erase(it);
    parents.push_back({{level - 1, atom.source.index / 2},
                       {level - 1, atom.target.index / 2},
                       atom.coefficient});
  }
  if (!odd.empty()) {
    return false;
  }
  atoms = std::move(parents);
  --level;
  return true;
}

}  // namespace

AlgebraElement AlgebraElement::identity() {
  return projection(DyadicSet::full());
}

AlgebraElement AlgebraElement::projection(const DyadicSet& set) {
  std::vector<TranslationAtom> atoms;
  for (const auto& si : set.atoms()) {
    atoms.push_back({si, si, Rational(1)});
  }
  return from_atoms(std::move(atoms));
}

AlgebraElement AlgebraElement::translation(const StandardInterval& source,
                                           const StandardInterval& target,
                                           const Rational& coefficient) {
  return from_atoms({{source, target, coefficient}});
}

AlgebraElement AlgebraElement::from_atoms(std::vector<TranslationAtom> atoms) {
  int level = 0;
  for (const auto& atom : atoms) {
    validate_interval(atom.source);
    validate_interval(atom.target);
    if (atom.source.level != atom.target.level) {
      throw InvalidIntervalError("translation atom between levels " +
                                 std::to_string(atom.source.level) + " and " +
                                 std::to_string(atom.target.level));
    }
    level = std::max(level, atom.source.level);
  }
  AlgebraElement result;
  result.atoms_ = merge_atoms(refine_atoms(atoms, level));
  result.level_ = result.atoms_.empty() ? 0 : level;
  while (coarsen_once(result.atoms_, result.level_)) {
  }
  return result;
}

std::vector<TranslationAtom> AlgebraElement::refined_atoms(int level) const {
  if (level < level_ || level > kMaxLevel) {
    throw RefinementError("cannot refine grid-level-" + std::to_string(level_) +
                          " element to level " + std::to_string(level));
  }
  return refine_atoms(atoms_, level);
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<TranslationAtom> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& atom : atoms_) {
    atoms.push_back({atom.target, atom.source, atom.coefficient});
  }
  return from_atoms(std::move(atoms));
}

Rational AlgebraElement::trace() const {
  Rational sum(0);
  for (const auto& atom : atoms_) {
    if (atom.source == atom.target) {
      sum += atom.coefficient;
    }
  }
  return sum / Rational(pow2(unsigned(level_)));
}

AlgebraElement AlgebraElement::scaled(const Rational& factor) const {
  std::vector<TranslationAtom> atoms = atoms_;
  for (auto& atom : atoms) {
    atom.coefficient *= factor;
  }
  return from_atoms(std::move(atoms));
}

AlgebraElement AlgebraElement::restricted_to(const DyadicSet& set) const {
  return *this * projection(set);
}

std::optional<DyadicSet> AlgebraElement::as_projection() const {
  std::vector<StandardInterval> parts;
  for (const auto& atom : atoms_) {
    if (atom.source != atom.target || atom.coefficient != 1) {
      return std::nullopt;
    }
    parts.push_back(atom.source);
  }
  return DyadicSet::normalize(parts);
}

bool AlgebraElement::is_projection() const {
  return *this == adjoint() && *this == *this * *this;
}

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
  std::vector<TranslationAtom> atoms = x.atoms_;
  atoms.insert(atoms.end(), y.atoms_.begin(), y.atoms_.end());
  return AlgebraElement::from_atoms(std::move(atoms));
}

AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
  return x + y.scaled(Rational(-1));
}

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
  const int level = std::max(x.level_, y.level_);
  const auto xs = x.refined_atoms(level);
  const auto ys = y.refined_atoms(level);

  // x*y applies y first; a product atom needs y's target to meet x's source,
  // and at a common level the cells either coincide or are disjoint.
  std::unordered_multimap<std::int64_t, const TranslationAtom*> by_source;
  by_source.reserve(xs.size());
  for (const auto& atom : xs) {
    by_source.emplace(atom.source.index, &atom);
  }
  std::vector<TranslationAtom> atoms;
  for (const auto& ya : ys) {
    auto [lo, hi] = by_source.equal_range(ya.target.index);
    for (auto it = lo; it != hi; ++it) {
      const TranslationAtom& xa = *it->second;
      atoms.push_back({ya.source, xa.target, xa.coefficient * ya.coefficient});
    }
  }
  return AlgebraElement::from_atoms(std::move(atoms));
}

AlgebraElement partial_isometry(const DyadicSet& initial, const DyadicSet& final_) {
  return partial_isometry(initial, final_, {});
}

AlgebraElement partial_isometry(const DyadicSet& initial, const DyadicSet& final_,
                                std::span<const std::size_t> matching) {
  if (initial.measure() != final_.measure()) {
    throw EquivalenceError("no equal-length translation between sets of measure " +
                           initial.measure().str() + " and " + final_.measure().str());
  }
  const int level = std::max(initial.finest_level(), final_.finest_level());
  const auto sources = initial.cells_at(level);
  const auto targets = final_.cells_at(level);
  if (!matching.empty() && matching.size() != sources.size()) {
    throw EquivalenceError("matching size " + std::to_string(matching.size()) +
                           " does not cover " + std::to_string(sources.size()) + " cells");
  }
  std::vector<TranslationAtom> atoms;
  std::vector<bool> used(targets.size(), false);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const std::size_t j = matching.empty() ? i : matching[i];
    if (j >= targets.size() || used[j]) {
      throw EquivalenceError("matching is not a permutation of the target cells");
    }
    used[j] = true;
    atoms.push_back({{level, sources[i]}, {level, targets[j]}, Rational(1)});
  }
  return AlgebraElement::from_atoms(std::move(atoms));
}

VerificationReport verify_partial_isometry(const AlgebraElement& v, const DyadicSet& initial,
                                           const DyadicSet& final_) {
  const AlgebraElement e = AlgebraElement::projection(initial);
  const AlgebraElement f = AlgebraElement::projection(final_);
  const AlgebraElement vs = v.adjoint();

  VerificationReport report;
  report.identity = "partial-isometry-calculus";
  report.level = std::max({v.grid_level(), initial.finest_level(), final_.finest_level()});

  const AlgebraElement defects[] = {
      vs * v - e,       // v*v = E
      v * vs - f,       // vv* = F
      v * e - v,        // v = vE
      f * v - v,        // v = Fv
      e * vs - vs,      // v* = Ev*
      vs * f - vs,      // v* = v*F
  };
  for (const auto& defect : defects) {
    if (!defect.is_zero()) {
      report.residual = defect;
      report.exact_pass = false;
      return report;
    }
  }
  report.exact_pass = true;
  return report;
}

AlgebraElement sum_partial_isometries(
    const std::vector<std::pair<DyadicSet, DyadicSet>>& pairs) {
  DyadicSet all_sources, all_targets;
  for (const auto& [source, target] : pairs) {
    if (!set_intersect(all_sources, source).empty()) {
      throw DisjointnessError("initial projections overlap");
    }
    if (!set_intersect(all_targets, target).empty()) {
      throw DisjointnessError("final projections overlap");
    }
    all_sources = set_union(all_sources, source);
    all_targets = set_union(all_targets, target);
  }
  AlgebraElement sum;
  for (const auto& [source, target] : pairs) {
    sum = sum + partial_isometry(source, target);
  }
  const auto report = verify_partial_isometry(sum, all_sources, all_targets);
  if (!report.exact_pass) {
    throw Error("sum of partial isometries failed its own calculus");
  }
  return sum;
}

DyadicSet conjugate_projection(const AlgebraElement& unitary, const DyadicSet& set) {
  const AlgebraElement identity = AlgebraElement::identity();
  const AlgebraElement adjoint = unitary.adjoint();
  if (adjoint * unitary != identity || unitary * adjoint != identity) {
    throw PreconditionError("conjugation requires a unitary element");
  }
  const AlgebraElement conjugated = unitary * AlgebraElement::projection(set) * adjoint;
  if (!conjugated.is_projection()) {
    throw Error("conjugate of a projection is not a projection");
  }
  auto result = conjugated.as_projection();
  if (!result) {
    throw Error("conjugated projection is not a union of standard intervals");
  }
  return *result;
}

}  // namespace opcomm
