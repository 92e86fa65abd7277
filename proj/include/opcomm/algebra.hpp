#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opcomm/dyadic.hpp"
#include "opcomm/rational.hpp"

namespace opcomm {

/// One translation piece: maps `source` onto `target` (equal length) by
/// t -> t + (target.left - source.left), then multiplies by `coefficient`.
struct TranslationAtom {
  StandardInterval source;
  StandardInterval target;
  Rational coefficient;

  bool operator==(const TranslationAtom& other) const = default;
};

/// A finite rational combination of translation atoms, closed under addition,
/// multiplication and adjoint. Canonical form: every atom refined to one
/// common grid level (the minimal one), no duplicate (source, target) pairs,
/// no zero coefficients, atoms ordered by (source, target).
class AlgebraElement {
public:
  AlgebraElement() = default;  // zero

  static AlgebraElement zero() { return AlgebraElement(); }
  static AlgebraElement identity();
  static AlgebraElement projection(const DyadicSet& set);
  static AlgebraElement translation(const StandardInterval& source,
                                    const StandardInterval& target,
                                    const Rational& coefficient = Rational(1));
  static AlgebraElement from_atoms(std::vector<TranslationAtom> atoms);

  bool is_zero() const { return atoms_.empty(); }
  int grid_level() const { return level_; }
  const std::vector<TranslationAtom>& atoms() const { return atoms_; }

  /// Atom list refined to `level` (>= grid_level()), ordered.
  std::vector<TranslationAtom> refined_atoms(int level) const;

  AlgebraElement adjoint() const;
  Rational trace() const;
  AlgebraElement scaled(const Rational& factor) const;

  /// This element followed by nothing, preceded by the projection onto `set`;
  /// i.e. (*this) * projection(set), restricting the domain.
  AlgebraElement restricted_to(const DyadicSet& set) const;

  /// The DyadicSet whose projection equals this element, if it is one
  /// (diagonal atoms, all coefficients 1).
  std::optional<DyadicSet> as_projection() const;

  /// Exact operator-projection test: x == x* == x*x.
  bool is_projection() const;

  friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y);
  friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y);
  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);
  AlgebraElement operator-() const { return scaled(Rational(-1)); }

  bool operator==(const AlgebraElement& other) const = default;

private:
  int level_ = 0;
  std::vector<TranslationAtom> atoms_;
};

inline AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y) {
  return x * y - y * x;
}

/// Outcome of an exact identity check; exact_pass iff residual has no atoms.
struct VerificationReport {
  std::string identity;
  int level = 0;
  AlgebraElement residual;
  bool exact_pass = false;
};

/// Order-preserving translation with initial projection `initial` and final
/// projection `final_` (equal measures). Throws EquivalenceError on
/// mismatched measures.
AlgebraElement partial_isometry(const DyadicSet& initial, const DyadicSet& final_);

/// Same, but cell i of `initial` (at the common refinement level) is sent to
/// cell matching[i] of `final_`; `matching` must be a permutation.
AlgebraElement partial_isometry(const DyadicSet& initial, const DyadicSet& final_,
                                std::span<const std::size_t> matching);

/// Checks v*v = E, vv* = F, v = vE = Fv and v* = Ev* = v*F exactly.
/// The report's residual is the first nonzero defect (zero element on pass).
VerificationReport verify_partial_isometry(const AlgebraElement& v, const DyadicSet& initial,
                                           const DyadicSet& final_);

/// Sum of the order-preserving translations for (E_j, F_j) pairs with
/// pairwise disjoint sources and targets. The result is verified to be a
/// partial isometry with initial projection U E_j and final projection U F_j.
AlgebraElement sum_partial_isometries(
    const std::vector<std::pair<DyadicSet, DyadicSet>>& pairs);

/// U E U* for unitary U (throws PreconditionError otherwise). The result is
/// checked to be a projection of the model and returned as its set.
DyadicSet conjugate_projection(const AlgebraElement& unitary, const DyadicSet& set);

}  // namespace opcomm
