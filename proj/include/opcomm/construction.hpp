#pragma once

#include <string>
#include <vector>

#include "opcomm/algebra.hpp"
#include "opcomm/dyadic.hpp"
#include "opcomm/rational.hpp"

namespace opcomm {

/// Which concrete interval assignment realizes the bisection family. Both
/// satisfy the same measure constraints; the suite runs both to confirm the
/// identities do not depend on the choice.
enum class FamilyLayout { Forward, Mirrored };

std::string layout_name(FamilyLayout layout);

/// The truncated bisection family at depth k:
///   bands E_1..E_k, pairwise disjoint, measure(E_n) = 2^{-n};
///   fine bands F_1..F_k inside E_1, pairwise disjoint, measure 2^{-(n+1)};
///   each E_n split into equal halves E_n' and E_n''.
struct SpectralFamily {
  int k = 0;
  FamilyLayout layout = FamilyLayout::Forward;
  std::vector<DyadicSet> e;        // e[n-1] = E_n
  std::vector<DyadicSet> f;        // f[n-1] = F_n
  std::vector<DyadicSet> e_left;   // e_left[n-1] = E_n'
  std::vector<DyadicSet> e_right;  // e_right[n-1] = E_n''
};

/// Throws Error unless all structural constraints above hold exactly.
void validate_family(const SpectralFamily& family);

/// Builds the depth-k family. Forward uses E_n = [1-2^{-(n-1)}, 1-2^{-n}),
/// F_n = [1/2-2^{-n}, 1/2-2^{-(n+1)}); Mirrored reflects the bands to
/// E_n = [2^{-n}, 2^{-(n-1)}), F_n = [1-2^{-n}, 1-2^{-(n+1)}).
/// Throws LevelError for k < 2 (the construction needs E_2 and F_1).
SpectralFamily build_spectral_family(int k, FamilyLayout layout = FamilyLayout::Forward);

/// The graded diagonal operator: value 2^{n-1} on band E_n, n = 1..k.
class GradedMultiplicationOperator {
public:
  explicit GradedMultiplicationOperator(const SpectralFamily& family);

  int materialization_level() const { return k_; }
  const DyadicSet& band(int n) const;  // E_n, 1-based
  Rational value(int n) const;         // 2^{n-1}

  /// Sum over n <= k of 2^{n-1} * projection(E_n); diagonal, self-adjoint.
  AlgebraElement materialize() const;

private:
  int k_;
  std::vector<DyadicSet> bands_;
};

/// Sum over n = 1..k-1 of the translations E_n' -> E_{n+1} and E_n'' -> F_n;
/// a partial isometry from E_1 u ... u E_{k-1} onto
/// (E_2 u ... u E_k) u (F_1 u ... u F_{k-1}), verified exactly.
AlgebraElement build_u1(const SpectralFamily& family);

/// Same sources with the two targets per stage swapped:
/// E_n' -> F_n and E_n'' -> E_{n+1}.
AlgebraElement build_u2(const SpectralFamily& family);

GradedMultiplicationOperator build_a(const SpectralFamily& family);

/// Exact record of the depth-k identity check on the core projection
/// P_{k-1} = E_1 u ... u E_{k-1}.
struct CommutatorCertificate {
  int k = 0;
  FamilyLayout layout = FamilyLayout::Forward;
  AlgebraElement u1;
  AlgebraElement u2;
  AlgebraElement a;
  DyadicSet core;  // P_{k-1}

  /// (2A - U1*AU1 - U2*AU2 + I) * P_{k-1}; zero iff the identity holds.
  AlgebraElement residual;

  /// ([A U1, -U1*] + [A U2, -U2*] - I) * P_{k-1}. The truncated U1, U2 are
  /// not coisometries (their final projection Q misses the sliver P \ Q of
  /// measure 2^{-k}), so this form does not vanish outright; it equals
  /// 2 A restricted to P \ Q, and vanishes exactly on P n Q.
  AlgebraElement commutator_form_residual;

  /// The predicted value of the line above: 2 * A * projection(P \ Q).
  AlgebraElement truncation_defect;

  bool pass = false;  // residual zero and commutator form matches its defect
};

/// Builds the family and U1, U2, A at depth k and checks the identity
/// exactly. Throws LevelError for k < 2.
CommutatorCertificate verify_identity_t1(int k, FamilyLayout layout = FamilyLayout::Forward);

}  // namespace opcomm
