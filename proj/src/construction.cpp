#include "opcomm/construction.hpp"

#include <cstdint>

#include "opcomm/errors.hpp"

namespace opcomm {

namespace {

StandardInterval forward_e(int n) {
  return {n, (std::int64_t(1) << n) - 2};
}

StandardInterval forward_f(int n) {
  return {n + 1, (std::int64_t(1) << n) - 2};
}

StandardInterval mirrored_e(int n) {
  return {n, 1};
}

StandardInterval mirrored_f(int n) {
  return {n + 1, (std::int64_t(1) << (n + 1)) - 2};
}

DyadicSet left_half(const StandardInterval& interval) {
  return DyadicSet::single({interval.level + 1, 2 * interval.index});
}

DyadicSet right_half(const StandardInterval& interval) {
  return DyadicSet::single({interval.level + 1, 2 * interval.index + 1});
}

DyadicSet union_of(const std::vector<DyadicSet>& sets, int first, int last) {
  DyadicSet result;
  for (int n = first; n <= last; ++n) {
    result = set_union(result, sets[std::size_t(n - 1)]);
  }
  return result;
}

}  // namespace

std::string layout_name(FamilyLayout layout) {
  return layout == FamilyLayout::Forward ? "forward" : "mirrored";
}

void validate_family(const SpectralFamily& family) {
  const int k = family.k;
  if (k < 2) {
    throw LevelError("bisection family needs depth >= 2, got " + std::to_string(k));
  }
  if (family.e.size() != std::size_t(k) || family.f.size() != std::size_t(k) ||
      family.e_left.size() != std::size_t(k) || family.e_right.size() != std::size_t(k)) {
    throw Error("bisection family arrays must each have k entries");
  }
  DyadicSet e_union, f_union;
  for (int n = 1; n <= k; ++n) {
    const auto& e = family.e[std::size_t(n - 1)];
    const auto& f = family.f[std::size_t(n - 1)];
    if (!set_intersect(e_union, e).empty()) {
      throw Error("bands E_n are not pairwise disjoint");
    }
    if (!set_intersect(f_union, f).empty()) {
      throw Error("bands F_n are not pairwise disjoint");
    }
    e_union = set_union(e_union, e);
    f_union = set_union(f_union, f);
    if (e.measure() != DyadicRational(Integer(1), unsigned(n))) {
      throw Error("measure(E_" + std::to_string(n) + ") != 2^-" + std::to_string(n));
    }
    if (f.measure() != DyadicRational(Integer(1), unsigned(n + 1))) {
      throw Error("measure(F_" + std::to_string(n) + ") != 2^-" + std::to_string(n + 1));
    }
    const auto& left = family.e_left[std::size_t(n - 1)];
    const auto& right = family.e_right[std::size_t(n - 1)];
    if (!set_intersect(left, right).empty() || set_union(left, right) != e) {
      throw Error("E_" + std::to_string(n) + " is not the disjoint union of its halves");
    }
    if (left.measure() != right.measure()) {
      throw Error("halves of E_" + std::to_string(n) + " have unequal measures");
    }
  }
  if (e_union.measure() != DyadicRational(Integer(1), 0) - DyadicRational(Integer(1), unsigned(k))) {
    throw Error("union of bands does not have measure 1 - 2^-k");
  }
  if (!family.e[0].contains(f_union)) {
    throw Error("fine bands F_n must lie inside E_1");
  }
}

SpectralFamily build_spectral_family(int k, FamilyLayout layout) {
  if (k < 2) {
    throw LevelError("bisection family needs depth >= 2, got " + std::to_string(k));
  }
  if (k + 1 > kMaxLevel) {
    throw LevelError("depth " + std::to_string(k) + " exceeds the level-" +
                     std::to_string(kMaxLevel) + " grid");
  }
  SpectralFamily family;
  family.k = k;
  family.layout = layout;
  for (int n = 1; n <= k; ++n) {
    const StandardInterval e =
        layout == FamilyLayout::Forward ? forward_e(n) : mirrored_e(n);
    const StandardInterval f =
        layout == FamilyLayout::Forward ? forward_f(n) : mirrored_f(n);
    family.e.push_back(DyadicSet::single(e));
    family.f.push_back(DyadicSet::single(f));
    family.e_left.push_back(left_half(e));
    family.e_right.push_back(right_half(e));
  }
  validate_family(family);
  return family;
}

GradedMultiplicationOperator::GradedMultiplicationOperator(const SpectralFamily& family)
    : k_(family.k), bands_(family.e) {
  validate_family(family);
}

const DyadicSet& GradedMultiplicationOperator::band(int n) const {
  if (n < 1 || n > k_) {
    throw LevelError("band index " + std::to_string(n) + " outside 1.." + std::to_string(k_));
  }
  return bands_[std::size_t(n - 1)];
}

Rational GradedMultiplicationOperator::value(int n) const {
  if (n < 1 || n > k_) {
    throw LevelError("band index " + std::to_string(n) + " outside 1.." + std::to_string(k_));
  }
  return Rational(pow2(unsigned(n - 1)));
}

AlgebraElement GradedMultiplicationOperator::materialize() const {
  AlgebraElement sum;
  for (int n = 1; n <= k_; ++n) {
    sum = sum + AlgebraElement::projection(band(n)).scaled(value(n));
  }
  return sum;
}

AlgebraElement build_u1(const SpectralFamily& family) {
  validate_family(family);
  std::vector<std::pair<DyadicSet, DyadicSet>> pairs;
  for (int n = 1; n <= family.k - 1; ++n) {
    pairs.push_back({family.e_left[std::size_t(n - 1)], family.e[std::size_t(n)]});
    pairs.push_back({family.e_right[std::size_t(n - 1)], family.f[std::size_t(n - 1)]});
  }
  return sum_partial_isometries(pairs);
}

AlgebraElement build_u2(const SpectralFamily& family) {
  validate_family(family);
  std::vector<std::pair<DyadicSet, DyadicSet>> pairs;
  for (int n = 1; n <= family.k - 1; ++n) {
    pairs.push_back({family.e_left[std::size_t(n - 1)], family.f[std::size_t(n - 1)]});
    pairs.push_back({family.e_right[std::size_t(n - 1)], family.e[std::size_t(n)]});
  }
  return sum_partial_isometries(pairs);
}

GradedMultiplicationOperator build_a(const SpectralFamily& family) {
  return GradedMultiplicationOperator(family);
}

CommutatorCertificate verify_identity_t1(int k, FamilyLayout layout) {
  const SpectralFamily family = build_spectral_family(k, layout);

  CommutatorCertificate cert;
  cert.k = k;
  cert.layout = layout;
  cert.u1 = build_u1(family);
  cert.u2 = build_u2(family);
  cert.a = build_a(family).materialize();
  cert.core = union_of(family.e, 1, k - 1);

  const AlgebraElement identity = AlgebraElement::identity();
  const AlgebraElement u1s = cert.u1.adjoint();
  const AlgebraElement u2s = cert.u2.adjoint();
  const AlgebraElement& a = cert.a;

  cert.residual = (a.scaled(Rational(2)) - u1s * a * cert.u1 - u2s * a * cert.u2 + identity)
                      .restricted_to(cert.core);

  const AlgebraElement form = commutator(a * cert.u1, -u1s) + commutator(a * cert.u2, -u2s);
  cert.commutator_form_residual = (form - identity).restricted_to(cert.core);

  // Truncation leaves the sliver P \ Q uncovered by the final projection Q
  // shared by U1 and U2, and there the commutator form misses by 2A exactly.
  const DyadicSet final_projection =
      set_union(union_of(family.e, 2, k), union_of(family.f, 1, k - 1));
  const DyadicSet sliver = set_subtract(cert.core, final_projection);
  cert.truncation_defect = a.scaled(Rational(2)).restricted_to(sliver);

  const DyadicSet covered = set_intersect(cert.core, final_projection);
  const bool form_vanishes_on_covered =
      (form - identity).restricted_to(covered).is_zero();

  cert.pass = cert.residual.is_zero() &&
              cert.commutator_form_residual == cert.truncation_defect &&
              form_vanishes_on_covered;
  return cert;
}

}  // namespace opcomm
