#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opcomm/matrix.hpp"
#include "opcomm/rational.hpp"

namespace opcomm {

/// A partial injection of the natural numbers along an affine dyadic map:
/// domain {n : n = residue mod 2^dom_log}, sending residue + m*2^dom_log to
/// shift + m*2^im_log. With shift < 2^im_log the image is exactly the residue
/// class of shift mod 2^im_log, so inverses and composites stay in the class.
struct AffineInjection {
  int dom_log = 0;
  std::int64_t residue = 0;
  int im_log = 0;
  std::int64_t shift = 0;

  bool operator==(const AffineInjection& other) const = default;
};

/// Validates 0 <= residue < 2^dom_log and 0 <= shift < 2^im_log.
AffineInjection make_injection(int dom_log, std::int64_t residue, int im_log,
                               std::int64_t shift);

/// The image of n, or nothing when n is outside the domain class.
std::optional<std::int64_t> apply(const AffineInjection& map, std::int64_t n);

/// The inverse partial injection (swap domain and image data).
AffineInjection inverse(const AffineInjection& map);

/// after o before, or nothing when before's image misses after's domain.
std::optional<AffineInjection> compose(const AffineInjection& after,
                                       const AffineInjection& before);

struct WeightedInjection {
  AffineInjection map;
  Rational coefficient;

  bool operator==(const WeightedInjection& other) const = default;
};

/// Finite rational combination of affine partial injections, in canonical
/// form: every atom's domain refined to one common modulus 2^J (minimal J),
/// duplicates merged, zeros dropped, atoms ordered.
class InjectionElement {
public:
  InjectionElement() = default;  // zero

  static InjectionElement zero() { return InjectionElement(); }
  static InjectionElement identity();
  static InjectionElement atom(const AffineInjection& map,
                               const Rational& coefficient = Rational(1));
  static InjectionElement from_atoms(std::vector<WeightedInjection> atoms);

  bool is_zero() const { return atoms_.empty(); }
  int modulus_log() const { return modulus_log_; }
  const std::vector<WeightedInjection>& atoms() const { return atoms_; }

  /// Atom list with every domain refined to modulus 2^level, ordered.
  std::vector<WeightedInjection> refined_atoms(int level) const;

  InjectionElement adjoint() const;
  InjectionElement scaled(const Rational& factor) const;

  friend InjectionElement operator+(const InjectionElement& x, const InjectionElement& y);
  friend InjectionElement operator-(const InjectionElement& x, const InjectionElement& y);
  friend InjectionElement operator*(const InjectionElement& x, const InjectionElement& y);
  InjectionElement operator-() const { return scaled(Rational(-1)); }

  bool operator==(const InjectionElement& other) const = default;

private:
  int modulus_log_ = 0;
  std::vector<WeightedInjection> atoms_;
};

inline InjectionElement commutator(const InjectionElement& x, const InjectionElement& y) {
  return x * y - y * x;
}

enum class InjectionOp { Add, Multiply, AdjointOfX };

InjectionElement injection_algebra(const InjectionElement& x, const InjectionElement& y,
                                   InjectionOp op);

struct HalvingIsometries {
  InjectionElement v;  // n -> 2n
  InjectionElement w;  // n -> 2n + 1
};

/// Builds the halving pair and re-derives v*v = I = w*w, vv* = even-class
/// projection, ww* = odd-class projection, vv* + ww* = I, all exactly.
HalvingIsometries build_halving_isometries();

/// Outcome of an exact identity check in the injection algebra.
struct InjectionReport {
  std::string identity;
  InjectionElement residual;
  bool exact_pass = false;
};

/// Checks V*V - VV* + W*W - WW* = I exactly, and again in the grouped form
/// [V*, V] + [W*, W] = I.
InjectionReport verify_identity_t2();

/// The size x size 0/1 partial-permutation matrix of x on {0..size-1},
/// evaluated pointwise from the map definitions (entries leaving the window
/// are dropped).
RationalMatrix shadow_matrix(const InjectionElement& x, std::size_t size);

/// Replays the identity check in 2n x 2n shadow matrices and compares with
/// the symbolic computation compressed to {0..n-1}.
bool verify_identity_t2_shadow(std::size_t n);

}  // namespace opcomm
