#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "opcomm/algebra.hpp"
#include "opcomm/construction.hpp"
#include "opcomm/rational.hpp"

namespace opcomm {

/// Dense square matrix of exact rationals.
class RationalMatrix {
public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t dimension)
      : dim_(dimension), entries_(dimension * dimension, Rational(0)) {}

  static RationalMatrix identity(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  bool is_zero() const;

  Rational& at(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Rational& at(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  RationalMatrix transpose() const;
  Rational trace() const;
  RationalMatrix scaled(const Rational& factor) const;

  /// Exact inverse by Gauss-Jordan elimination; throws SingularMatrixError.
  RationalMatrix inverse() const;

  /// Rows newline-separated, entries comma-separated as "num/den".
  std::string to_csv() const;

  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  RationalMatrix operator-() const { return scaled(Rational(-1)); }

  bool operator==(const RationalMatrix& other) const = default;

private:
  std::size_t dim_ = 0;
  std::vector<Rational> entries_;
};

/// The 2^k x 2^k matrix of x on the level-k cell basis: an atom (I, J, c)
/// contributes c at (row, col) = (target cell, source cell) for each level-k
/// subcell, order preserved. A *-homomorphism: products map to products and
/// adjoints to transposes. Throws RefinementError when k is below x's grid
/// level or above the grid cap.
RationalMatrix represent(const AlgebraElement& x, int k);

/// Asserts represent(x*y, k) = represent(x, k) * represent(y, k) and
/// 2^{-k} * matrix-trace(represent(x, k)) = trace(x); true iff both hold.
bool crosscheck(const AlgebraElement& x, const AlgebraElement& y, int k);

/// Re-runs the depth-k identity check entirely in 2^{k+1}-dimensional matrix
/// arithmetic and compares every residual with the symbolic certificate.
bool verify_t1_matrix(int k, FamilyLayout layout = FamilyLayout::Forward);

}  // namespace opcomm
