#include "opcomm/matrix.hpp"

#include <cstdint>
#include <utility>

#include "opcomm/errors.hpp"

namespace opcomm {

RationalMatrix RationalMatrix::identity(std::size_t dimension) {
  RationalMatrix m(dimension);
  for (std::size_t i = 0; i < dimension; ++i) {
    m.at(i, i) = 1;
  }
  return m;
}

bool RationalMatrix::is_zero() const {
  for (const auto& entry : entries_) {
    if (entry != 0) return false;
  }
  return true;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      m.at(j, i) = at(i, j);
    }
  }
  return m;
}

Rational RationalMatrix::trace() const {
  Rational sum(0);
  for (std::size_t i = 0; i < dim_; ++i) {
    sum += at(i, i);
  }
  return sum;
}

RationalMatrix RationalMatrix::scaled(const Rational& factor) const {
  RationalMatrix m = *this;
  for (auto& entry : m.entries_) {
    entry *= factor;
  }
  return m;
}

RationalMatrix RationalMatrix::inverse() const {
  RationalMatrix work = *this;
  RationalMatrix result = identity(dim_);
  for (std::size_t col = 0; col < dim_; ++col) {
    std::size_t pivot = col;
    while (pivot < dim_ && work.at(pivot, col) == 0) {
      ++pivot;
    }
    if (pivot == dim_) {
      throw SingularMatrixError("matrix has no inverse (rank < " +
                                std::to_string(dim_) + ")");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < dim_; ++j) {
        std::swap(work.at(pivot, j), work.at(col, j));
        std::swap(result.at(pivot, j), result.at(col, j));
      }
    }
    const Rational scale = Rational(1) / work.at(col, col);
    for (std::size_t j = 0; j < dim_; ++j) {
      work.at(col, j) *= scale;
      result.at(col, j) *= scale;
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      if (i == col || work.at(i, col) == 0) continue;
      const Rational factor = work.at(i, col);
      for (std::size_t j = 0; j < dim_; ++j) {
        work.at(i, j) -= factor * work.at(col, j);
        result.at(i, j) -= factor * result.at(col, j);
      }
    }
  }
  return result;
}

std::string RationalMatrix::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j > 0) out += ',';
      out += rational_to_string(at(i, j));
    }
    out += '\n';
  }
  return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim_ != b.dim_) {
    throw ShapeError("matrix sum of dimensions " + std::to_string(a.dim_) + " and " +
                     std::to_string(b.dim_));
  }
  RationalMatrix m = a;
  for (std::size_t i = 0; i < m.entries_.size(); ++i) {
    m.entries_[i] += b.entries_[i];
  }
  return m;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  return a + b.scaled(Rational(-1));
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim_ != b.dim_) {
    throw ShapeError("matrix product of dimensions " + std::to_string(a.dim_) + " and " +
                     std::to_string(b.dim_));
  }
  RationalMatrix m(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i) {
    for (std::size_t l = 0; l < a.dim_; ++l) {
      const Rational& left = a.at(i, l);
      if (left == 0) continue;  // our matrices are mostly partial permutations
      for (std::size_t j = 0; j < a.dim_; ++j) {
        const Rational& right = b.at(l, j);
        if (right == 0) continue;
        m.at(i, j) += left * right;
      }
    }
  }
  return m;
}

RationalMatrix represent(const AlgebraElement& x, int k) {
  const auto atoms = x.refined_atoms(k);  // validates the level bounds
  RationalMatrix m(std::size_t(1) << k);
  for (const auto& atom : atoms) {
    m.at(std::size_t(atom.target.index), std::size_t(atom.source.index)) += atom.coefficient;
  }
  return m;
}

bool crosscheck(const AlgebraElement& x, const AlgebraElement& y, int k) {
  const RationalMatrix mx = represent(x, k);
  const RationalMatrix my = represent(y, k);
  if (represent(x * y, k) != mx * my) {
    return false;
  }
  return mx.trace() / Rational(pow2(unsigned(k))) == x.trace();
}

bool verify_t1_matrix(int k, FamilyLayout layout) {
  const CommutatorCertificate cert = verify_identity_t1(k, layout);
  const int level = k + 1;

  const RationalMatrix u1 = represent(cert.u1, level);
  const RationalMatrix u2 = represent(cert.u2, level);
  const RationalMatrix a = represent(cert.a, level);
  const RationalMatrix core = represent(AlgebraElement::projection(cert.core), level);
  const RationalMatrix id = RationalMatrix::identity(std::size_t(1) << level);
  const RationalMatrix u1t = u1.transpose();
  const RationalMatrix u2t = u2.transpose();

  const RationalMatrix residual =
      (a.scaled(Rational(2)) - u1t * a * u1 - u2t * a * u2 + id) * core;
  if (!residual.is_zero() || residual != represent(cert.residual, level)) {
    return false;
  }

  const RationalMatrix au1 = a * u1;
  const RationalMatrix au2 = a * u2;
  const RationalMatrix form =
      ((-(au1 * u1t)) - (-(u1t * au1)) + (-(au2 * u2t)) - (-(u2t * au2)) - id) * core;
  if (form != represent(cert.commutator_form_residual, level)) {
    return false;
  }
  if (form != represent(cert.truncation_defect, level)) {
    return false;
  }
  return cert.pass;
}

}  // namespace opcomm
