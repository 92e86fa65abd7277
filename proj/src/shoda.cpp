#include "opcomm/shoda.hpp"

#include <cstddef>
#include <string>

#include "opcomm/errors.hpp"

namespace opcomm {

namespace {

// Conjugates work by the shear I + t*e_{row,col}, accumulating it into s.
void shear(RationalMatrix& work, RationalMatrix& s, std::size_t row, std::size_t col,
           const Rational& t) {
  const std::size_t d = work.dimension();
  RationalMatrix shear_matrix = RationalMatrix::identity(d);
  shear_matrix.at(row, col) = t;
  RationalMatrix shear_inverse = RationalMatrix::identity(d);
  shear_inverse.at(row, col) = -t;
  work = shear_matrix * work * shear_inverse;
  s = shear_matrix * s;
}

}  // namespace

std::pair<RationalMatrix, RationalMatrix> zero_diagonal_similarity(const RationalMatrix& m) {
  const std::size_t d = m.dimension();
  if (d == 0) {
    throw ShapeError("cannot reduce an empty matrix");
  }
  if (m.trace() != 0) {
    throw TraceObstructionError("matrix trace is " + rational_to_string(m.trace()) +
                                ", not 0");
  }
  RationalMatrix work = m;
  RationalMatrix s = RationalMatrix::identity(d);
  for (std::size_t i = 0; i + 1 < d; ++i) {
    if (work.at(i, i) == 0) {
      continue;
    }
    std::size_t pivot = d;
    bool pivot_in_row = false;
    for (std::size_t l = i + 1; l < d; ++l) {
      if (work.at(i, l) != 0) {
        pivot = l;
        pivot_in_row = true;
        break;
      }
      if (pivot == d && work.at(l, i) != 0) {
        pivot = l;
      }
    }
    if (pivot == d) {
      // Row and column vanish past i, so work acts as the scalar work(i,i)
      // there; some later diagonal entry must differ or the trace could not
      // close to zero. Mixing with it creates the off-diagonal entry
      // work(i,i) - work(l,l) below the diagonal.
      std::size_t l = d;
      for (std::size_t candidate = i + 1; candidate < d; ++candidate) {
        if (work.at(candidate, candidate) != work.at(i, i)) {
          l = candidate;
          break;
        }
      }
      if (l == d) {
        throw Error("zero-trace matrix with no admissible mixing partner");
      }
      shear(work, s, l, i, Rational(1));
      pivot = l;
    }
    if (pivot_in_row) {
      // I + t*e_{pivot,i} sends the diagonal entry to
      // work(i,i) - t*work(i,pivot).
      shear(work, s, pivot, i, work.at(i, i) / work.at(i, pivot));
    } else {
      // I + t*e_{i,pivot} sends it to work(i,i) + t*work(pivot,i).
      shear(work, s, i, pivot, -work.at(i, i) / work.at(pivot, i));
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (work.at(i, i) != 0) {
      throw Error("diagonal reduction failed to close");
    }
  }
  return {s, work};
}

CommutatorWitness commutator_realize(const RationalMatrix& m) {
  auto [s, n] = zero_diagonal_similarity(m);
  const std::size_t d = m.dimension();

  RationalMatrix x0(d);
  for (std::size_t i = 0; i < d; ++i) {
    x0.at(i, i) = long(i);
  }
  RationalMatrix y0(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i != j) {
        y0.at(i, j) = n.at(i, j) / Rational(long(i) - long(j));
      }
    }
  }

  const RationalMatrix s_inverse = s.inverse();
  CommutatorWitness witness;
  witness.m = m;
  witness.x = s_inverse * x0 * s;
  witness.y = s_inverse * y0 * s;
  witness.s = s;
  if (!verify_commutator(witness.x, witness.y, m)) {
    throw Error("commutator witness failed its own verification");
  }
  return witness;
}

bool verify_commutator(const RationalMatrix& x, const RationalMatrix& y,
                       const RationalMatrix& m) {
  if (x.dimension() != y.dimension() || x.dimension() != m.dimension()) {
    throw ShapeError("commutator check needs equal dimensions, got " +
                     std::to_string(x.dimension()) + ", " + std::to_string(y.dimension()) +
                     ", " + std::to_string(m.dimension()));
  }
  return x * y - y * x == m;
}

}  // namespace opcomm
