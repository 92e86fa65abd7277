#pragma once

#include <utility>

#include "opcomm/matrix.hpp"

namespace opcomm {

/// An exact decomposition M = X*Y - Y*X together with the similarity S that
/// carried M to zero-diagonal form.
struct CommutatorWitness {
  RationalMatrix m;
  RationalMatrix x;
  RationalMatrix y;
  RationalMatrix s;
};

/// Finds an invertible S with N = S*M*S^{-1} having an all-zero diagonal,
/// by elementary shear conjugations. Throws TraceObstructionError when
/// trace(M) != 0 and ShapeError on an empty matrix.
std::pair<RationalMatrix, RationalMatrix> zero_diagonal_similarity(const RationalMatrix& m);

/// Realizes a trace-zero matrix as a single commutator: with N = S*M*S^{-1}
/// zero-diagonal, X0 = diag(0..d-1) and (Y0)_{ij} = N_{ij}/(i-j) satisfy
/// X0*Y0 - Y0*X0 = N, and conjugating back gives M = X*Y - Y*X exactly.
CommutatorWitness commutator_realize(const RationalMatrix& m);

/// Exact test of X*Y - Y*X == M. Throws ShapeError on mismatched dimensions.
bool verify_commutator(const RationalMatrix& x, const RationalMatrix& y,
                       const RationalMatrix& m);

}  // namespace opcomm
