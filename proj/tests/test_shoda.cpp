#include <doctest.h>

#include <cstddef>
#include <random>

#include "opcomm/errors.hpp"
#include "opcomm/matrix.hpp"
#include "opcomm/shoda.hpp"

namespace opcomm {
namespace {

RationalMatrix random_trace_zero(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<long> entry_dist(-10, 10);
  RationalMatrix m(d);
  Rational diagonal_sum(0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m.at(i, j) = entry_dist(rng);
    }
    if (i + 1 < d) {
      diagonal_sum += m.at(i, i);
    }
  }
  m.at(d - 1, d - 1) = -diagonal_sum;
  return m;
}

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t d, long bound) {
  std::uniform_int_distribution<long> entry_dist(-bound, bound);
  RationalMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m.at(i, j) = entry_dist(rng);
    }
  }
  return m;
}

RationalMatrix random_invertible(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<long> entry_dist(-2, 2);
  auto m = RationalMatrix::identity(d);
  for (int step = 0; step < 8; ++step) {
    auto shear = RationalMatrix::identity(d);
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, d - 1)(rng);
    std::size_t j = std::uniform_int_distribution<std::size_t>(0, d - 2)(rng);
    if (j >= i) ++j;
    shear.at(i, j) = entry_dist(rng);
    m = m * shear;
  }
  return m;
}

bool diagonal_is_zero(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    if (m.at(i, i) != 0) return false;
  }
  return true;
}

TEST_CASE("zero matrix reduces trivially") {
  const RationalMatrix zero(3);
  const auto [s, n] = zero_diagonal_similarity(zero);
  CHECK(s == RationalMatrix::identity(3));
  CHECK(n == zero);
  const auto witness = commutator_realize(zero);
  CHECK(witness.y == zero);
  CHECK(witness.x.at(0, 0) == 0);
  CHECK(witness.x.at(1, 1) == 1);
  CHECK(witness.x.at(2, 2) == 2);
}

TEST_CASE("plus-minus diagonal gets sheared to zero diagonal") {
  RationalMatrix m(2);
  m.at(0, 0) = 1;
  m.at(1, 1) = -1;
  const auto [s, n] = zero_diagonal_similarity(m);
  CHECK(diagonal_is_zero(n));
  CHECK(n == s * m * s.inverse());
  CHECK(!n.is_zero());
}

TEST_CASE("already-zero diagonal is left untouched") {
  RationalMatrix m(2);
  m.at(0, 1) = 1;
  const auto [s, n] = zero_diagonal_similarity(m);
  CHECK(s == RationalMatrix::identity(2));
  CHECK(n == m);

  const auto witness = commutator_realize(m);
  CHECK(witness.x.at(0, 0) == 0);
  CHECK(witness.x.at(1, 1) == 1);
  CHECK(witness.y.at(0, 1) == -1);
  CHECK(witness.y.at(1, 0) == 0);
  CHECK(verify_commutator(witness.x, witness.y, m));
}

TEST_CASE("scalar blocks fall back to a mixing shear") {
  RationalMatrix m(3);
  m.at(0, 0) = 1;
  m.at(1, 1) = 1;
  m.at(2, 2) = -2;
  const auto [s, n] = zero_diagonal_similarity(m);
  CHECK(diagonal_is_zero(n));
  CHECK(n == s * m * s.inverse());
  CHECK(verify_commutator(commutator_realize(m).x, commutator_realize(m).y, m));
}

TEST_CASE("nonzero trace is refused") {
  const auto id2 = RationalMatrix::identity(2);
  CHECK_THROWS_AS(zero_diagonal_similarity(id2), TraceObstructionError);
  CHECK_THROWS_AS(commutator_realize(id2), TraceObstructionError);
  for (std::size_t d = 1; d <= 6; ++d) {
    CHECK_THROWS_AS(commutator_realize(RationalMatrix::identity(d)),
                    TraceObstructionError);
  }
  CHECK_THROWS_AS(zero_diagonal_similarity(RationalMatrix(0)), ShapeError);
}

TEST_CASE("one-dimensional case degenerates cleanly") {
  const RationalMatrix zero1(1);
  const auto witness = commutator_realize(zero1);
  CHECK(witness.x * witness.y - witness.y * witness.x == zero1);
}

TEST_CASE("random trace-zero matrices become exact witnesses") {
  std::mt19937_64 rng(60221);
  std::uniform_int_distribution<std::size_t> dim_dist(1, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_trace_zero(rng, dim_dist(rng));
    const auto witness = commutator_realize(m);
    // Direct multiplication, not the packaged check.
    REQUIRE(witness.x * witness.y - witness.y * witness.x == m);
    REQUIRE(witness.s * m * witness.s.inverse() ==
            witness.s * witness.m * witness.s.inverse());
    REQUIRE(diagonal_is_zero(witness.s * m * witness.s.inverse()));
  }
}

TEST_CASE("commutator test is definitional and rejects shape mismatches") {
  std::mt19937_64 rng(4096);
  const auto x = random_matrix(rng, 3, 5);
  const auto y = random_matrix(rng, 3, 5);
  CHECK(verify_commutator(x, y, x * y - y * x));
  CHECK(!verify_commutator(x, y, x * y - y * x + RationalMatrix::identity(3)));
  CHECK(verify_commutator(x, x, RationalMatrix(3)));  // self-commutator is zero
  CHECK_THROWS_AS(verify_commutator(x, RationalMatrix(2), RationalMatrix(3)), ShapeError);
}

TEST_CASE("commutator traces vanish identically") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_matrix(rng, 4, 10);
    const auto y = random_matrix(rng, 4, 10);
    REQUIRE((x * y - y * x).trace() == 0);
  }
}

TEST_CASE("no tiny integer pair gives the two-dimensional identity") {
  // All 3^4 * 3^4 pairs of 2x2 matrices with entries in {-1,0,1}.
  const auto id2 = RationalMatrix::identity(2);
  long misses = 0;
  for (int xe = 0; xe < 81; ++xe) {
    for (int ye = 0; ye < 81; ++ye) {
      RationalMatrix x(2), y(2);
      int xc = xe, yc = ye;
      for (std::size_t cell = 0; cell < 4; ++cell) {
        x.at(cell / 2, cell % 2) = xc % 3 - 1;
        y.at(cell / 2, cell % 2) = yc % 3 - 1;
        xc /= 3;
        yc /= 3;
      }
      if (x * y - y * x == id2) {
        ++misses;
      }
    }
  }
  CHECK(misses == 0);
}

TEST_CASE("witnesses conjugate along similarities") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 4;
    const auto m = random_trace_zero(rng, d);
    const auto witness = commutator_realize(m);
    const auto t = random_invertible(rng, d);
    const auto ti = t.inverse();
    REQUIRE(verify_commutator(ti * witness.x * t, ti * witness.y * t, ti * m * t));
  }
}

}  // namespace
}  // namespace opcomm
