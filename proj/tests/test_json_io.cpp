#include <doctest.h>

#include <random>
#include <vector>

#include "opcomm/errors.hpp"
#include "opcomm/json_io.hpp"

namespace opcomm {
namespace {

StandardInterval iv(int level, std::int64_t index) { return {level, index}; }

TEST_CASE("rational json forms") {
  CHECK(rational_to_json(make_rational(-3, 4)).dump() == R"({"num":-3,"den":4})");
  CHECK(rational_from_json(Json::parse(R"({"num":-3,"den":4})")) == make_rational(-3, 4));
  CHECK(rational_from_json(Json(7)) == Rational(7));
  CHECK(rational_from_json(Json("5/8")) == make_rational(5, 8));
  // Values beyond 64 bits travel as decimal strings.
  const Rational huge = make_rational(pow2(70), Integer(3));
  const auto round_trip = rational_from_json(rational_to_json(huge));
  CHECK(round_trip == huge);
  CHECK(rational_to_json(huge).at("num").is_string());
  CHECK_THROWS_AS(rational_from_json(Json::parse("[1]")), Error);
  CHECK_THROWS_AS(rational_from_json(Json("x/y")), Error);
}

TEST_CASE("dyadic set json round trip") {
  const auto set = DyadicSet::normalize({iv(2, 3), iv(1, 0)});
  CHECK(to_json(set).dump() == R"([{"level":1,"index":0},{"level":2,"index":3}])");
  CHECK(dyadic_set_from_json(to_json(set)) == set);
  CHECK(dyadic_set_from_json(Json::parse("[]")) == DyadicSet());
  CHECK_THROWS_AS(dyadic_set_from_json(Json::parse(R"([{"level":1,"index":5}])")),
                  InvalidIntervalError);
  CHECK_THROWS_AS(dyadic_set_from_json(Json::parse("{}")), Error);
}

TEST_CASE("algebra element json round trip canonicalizes") {
  const auto v = AlgebraElement::translation(iv(2, 0), iv(2, 2), make_rational(1, 3));
  CHECK(algebra_element_from_json(to_json(v)) == v);
  // Sibling halves parse back to their coarsening.
  const auto split = Json::parse(
      R"([{"source":{"level":1,"index":0},"target":{"level":1,"index":0},"coefficient":1},
          {"source":{"level":1,"index":1},"target":{"level":1,"index":1},"coefficient":1}])");
  CHECK(algebra_element_from_json(split) == AlgebraElement::identity());
  CHECK(to_json(AlgebraElement::zero()).dump() == "[]");
}

TEST_CASE("injection element json round trip") {
  const auto [v, w] = build_halving_isometries();
  const auto element = v + w.scaled(make_rational(-2, 5));
  CHECK(injection_element_from_json(to_json(element)) == element);
  CHECK(to_json(v).dump() ==
        R"([{"modulus":1,"residue":0,"scale_num":2,"scale_den":1,"shift":0,"coefficient":{"num":1,"den":1}}])");
  CHECK_THROWS_AS(injection_element_from_json(Json::parse(
                      R"([{"modulus":3,"residue":0,"scale_num":2,"scale_den":3,"shift":0,"coefficient":1}])")),
                  Error);
  CHECK_THROWS_AS(injection_element_from_json(Json::parse(
                      R"([{"modulus":2,"residue":0,"scale_num":2,"scale_den":4,"shift":0,"coefficient":1}])")),
                  Error);
}

TEST_CASE("matrix json uses fraction strings") {
  RationalMatrix m(2);
  m.at(0, 1) = make_rational(1, 2);
  m.at(1, 0) = -3;
  CHECK(to_json(m).dump() == R"([["0","1/2"],["-3","0"]])");
  CHECK(matrix_from_json(to_json(m)) == m);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([["0"],["1","2"]])")), Error);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"("nope")")), Error);
}

TEST_CASE("certificate json carries the pinned fields") {
  const auto cert = verify_identity_t1(3);
  const auto node = certificate_to_json(cert);
  CHECK(node.at("k") == 3);
  CHECK(node.at("pass") == true);
  CHECK(node.at("residual_atoms") == 0);
  CHECK(node.at("trace_of_identity") == "1");
  CHECK(node.at("initial_projection_measure") == "3/4");
  CHECK(node.size() == 5);
}

TEST_CASE("random elements survive the json round trip") {
  std::mt19937_64 rng(271);
  std::uniform_int_distribution<int> level_dist(0, 5);
  std::uniform_int_distribution<long> num_dist(-9, 9);
  std::uniform_int_distribution<long> den_dist(1, 9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<TranslationAtom> atoms;
    for (int i = 0; i < 4; ++i) {
      const int level = level_dist(rng);
      std::uniform_int_distribution<std::int64_t> index_dist(0, (std::int64_t(1) << level) - 1);
      atoms.push_back({{level, index_dist(rng)},
                       {level, index_dist(rng)},
                       make_rational(num_dist(rng), den_dist(rng))});
    }
    const auto element = AlgebraElement::from_atoms(std::move(atoms));
    REQUIRE(algebra_element_from_json(to_json(element)) == element);
  }
}

}  // namespace
}  // namespace opcomm
