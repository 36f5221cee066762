// Copyright 2026 The mpindex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"
#include "mpindex/io.hpp"
#include "mpindex/random.hpp"

using namespace mpindex;

TEST_CASE("complex numbers and arrays") {
  CHECK(complex_from_json(json::parse("[1.5, -2]")) == Complex(1.5, -2));
  CHECK(complex_from_json(json::parse("3")) == Complex(3, 0));
  CHECK_THROWS_AS(complex_from_json(json::parse("[1, 2, 3]")), ValidationError);
  CHECK_THROWS_AS(complex_from_json(json::parse("\"x\"")), ValidationError);
  CHECK(to_json(Complex(0.25, -1)) == json::parse("[0.25, -1.0]"));
  const CMatrix m = matrix_from_json(json::parse("[[[0,1],0],[1,[0,-1]]]"));
  CHECK(m(0, 0) == kI);
  CHECK(m(1, 1) == -kI);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[1, 2], [3]]")), DimensionError);
}

TEST_CASE("monomials") {
  const Monomial plain = monomial_from_json(json::parse(R"({"z": [[0.5, 0], 1]})"));
  CHECK(plain.coeff == Complex(1));
  CHECK(plain.g.isApprox(CMatrix::Identity(2, 2)));
  const Monomial rot = monomial_from_json(json::parse(R"({"coeff": [0, 2], "z": [0], "angles": [1.5707963267948966]})"));
  CHECK(std::abs(rot.g(0, 0) - kI) < 1e-15);
  CHECK(rot.coeff == Complex(0, 2));

  CHECK_THROWS_AS(monomial_from_json(json::parse(R"({"g": [[1]]})")), ValidationError);
  CHECK_THROWS_AS(monomial_from_json(json::parse(R"({"z": [0], "g": [[1]], "angles": [0]})")), ValidationError);
  CHECK_THROWS_AS(monomial_from_json(json::parse(R"({"z": [0, 0], "g": [[1]]})")), DimensionError);
  CHECK_THROWS_AS(monomial_from_json(json::parse(R"({"z": [0], "g": [[2]]})")), ValidationError);
  CHECK_THROWS_AS(monomial_from_json(json::parse(R"({"z": [0], "angles": [0, 1]})")), DimensionError);

  Rng rng(90);
  for (int trial = 0; trial < 20; ++trial) {
    Monomial m{random_complex(rng), random_vector(rng, 2), random_unitary(rng, 2)};
    const Monomial back = monomial_from_json(to_json(m));
    CHECK(std::abs(back.coeff - m.coeff) == 0.0);
    CHECK((back.z - m.z).norm() == 0.0);
    CHECK((back.g - m.g).norm() == 0.0);
  }
}

TEST_CASE("algebra elements") {
  const auto single = algebra_from_json(json::parse(R"({"z": [1]})"));
  CHECK(single.terms().size() == 1);
  const auto listed = algebra_from_json(json::parse(R"([{"z": [1]}, {"z": [2]}])"));
  CHECK(listed.terms().size() == 2);
  const auto wrapped = algebra_from_json(json::parse(R"({"terms": [{"z": [1]}, {"z": [1], "coeff": 2}]})"));
  REQUIRE(wrapped.terms().size() == 1);  // equal points merge
  CHECK(wrapped.terms()[0].coeff == Complex(3));
  CHECK_THROWS_AS(algebra_from_json(json::parse("[]")), ValidationError);
  CHECK_THROWS_AS(algebra_from_json(json::parse(R"([{"z": [1]}, {"z": [1, 2]}])")), DimensionError);
  CHECK_THROWS_AS(algebra_list_from_json(json::parse(R"([{"z": [1]}, {"z": [1, 2]}])")), DimensionError);

  const OrbifoldSpec spec{4, 1.0};
  const auto r = orbifold_element_from_json(spec, json::parse(R"([{"coords": [1, 0], "alpha": 1, "coeff": [0, 1]}])"));
  REQUIRE(r.terms().size() == 1);
  CHECK(std::abs(r.terms()[0].g(0, 0) - kI) < 1e-15);
  CHECK(r.terms()[0].coeff == kI);
  CHECK_THROWS_AS(orbifold_element_from_json(spec, json::parse(R"({"coords": [1, 0], "alpha": 4})")), ValidationError);
  CHECK_THROWS_AS(orbifold_element_from_json(spec, json::parse(R"({"coords": [0.5, 0]})")), ValidationError);
}

TEST_CASE("deterministic dumps") {
  json j{{"b", 1.0 / 3.0}, {"a", json::array({-0.0, 2.5e-17, 123456789.123456789})}};
  CHECK(dump_deterministic(j, -1) == R"({"a":[0.0,2.5e-17,123456789.123],"b":0.333333333333})");
  CHECK(dump_deterministic(j) == dump_deterministic(json::parse(dump_deterministic(j))));
}
