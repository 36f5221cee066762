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

#include <bit>

#include "doctest.h"
#include "mpindex/clifford.hpp"
#include "mpindex/random.hpp"

using namespace mpindex;
using Mask = CliffordElement::Mask;

namespace {

CliffordElement random_clifford(Rng& rng, int n) {
  CliffordElement a(n);
  for (Mask m = 0; m < (Mask{1} << (2 * n)); ++m) a.add_term(m, random_complex(rng));
  return a;
}

CliffordElement pair_element(int n, int j) {
  CliffordElement e(n);
  e.add_term(Mask{3} << (2 * j), 1.0);
  return e;
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("clifford relations on generators") {
  for (int n = 1; n <= 3; ++n)
    for (int j = 0; j < 2 * n; ++j)
      for (int k = 0; k < 2 * n; ++k) {
        auto ej = CliffordElement::generator(n, j), ek = CliffordElement::generator(n, k);
        auto anti = ej * ek + ek * ej;
        if (j == k) {
          CHECK(anti.terms().size() == 1);
          CHECK(anti.coefficient(0) == Complex(2));
        } else {
          CHECK(anti.terms().empty());
        }
      }
}

TEST_CASE("clifford product is associative") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_clifford(rng, 2), b = random_clifford(rng, 2), c = random_clifford(rng, 2);
    auto l = (a * b) * c, r = a * (b * c);
    for (Mask m = 0; m < 16; ++m) CHECK(std::abs(l.coefficient(m) - r.coefficient(m)) < 1e-12);
  }
}

TEST_CASE("c of vectors") {
  CVector one(1), i(1);
  one << 1.0;
  i << kI;
  CMatrix expected(2, 2);
  expected << 0, 1, 1, 0;
  CHECK(max_abs(c_vector(one).matrix() - expected) == 0.0);
  expected << 0, kI, -kI, 0;
  CHECK(max_abs(c_vector(i).matrix() - expected) == 0.0);
  auto anti = c_vector(one) * c_vector(i) + c_vector(i) * c_vector(one);
  CHECK(max_abs(anti.matrix()) == 0.0);

  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 4;
    CVector z1 = random_vector(rng, n), z2 = random_vector(rng, n);
    auto lhs = c_vector(z1) * c_vector(z2) + c_vector(z2) * c_vector(z1);
    const double re = 2.0 * (z1.transpose() * z2.conjugate())(0).real();
    CHECK(lhs.distance(Complex{re} * SpinorOperator::identity(n)) < 1e-12);
  }
}

TEST_CASE("c extends to a homomorphism") {
  Rng rng(23);
  CHECK(c_clifford(CliffordElement::scalar(2, 1.0)).distance(SpinorOperator::identity(2)) == 0.0);
  for (int n = 1; n <= 3; ++n) {
    for (int j = 0; j < 2 * n; ++j) {
      auto cj = c_clifford(CliffordElement::generator(n, j));
      CHECK((cj * cj).distance(SpinorOperator::identity(n)) < 1e-14);
    }
    auto a = random_clifford(rng, n), b = random_clifford(rng, n);
    CHECK(c_clifford(a * b).distance(c_clifford(a) * c_clifford(b)) < 1e-11);
    CVector z = random_vector(rng, n);
    CHECK(c_clifford(CliffordElement::from_vector(z)).distance(c_vector(z)) < 1e-14);
  }
  CHECK(std::abs(supertrace(c_clifford(pair_element(1, 0))) - 2.0 * kI) < 1e-15);
}

TEST_CASE("supertrace") {
  for (int n = 1; n <= 4; ++n) CHECK(supertrace(SpinorOperator::identity(n)) == Complex(0));
  CMatrix grading(2, 2);
  grading << 1, 0, 0, -1;
  CHECK(supertrace(SpinorOperator(1, grading)) == Complex(2));
}

TEST_CASE("symbol map") {
  CHECK(symbol(CliffordElement::generator(1, 0)).distance(GrassmannElement::dx(1, 0)) == 0.0);
  auto e1 = CliffordElement::generator(1, 0), e2 = CliffordElement::generator(1, 1);
  auto dxdp = wedge(GrassmannElement::dx(1, 0), GrassmannElement::dp(1, 0));
  CHECK(symbol(e1 * e2).distance(dxdp) == 0.0);
  CHECK(symbol(e2 * e1).distance(dxdp * Complex{-1}) == 0.0);
}

TEST_CASE("Berezin lemma") {
  Rng rng(24);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 100; ++trial) {
      auto a = random_clifford(rng, n);
      const Complex lhs = supertrace(c_clifford(a));
      const Complex rhs = std::pow(Complex(0, -2), n) * berezin(symbol(a));
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("F, heat_F and the pair product formulas") {
  CHECK(fermion_number_F(1).distance(SpinorOperator(1, Eigen::Vector2cd(-0.5, 0.5).asDiagonal())) == 0.0);
  for (int n = 1; n <= 4; ++n) {
    CliffordElement sum(n);
    for (int j = 0; j < n; ++j) sum += pair_element(n, j) * Complex(0, 0.5);
    CHECK(c_clifford(sum).distance(fermion_number_F(n)) < 1e-12);
  }
  Rng rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 4;
    const double t = uniform(rng, 0, 2);
    SpinorOperator prod = SpinorOperator::identity(n);
    for (int j = 0; j < n; ++j)
      prod = prod * (Complex{std::cosh(t / 2)} * SpinorOperator::identity(n) -
                     Complex(0, std::sinh(t / 2)) * c_clifford(pair_element(n, j)));
    CHECK(heat_F(n, t).distance(prod) < 1e-12);
  }
}

TEST_CASE("pullback of g^{-1} on forms") {
  for (int n = 0; n <= 3; ++n)
    CHECK(g_star_inv(CMatrix::Identity(n, n)).distance(SpinorOperator::identity(n)) < 1e-14);
  const double phi = 1.1;
  CMatrix g(1, 1);
  g << std::polar(1.0, phi);
  CMatrix direct(2, 2);
  direct << 1, 0, 0, std::polar(1.0, -phi);
  CHECK(max_abs(g_star_inv(g).matrix() - direct) < 1e-14);

  CMatrix bad = 2.0 * CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(g_star_inv(bad), ValidationError);

  // diagonal inputs: the product formula agrees with the exterior power of conj(g)
  Rng rng(26);
  for (int n = 1; n <= 4; ++n) {
    Eigen::VectorXd angles(n);
    for (int j = 0; j < n; ++j) angles(j) = uniform(rng, 0, 2 * kPi);
    CMatrix d = conjugated_diagonal(CMatrix::Identity(n, n), angles);
    CHECK(g_star_inv_diagonal(angles).distance(exterior_power(d.conjugate())) < 1e-12);
    CHECK(g_star_inv(d).distance(g_star_inv_diagonal(angles)) < 1e-12);
  }
}

TEST_CASE("g^{-1} pullback intertwines Clifford multiplication") {
  Rng rng(27);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    CMatrix g = random_unitary(rng, n);
    CVector z = random_vector(rng, n);
    auto G = g_star_inv(g);
    CHECK((G * c_vector(z)).distance(c_vector(g * z) * G) < 1e-11);
    // multiplicative in g
    CMatrix h = random_unitary(rng, n);
    CHECK(g_star_inv(g * h).distance(g_star_inv(g) * g_star_inv(h)) < 1e-11);
  }
}

TEST_CASE("exterior power is multiplicative") {
  Rng rng(28);
  CMatrix a = random_unitary(rng, 3), b = random_unitary(rng, 3);
  CHECK(exterior_power(a * b).distance(exterior_power(a) * exterior_power(b)) < 1e-12);
}
