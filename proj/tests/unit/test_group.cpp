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
#include "mpindex/group.hpp"
#include "mpindex/random.hpp"

using namespace mpindex;

namespace {

Monomial random_monomial(Rng& rng, int n) {
  return {random_complex(rng), random_vector(rng, n), random_unitary(rng, n)};
}

double mono_distance(const Monomial& a, const Monomial& b) {
  return std::max({std::abs(a.coeff - b.coeff), (a.z - b.z).norm(), (a.g - b.g).cwiseAbs().maxCoeff()});
}

CVector vec1(Complex c) {
  CVector v(1);
  v << c;
  return v;
}

CMatrix diag2(Complex a, Complex b) {
  CMatrix g = CMatrix::Zero(2, 2);
  g(0, 0) = a;
  g(1, 1) = b;
  return g;
}

}  // namespace

TEST_CASE("compose examples") {
  Rng rng(31);
  CVector z = random_vector(rng, 2);
  auto m = compose(Monomial::translation(z), Monomial::translation(-z));
  CHECK(mono_distance(m, Monomial::identity(2)) < 1e-15);

  auto t = compose(Monomial::translation(vec1(1.0)), Monomial::translation(vec1(kI)));
  CHECK(std::abs(t.coeff - std::polar(1.0, 0.5)) < 1e-15);
  CHECK(std::abs(t.z(0) - Complex(1, 1)) < 1e-15);

  for (int trial = 0; trial < 20; ++trial) {
    CMatrix g = random_unitary(rng, 3);
    CVector w = random_vector(rng, 3);
    auto r = Monomial::rotation(g);
    auto lhs = compose(compose(r, Monomial::translation(w)), inverse(r));
    CHECK(mono_distance(lhs, Monomial::translation(g * w)) < 1e-12);
  }
  CHECK_THROWS_AS(compose(Monomial::identity(1), Monomial::identity(2)), DimensionError);
}

TEST_CASE("compose is associative and inverse is two-sided") {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    auto a = random_monomial(rng, n), b = random_monomial(rng, n), c = random_monomial(rng, n);
    CHECK(mono_distance(compose(compose(a, b), c), compose(a, compose(b, c))) < 1e-12);
    CHECK(mono_distance(compose(a, inverse(a)), Monomial::identity(n)) < 1e-12);
    CHECK(mono_distance(compose(inverse(a), a), Monomial::identity(n)) < 1e-12);
  }
}

TEST_CASE("monomial validation") {
  Monomial m{1.0, CVector::Zero(2), 2.0 * CMatrix::Identity(2, 2)};
  CHECK_THROWS_AS(m.validate(), ValidationError);
  Monomial bad{1.0, CVector::Zero(2), CMatrix::Identity(3, 3)};
  CHECK_THROWS_AS(bad.validate(), DimensionError);
}

TEST_CASE("algebra element merging and adjoint") {
  Rng rng(33);
  AlgebraElement a(2);
  auto m = random_monomial(rng, 2);
  a.add(m);
  Monomial near = m;
  near.z(0) += 1e-12;
  a.add(near);
  CHECK(a.terms().size() == 1);
  CHECK(std::abs(a.terms()[0].coeff - 2.0 * m.coeff) < 1e-15);
  Monomial neg = m;
  neg.coeff = -2.0 * m.coeff;
  a.add(neg);
  CHECK(a.empty());

  AlgebraElement x = AlgebraElement(random_monomial(rng, 2)) + AlgebraElement(random_monomial(rng, 2));
  AlgebraElement y = AlgebraElement(random_monomial(rng, 2)) + AlgebraElement(random_monomial(rng, 2));
  CHECK((x * y).adjoint().distance(y.adjoint() * x.adjoint()) < 1e-12);
}

TEST_CASE("fixed point data") {
  auto id = fixed_point_data(CMatrix::Identity(3, 3));
  CHECK(id.m() == 0);
  CHECK(id.dim_fixed() == 3);
  auto d = fixed_point_data(diag2(kI, 1.0));
  REQUIRE(d.m() == 1);
  CHECK(std::abs(d.angles(0) - kPi / 2) < 1e-12);
  CHECK(std::abs(std::abs(d.eigenvectors(0, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(d.fixed_basis(1, 0)) - 1.0) < 1e-12);

  Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 2;
    CMatrix h = random_unitary(rng, n);
    Eigen::VectorXd angles = Eigen::VectorXd::Zero(n);
    const double theta = uniform(rng, 0.2, 2 * kPi - 0.2);
    angles(0) = theta;
    CMatrix g = conjugated_diagonal(h, angles);
    auto fp = fixed_point_data(g);
    REQUIRE(fp.m() == 1);
    CHECK(std::abs(fp.angles(0) - theta) < 1e-8);
    CHECK(std::abs(std::abs(fp.eigenvectors.col(0).dot(h.col(0))) - 1.0) < 1e-8);
    CHECK((g * fp.eigenvectors - fp.eigenvectors * std::polar(1.0, theta)).norm() < 1e-9);
    CHECK((g * fp.fixed_basis - fp.fixed_basis).norm() < 1e-9);
    CMatrix all(n, n);
    all << fp.eigenvectors, fp.fixed_basis;
    CHECK((all.adjoint() * all - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("affine fixed points") {
  CVector z(2);
  z << 5.0, 0.0;
  CHECK(affine_has_fixed_point(CVector::Zero(2), CMatrix::Identity(2, 2)));
  CHECK_FALSE(affine_has_fixed_point(z, CMatrix::Identity(2, 2)));
  CHECK(affine_has_fixed_point(z, diag2(kI, 1.0)));
  z << 0.0, 5.0;
  CHECK_FALSE(affine_has_fixed_point(z, diag2(kI, 1.0)));
}

TEST_CASE("epsilon phase") {
  std::vector<CVector> zero(3, CVector::Zero(2));
  CHECK(epsilon_phase(zero) == 0.0);
  Rng rng(35);
  CVector w0 = random_vector(rng, 2), w1 = random_vector(rng, 2);
  // phase of T_{w0} T_{w1} T_{w0+w1}^{-1}
  auto m = compose(compose(Monomial::translation(w0), Monomial::translation(w1)),
                   inverse(Monomial::translation(w0 + w1)));
  CHECK(std::abs(std::polar(1.0, epsilon_phase({w0, w1})) - m.coeff) < 1e-14);
  for (int trial = 0; trial < 100; ++trial) {
    const int count = 1 + trial % 5;
    std::vector<CVector> w;
    for (int j = 0; j < count; ++j) w.push_back(random_vector(rng, 1 + trial % 3));
    CHECK(std::abs(epsilon_phase_unreduced(w) - epsilon_closed_form(w)) < 1e-10);
    const double e = epsilon_phase(w);
    CHECK(e > -kPi);
    CHECK(e <= kPi);
  }
}

TEST_CASE("w transform") {
  Rng rng(36);
  std::vector<CVector> zs;
  std::vector<CMatrix> ids, gs;
  for (int j = 0; j < 3; ++j) {
    zs.push_back(random_vector(rng, 2));
    ids.push_back(CMatrix::Identity(2, 2));
    gs.push_back(random_unitary(rng, 2));
  }
  auto plain = w_transform(zs, ids);
  for (int j = 0; j < 3; ++j) CHECK((plain.w[j] - zs[j]).norm() == 0.0);

  std::vector<CVector> z1 = {vec1(0.3), vec1(Complex(0.1, 0.7)), vec1(-0.4)};
  std::vector<CMatrix> g1 = {CMatrix::Constant(1, 1, std::polar(1.0, 0.4)), CMatrix::Constant(1, 1, std::polar(1.0, 1.1)),
                             CMatrix::Constant(1, 1, std::polar(1.0, 2.0))};
  auto one = w_transform(z1, g1);
  CHECK(std::abs(one.w[1](0) - std::polar(1.0, 0.4) * z1[1](0)) < 1e-15);
  CHECK(std::abs(one.w[2](0) - std::polar(1.0, 1.5) * z1[2](0)) < 1e-15);

  auto wt = w_transform(zs, gs);
  Monomial folded = Monomial::identity(2);
  for (int j = 0; j < 3; ++j) folded = compose(folded, Monomial{1.0, zs[j], gs[j]});
  CHECK((folded.z - wt.z).norm() < 1e-12);
  CHECK((folded.g - wt.g).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(folded.coeff - std::polar(1.0, epsilon_phase(wt.w))) < 1e-12);
}

TEST_CASE("conjugacy classes") {
  Rng rng(37);
  CVector z = random_vector(rng, 2);
  CMatrix g = random_unitary(rng, 2);
  CHECK(same_conjugacy_class(z, g, z, g));
  const CMatrix r = CMatrix::Constant(1, 1, std::polar(1.0, 0.9));
  CHECK(same_conjugacy_class(vec1(0.3), r, vec1(Complex(-2, 5)), r));
  CHECK_FALSE(same_conjugacy_class(vec1(0.0), CMatrix::Identity(1, 1), vec1(0.5), CMatrix::Identity(1, 1)));
  CHECK_FALSE(same_conjugacy_class(vec1(0.0), r, vec1(0.0), CMatrix::Constant(1, 1, std::polar(1.0, 1.0))));

  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    Eigen::VectorXd angles = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n - 1 - trial % 2 && j < n; ++j) angles(j) = uniform(rng, 0.3, 6.0);
    CMatrix g1 = conjugated_diagonal(random_unitary(rng, n), angles);
    CVector z1 = random_vector(rng, n);
    auto [z2, g2] = conjugate_point(random_vector(rng, n), random_unitary(rng, n), z1, g1);
    auto witness = conjugacy_witness(z1, g1, z2, g2);
    REQUIRE(witness.has_value());
    auto [zc, gc] = conjugate_point(witness->w, witness->h, z1, g1);
    CHECK((zc - z2).norm() < 1e-8);
    // moving z1 along the fixed directions of g1 changes the norm of the fixed component
    auto fp = fixed_point_data(g1);
    if (fp.dim_fixed() > 0) {
      CVector shifted = z1 + 0.5 * fp.fixed_basis.col(0) * (1.0 + std::abs(fp.fixed_basis.col(0).dot(z1)));
      CVector fixed_part = fp.fixed_basis * (fp.fixed_basis.adjoint() * z1);
      CVector fixed_shifted = fp.fixed_basis * (fp.fixed_basis.adjoint() * shifted);
      if (std::abs(fixed_part.norm() - fixed_shifted.norm()) > 1e-3) {
        CHECK_FALSE(same_conjugacy_class(shifted, g1, z2, g2));
      }
    }
  }
}
