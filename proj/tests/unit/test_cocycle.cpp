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
#include "mpindex/cocycle.hpp"
#include "mpindex/generators.hpp"
#include "mpindex/orbifold.hpp"

using namespace mpindex;

namespace {

CVector vec1(Complex c) { return CVector::Constant(1, c); }
CMatrix rot1(double phi) { return CMatrix::Constant(1, 1, std::polar(1.0, phi)); }

std::vector<AlgebraElement> as_elements(const std::vector<Monomial>& ms) {
  return {ms.begin(), ms.end()};
}

NCForm random_term(Rng& rng, const Monomial& m, int degree) {
  return NCForm::term(random_form(rng, m.modes(), degree) * m.coeff, m.z, m.g);
}

}  // namespace

TEST_CASE("psi: worked values") {
  CHECK(std::abs(psi(0, {AlgebraElement::identity(1)}) - 1.0) < 1e-15);
  CHECK(psi(0, {AlgebraElement(Monomial::translation(vec1(0.4)))}) == Complex(0));
  Monomial tr{1.0, vec1(1.0), rot1(kPi / 2)};
  CHECK(std::abs(psi(0, {AlgebraElement(tr)}) - std::polar(1.0, 0.25)) < 1e-14);

  std::vector<Monomial> ex = {Monomial::translation(vec1(Complex(-1, -1))), Monomial::translation(vec1(1.0)),
                              Monomial::translation(vec1(kI))};
  const Complex expected = Complex(0, -0.5) * std::polar(1.0, 0.5);
  CHECK(std::abs(psi(1, as_elements(ex)) - expected) < 1e-14);
  CHECK(std::abs(psi_1d_closed_form(1, ex) - expected) < 1e-14);

  std::vector<Monomial> open = ex;
  open[0].g = rot1(kPi / 3);
  CHECK(psi_1d_closed_form(1, open) == Complex(0));
  CHECK(psi(1, as_elements(open)) == Complex(0));
  for (double phi : {0.0, 0.7, 3.0, 5.9}) CHECK(std::abs(psi_1d_closed_form(0, {Monomial::rotation(rot1(phi))}) - 1.0) < 1e-15);

  CHECK(psi(2, std::vector<AlgebraElement>(5, AlgebraElement::identity(1))) == Complex(0));
  CHECK_THROWS_AS(psi(-1, {}), ValidationError);
  CHECK_THROWS_AS(psi(1, {AlgebraElement::identity(1)}), DimensionError);
}

TEST_CASE("psi agrees with the one-mode closed forms") {
  Rng rng(51);
  int nonzero = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = trial % 2;
    auto t = random_1d_tuple(rng, k);
    const Complex general = psi_monomial(k, t), closed = psi_1d_closed_form(k, t);
    CHECK(std::abs(general - closed) < 1e-10);
    nonzero += std::abs(closed) > 1e-6;
  }
  CHECK(nonzero > 40);
}

TEST_CASE("serial and parallel psi agree; contributing classes") {
  Rng rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 2;
    const Monomial target = random_fixed_point_element(rng, n, trial % 2);
    auto closing = random_closing_tuple(rng, 3, target);
    std::vector<AlgebraElement> args;
    for (int j = 0; j < 3; ++j) args.push_back(AlgebraElement(closing[j]) + AlgebraElement(random_monomial(rng, n)));
    CHECK(std::abs(psi(1, args) - psi_serial(1, args)) < 1e-12);
    auto res = psi_with_classes(1, args);
    CHECK(std::abs(res.value - psi_serial(1, args)) < 1e-12);
    if (n - (trial % 2) >= 1) {
      REQUIRE(res.classes.size() >= 1);
      bool found = false;
      for (const auto& c : res.classes) found = found || same_conjugacy_class(c.z, c.g, target.z, target.g);
      CHECK(found);
    }
  }
}

TEST_CASE("rho acts as pullback") {
  Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    CMatrix g = random_unitary(rng, n), h = random_unitary(rng, n);
    CVector z = random_vector(rng, n);
    CHECK(rho(g, sigma_one_form(z)).distance(sigma_one_form(g * z)) < 1e-12);
    auto u = random_form(rng, n, -1);
    CHECK(rho(g * h, u).distance(rho(g, rho(h, u))) < 1e-11);
  }
}

TEST_CASE("forms: products, d and the Leibniz rule") {
  Rng rng(54);
  // degree 0 forms multiply like algebra elements
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_monomial(rng, 2), b = random_monomial(rng, 2);
    NCForm prod = ncform_mul(NCForm(AlgebraElement(a)), NCForm(AlgebraElement(b)));
    CHECK(prod.distance(NCForm(AlgebraElement(compose(a, b)))) < 1e-12);
  }
  CHECK(d(NCForm(AlgebraElement::identity(2))).empty());
  CVector z = random_vector(rng, 2);
  auto dt = d(NCForm(AlgebraElement(Monomial::translation(z))));
  CHECK(dt.distance(NCForm::term(sigma_one_form(z), z, CMatrix::Identity(2, 2))) < 1e-15);

  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 2;
    const int da = trial % 3, db = (trial / 3) % 2, dc = (trial / 6) % 2;
    NCForm a = random_term(rng, random_monomial(rng, n), da) + random_term(rng, random_monomial(rng, n), da);
    NCForm b = random_term(rng, random_monomial(rng, n), db);
    NCForm c = random_term(rng, random_monomial(rng, n), dc);
    CHECK(ncform_mul(ncform_mul(a, b), c).distance(ncform_mul(a, ncform_mul(b, c))) < 1e-11);
    auto ab = ncform_mul(a, b);
    if (!ab.empty()) CHECK(ab.homogeneous_degree() == da + db);
    CHECK(d(d(a)).distance(NCForm(n)) < 1e-12);
    const NCForm lhs = d(ab);
    const NCForm rhs = ncform_mul(d(a), b) + ncform_mul(a, d(b)) * Complex{da % 2 ? -1.0 : 1.0};
    CHECK(lhs.distance(rhs) < 1e-11);
  }
}

TEST_CASE("localized trace") {
  const CMatrix id1 = CMatrix::Identity(1, 1);
  CHECK(std::abs(tau_localized(vec1(0), id1, NCForm(AlgebraElement::identity(1))) - 1.0) < 1e-15);
  CHECK(tau_localized(vec1(0), id1, NCForm(AlgebraElement(Monomial::translation(vec1(0.5))))) == Complex(0));
  CHECK_THROWS_AS(tau_localized(vec1(0.5), id1, NCForm(AlgebraElement::identity(1))), DomainError);

  Rng rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 2, moving = trial % (n + 1);
    Monomial target = random_fixed_point_element(rng, n, moving);
    target.coeff = random_complex(rng);
    NCForm a = random_term(rng, target, -1);
    CHECK(std::abs(tau_localized(target.z, target.g, d(a))) < 1e-10);

    // graded trace on a pair whose product lies in the class of target
    const int d1 = trial % 3, d2 = (trial / 3) % 3;
    auto pair = random_closing_tuple(rng, 2, target);
    NCForm x = random_term(rng, pair[0], d1), y = random_term(rng, pair[1], d2);
    const Complex xy = tau_localized(target.z, target.g, ncform_mul(x, y));
    const Complex yx = tau_localized(target.z, target.g, ncform_mul(y, x));
    CHECK(std::abs(xy - ((d1 * d2) % 2 ? -1.0 : 1.0) * yx) < 1e-9);
  }
}

TEST_CASE("phi cocycle: closedness, cyclicity and the Hochschild identity") {
  const CMatrix id1 = CMatrix::Identity(1, 1);
  CHECK(std::abs(phi_cocycle(vec1(0), id1, {AlgebraElement::identity(1)}) - 1.0) < 1e-15);
  Rng rng(56);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 2, k = trial % 3;
    const Monomial target = random_fixed_point_element(rng, n, trial % (n + 1));
    auto a = as_elements(random_closing_tuple(rng, 1, target));
    CHECK(std::abs(phi_cocycle(target.z, target.g, {AlgebraElement::identity(n), a[0]})) < 1e-10);

    auto args = as_elements(random_closing_tuple(rng, k + 1, target));
    std::vector<AlgebraElement> rotated = {args.back()};
    rotated.insert(rotated.end(), args.begin(), args.end() - 1);
    const Complex lhs = phi_cocycle(target.z, target.g, args), rhs = phi_cocycle(target.z, target.g, rotated);
    CHECK(std::abs(lhs - (k % 2 ? -1.0 : 1.0) * rhs) < 1e-9);

    auto big = as_elements(random_closing_tuple(rng, k + 2, target));
    Complex b{};
    for (int i = 0; i <= k; ++i) {
      std::vector<AlgebraElement> merged;
      for (int j = 0; j < i; ++j) merged.push_back(big[j]);
      merged.push_back(big[i] * big[i + 1]);
      for (int j = i + 2; j < k + 2; ++j) merged.push_back(big[j]);
      b += (i % 2 ? -1.0 : 1.0) * phi_cocycle(target.z, target.g, merged);
    }
    std::vector<AlgebraElement> last = {big[k + 1] * big[0]};
    for (int j = 1; j <= k; ++j) last.push_back(big[j]);
    b += ((k + 1) % 2 ? -1.0 : 1.0) * phi_cocycle(target.z, target.g, last);
    CHECK(std::abs(b) < 1e-9);
  }
}

TEST_CASE("psi decomposes into localized cocycles") {
  Rng rng(57);
  int nonzero = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 2, k = trial % (n + 1);
    const int slots = 2 * k + 1;
    const Monomial target = random_fixed_point_element(rng, n, trial % (n + 1));
    auto closing = random_closing_tuple(rng, slots, target);
    const Monomial other = random_fixed_point_element(rng, n, (trial + 1) % (n + 1));
    auto closing2 = random_closing_tuple(rng, slots, other);
    std::vector<AlgebraElement> args;
    for (int j = 0; j < slots; ++j) args.push_back(AlgebraElement(closing[j]) + AlgebraElement(closing2[j]));
    const auto res = psi_with_classes(k, args);
    Complex sum{};
    for (const auto& c : res.classes) sum += phi_cocycle(c.z, c.g, args);
    double fact = 1.0;
    for (int i = 2; i <= 2 * k; ++i) fact *= i;
    CHECK(std::abs(res.value - std::pow(kI, -k) / fact * sum) < 1e-10);
    nonzero += std::abs(res.value) > 1e-6;
  }
  CHECK(nonzero > 15);
}

TEST_CASE("pairing with projections") {
  CHECK(std::abs(pair_with_projection(ProjectionMatrix(1, {AlgebraElement::identity(1)})) - 1.0) < 1e-14);
  CHECK(pair_with_projection(ProjectionMatrix(1, {AlgebraElement(1)})) == Complex(0));

  OrbifoldSpec z4{4, 1.0};
  AlgebraElement avg(1);
  for (int a = 0; a < 4; ++a) avg += 0.25 * AlgebraElement(to_monomial(z4, ExactMonomial{0, {0, 0}, a}));
  const Complex v = pair_with_projection(ProjectionMatrix(1, {avg}));
  CHECK(std::abs(v - 1.0) < 1e-8);

  AlgebraElement half = 0.5 * AlgebraElement::identity(1);
  CHECK_THROWS_AS(ProjectionMatrix(1, {half}), ValidationError);
  AlgebraElement shift(Monomial::translation(vec1(0.3)));
  CHECK_THROWS_AS(ProjectionMatrix(1, {shift}), ValidationError);

  // 2x2: diag(1, 0) and the rank-one projector built from a unitary u
  Rng rng(58);
  AlgebraElement u(random_monomial(rng, 2));
  u *= 1.0 / std::abs(u.terms()[0].coeff);
  std::vector<AlgebraElement> e = {0.5 * AlgebraElement::identity(2), 0.5 * u, 0.5 * u.adjoint(),
                                   0.5 * AlgebraElement::identity(2)};
  ProjectionMatrix q(2, e);
  CHECK(std::abs(pair_with_projection(q) - 1.0) < 1e-8);
}

TEST_CASE("torus specialisation") {
  Rng rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 2, k = trial % (n + 1);
    std::vector<CVector> basis;
    for (int j = 0; j < 2 * n; ++j) basis.push_back(random_vector(rng, n, 0.6));
    auto lattice_monomial = [&]() {
      CVector z = CVector::Zero(n);
      for (auto& b : basis) z += static_cast<double>(std::uniform_int_distribution<int>(-1, 1)(rng)) * b;
      return Monomial::translation(z, random_complex(rng));
    };
    std::vector<AlgebraElement> args;
    for (int j = 0; j < 2 * k + 1; ++j) args.push_back(AlgebraElement(lattice_monomial()) + AlgebraElement(lattice_monomial()));
    // force some cancellation onto the zero component
    CVector s = CVector::Zero(n);
    for (int j = 0; j < 2 * k; ++j) s += args[j].terms()[0].z;
    args.back().add(Monomial::translation(-s, random_complex(rng)));
    CHECK(std::abs(torus_psi(k, args) - psi(k, args)) < 1e-10);
  }
  CVector v = CVector::Constant(1, Complex(0.8, 0.1));
  CHECK(std::abs(torus_psi(0, {AlgebraElement::identity(1)}) - 1.0) < 1e-15);
  CHECK(torus_psi(0, {AlgebraElement(Monomial::translation(3.0 * v))}) == Complex(0));
  CHECK(torus_psi(2, std::vector<AlgebraElement>(5, AlgebraElement(Monomial::translation(v)))) == Complex(0));
  CHECK_THROWS_AS(torus_psi(0, {AlgebraElement(Monomial::rotation(rot1(0.5)))}), ValidationError);
}
