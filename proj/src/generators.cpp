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

#include "mpindex/generators.hpp"

#include <bit>

namespace mpindex {

Monomial random_monomial(Rng& rng, int n, double z_scale) {
  return {std::polar(1.0, uniform(rng, 0, 2 * kPi)) * uniform(rng, 0.5, 1.5), random_vector(rng, n, z_scale),
          random_unitary(rng, n)};
}

Monomial random_rotation_monomial(Rng& rng, double lo, double hi, double z_scale) {
  CMatrix g(1, 1);
  g << std::polar(1.0, uniform(rng, lo, hi));
  return {std::polar(1.0, uniform(rng, 0, 2 * kPi)), random_vector(rng, 1, z_scale), g};
}

Monomial random_fixed_point_element(Rng& rng, int n, int moving, double z_scale) {
  RVector angles = RVector::Zero(n);
  for (int j = 0; j < moving && j < n; ++j) angles(j) = uniform(rng, 0.3, 2 * kPi - 0.3);
  const CMatrix g = conjugated_diagonal(random_unitary(rng, n), angles);
  const CVector w = random_vector(rng, n, z_scale);
  return {1.0, (CMatrix::Identity(n, n) - g) * w, g};
}

std::vector<Monomial> random_closing_tuple(Rng& rng, int count, const Monomial& target, double z_scale) {
  const int n = target.modes();
  std::vector<Monomial> out;
  Monomial prefix = Monomial::identity(n);
  for (int j = 0; j + 1 < count; ++j) {
    out.push_back(random_monomial(rng, n, z_scale));
    prefix = compose(prefix, out.back());
  }
  Monomial last = compose(inverse(prefix), target);
  last.coeff = std::polar(1.0, uniform(rng, 0, 2 * kPi));
  out.push_back(last);
  return out;
}

GrassmannElement random_form(Rng& rng, int n, int degree) {
  GrassmannElement u(n);
  for (GrassmannElement::Mask m = 0; m < (GrassmannElement::Mask{1} << (2 * n)); ++m)
    if (degree < 0 || std::popcount(m) == degree) u.add_term(m, random_complex(rng));
  return u;
}

Monomial random_diagonal_monomial(Rng& rng, int n, double z_scale) {
  Monomial m = random_monomial(rng, n, z_scale);
  m.g = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m.g(j, j) = std::polar(1.0, uniform(rng, 0.0, 2 * kPi));
  return m;
}

std::vector<Monomial> random_closed_diagonal_tuple(Rng& rng, int n, int k, double z_scale) {
  if (k == 0) return {Monomial::identity(n)};
  std::vector<Monomial> t;
  for (int i = 0; i < 2 * k; ++i) t.push_back(random_diagonal_monomial(rng, n, z_scale));
  Monomial prefix = t[0];
  for (int i = 1; i < 2 * k; ++i) prefix = compose(prefix, t[i]);
  Monomial last = inverse(prefix);
  last.coeff = random_complex(rng);
  t.push_back(last);
  return t;
}

std::vector<Monomial> random_1d_tuple(Rng& rng, int k, double z_scale) {
  std::vector<Monomial> t;
  for (int j = 0; j < 2 * k + 1; ++j) t.push_back(random_rotation_monomial(rng, 0.0, 2 * kPi, z_scale));
  auto coin = [&](int odds) { return std::uniform_int_distribution<int>(0, odds - 1)(rng) == 0; };
  if (!coin(2)) return t;
  if (k == 0) {
    t[0].g(0, 0) = 1.0;
    if (coin(2)) t[0].z(0) = 0.0;
    return t;
  }
  // close the angles; usually also the translations
  const Complex e0 = t[0].g(0, 0), e1 = t[1].g(0, 0);
  t[2].g(0, 0) = 1.0 / (e0 * e1);
  if (!coin(4)) t[2].z(0) = -(t[0].z(0) + e0 * t[1].z(0)) / (e0 * e1);
  return t;
}

}  // namespace mpindex
