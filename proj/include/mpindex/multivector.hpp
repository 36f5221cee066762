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

#pragma once

/// Exterior algebra of R^{2n} with complex coefficients.
///
/// Generators are ordered dx_1, dp_1, dx_2, dp_2, ...; generator 2j is dx_{j+1}
/// and generator 2j+1 is dp_{j+1}. A basis monomial is a bitmask over the 2n
/// generators, read in increasing bit order.

#include <cstdint>
#include <map>

#include "mpindex/types.hpp"

namespace mpindex {


class GrassmannElement {
 public:
  using Mask = std::uint32_t;
  using TermMap = std::map<Mask, Complex>;

  explicit GrassmannElement(int modes = 0);

  static GrassmannElement scalar(int modes, Complex value);
  static GrassmannElement generator(int modes, int index);
  static GrassmannElement dx(int modes, int j) { return generator(modes, 2 * j); }
  static GrassmannElement dp(int modes, int j) { return generator(modes, 2 * j + 1); }

  int modes() const { return modes_; }
  int generators() const { return 2 * modes_; }
  const TermMap& terms() const { return terms_; }
  Complex coefficient(Mask mask) const;
  bool is_zero() const { return terms_.empty(); }

  // Degree of the element if it is homogeneous; -1 for zero or mixed degree.
  int homogeneous_degree() const;
  GrassmannElement part(int degree) const;
  int max_degree() const;

  void add_term(Mask mask, Complex value);

  GrassmannElement& operator+=(const GrassmannElement& other);
  GrassmannElement& operator-=(const GrassmannElement& other);
  GrassmannElement& operator*=(Complex factor);

  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
  friend GrassmannElement operator*(GrassmannElement a, Complex c) { return a *= c; }
  friend GrassmannElement operator*(Complex c, GrassmannElement a) { return a *= c; }

  // Largest coefficient difference over the union of supports.
  double distance(const GrassmannElement& other) const;

 private:
  void prune();

  int modes_;
  TermMap terms_;
};

// Sign of e_a * e_b -> e_{a xor b} when the generators anticommute
// (number of transpositions needed to sort the concatenation).
int reorder_sign(GrassmannElement::Mask a, GrassmannElement::Mask b);

GrassmannElement wedge(const GrassmannElement& u, const GrassmannElement& v);

/// sigma(z) = sum_j Im z_j dx_j + Re z_j dp_j.
GrassmannElement sigma_one_form(const CVector& z);

/// omega = sum_j dx_j ^ dp_j.
GrassmannElement symplectic_form(int modes);

/// e^{-omega} as the terminating series sum_k (-omega)^k / k!.
GrassmannElement exp_neg_omega(int modes);

/// Multiplicative extension of a real linear map on generators.
/// Column i of `images` holds the image of source generator i expressed in the
/// 2*target_modes target generators.
GrassmannElement substitute(const GrassmannElement& u, const RMatrix& images, int target_modes);

/// Real 2n x 2k pullback matrix for the inclusion of span(basis) into C^n,
/// in the layout expected by `substitute`. Ambient coordinates z = p + i x,
/// subspace coordinates zeta_l = p'_l + i x'_l with z = sum_l zeta_l b_l.
RMatrix restriction_pullback(const CMatrix& basis);

/// Pullback of u along span(basis) -> C^n. Columns of `basis` must be
/// orthonormal to 1e-10; throws ValidationError otherwise.
GrassmannElement restrict_to(const GrassmannElement& u, const CMatrix& basis);

/// Berezin integral: coefficient of dp_1^dx_1^...^dp_k^dx_k.
Complex berezin(const GrassmannElement& u);

}  // namespace mpindex
