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

/// Clifford algebra Cl(2n) and its spinor representation on Lambda(C^n).
///
/// Clifford generators follow the real basis of C^n given by
/// e_{2j-1} = i u_j and e_{2j} = u_j; generator index 2j (0-based) is
/// e_{2j+1} = i u_{j+1}. The spinor space has the 2^n subsets of {1..n} as
/// basis, indexed by bitmask.

#include <cstdint>
#include <map>

#include "mpindex/multivector.hpp"
#include "mpindex/types.hpp"

namespace mpindex {

class CliffordElement {
 public:
  using Mask = std::uint32_t;
  using TermMap = std::map<Mask, Complex>;

  explicit CliffordElement(int modes = 0);

  static CliffordElement scalar(int modes, Complex value);
  static CliffordElement generator(int modes, int index);
  /// The vector z in C^n ~ R^{2n}: sum_j Im z_j e_{2j-1} + Re z_j e_{2j}.
  static CliffordElement from_vector(const CVector& z);

  int modes() const { return modes_; }
  const TermMap& terms() const { return terms_; }
  Complex coefficient(Mask mask) const;

  void add_term(Mask mask, Complex value);

  CliffordElement& operator+=(const CliffordElement& other);
  CliffordElement& operator*=(Complex factor);
  friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
  friend CliffordElement operator*(CliffordElement a, Complex c) { return a *= c; }
  friend CliffordElement operator*(Complex c, CliffordElement a) { return a *= c; }
  friend CliffordElement operator*(const CliffordElement& a, const CliffordElement& b);

 private:
  int modes_;
  TermMap terms_;
};

class SpinorOperator {
 public:
  SpinorOperator() = default;
  SpinorOperator(int modes, CMatrix matrix);

  static SpinorOperator identity(int modes);
  static SpinorOperator zero(int modes);

  int modes() const { return modes_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }

  SpinorOperator adjoint() const { return {modes_, matrix_.adjoint()}; }
  double distance(const SpinorOperator& other) const;

  friend SpinorOperator operator*(const SpinorOperator& a, const SpinorOperator& b);
  friend SpinorOperator operator+(const SpinorOperator& a, const SpinorOperator& b);
  friend SpinorOperator operator-(const SpinorOperator& a, const SpinorOperator& b);
  friend SpinorOperator operator*(Complex c, const SpinorOperator& a) { return {a.modes_, c * a.matrix_}; }

 private:
  int modes_ = 0;
  CMatrix matrix_;
};

/// Exterior multiplication f_j^dagger by the j-th generator (0-based j),
/// f_j^dagger |S> = (-1)^{#{i<j in S}} |S u {j}>.
SpinorOperator creation(int modes, int j);
/// Contraction f_j, the adjoint of `creation`.
SpinorOperator annihilation(int modes, int j);

/// c(z) = sum_j conj(z_j) f_j^dagger + z_j f_j.
SpinorOperator c_vector(const CVector& z);
SpinorOperator c_clifford(const CliffordElement& a);

/// sum_S (-1)^{|S|} A[S,S].
Complex supertrace(const SpinorOperator& a);

/// sigma(e_{2j-1}) = dx_j, sigma(e_{2j}) = dp_j, extended to ordered products.
GrassmannElement symbol(const CliffordElement& a);

/// F restricted to Lambda^k is (k - n/2) Id.
/// Exact coefficient of t^power in t -> tr_s(A e^{-tF}), from the diagonal of F.
Complex supertrace_heat_coefficient(const SpinorOperator& a, int power);

SpinorOperator fermion_number_F(int modes);
/// e^{-tF}.
SpinorOperator heat_F(int modes, double t);

/// Multiplicative extension of a linear map M of C^n to Lambda(C^n):
/// entry [T,S] is the minor det M[T,S].
SpinorOperator exterior_power(const CMatrix& m);

/// (g^{-1})^* from the eigen-angles of a diagonal g, via the product formula
/// prod_j (cos(phi_j/2) + sin(phi_j/2) c(e_{2j-1} e_{2j})) e^{-i phi_j/2}.
SpinorOperator g_star_inv_diagonal(const RVector& angles);

/// Induced action (g^{-1})^* on Lambda(C^n) for unitary g, obtained by
/// diagonalising g = h g0 h^{-1}, applying `g_star_inv_diagonal` to g0 and
/// conjugating by the exterior power of conj(h). Satisfies
/// G c(z) G^{-1} = c(g z). Throws ValidationError if g is not unitary.
SpinorOperator g_star_inv(const CMatrix& g);

}  // namespace mpindex
