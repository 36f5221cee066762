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

#include <optional>
#include <vector>

#include "mpindex/types.hpp"

namespace mpindex {

inline constexpr double kFixedEigenTolerance = 1e-9;
inline constexpr double kMergeTolerance = 1e-9;

/// coeff * T_z R_g.
struct Monomial {
  Complex coeff{1.0, 0.0};
  CVector z;
  CMatrix g;

  int modes() const { return static_cast<int>(z.size()); }
  void validate() const;

  static Monomial identity(int n);
  static Monomial translation(const CVector& z, Complex coeff = 1.0);
  static Monomial rotation(const CMatrix& g, Complex coeff = 1.0);
};

/// Same group element (z, g) up to tol.
bool same_point(const Monomial& a, const Monomial& b, double tol = kMergeTolerance);

Monomial compose(const Monomial& a, const Monomial& b);
Monomial inverse(const Monomial& m);
Monomial adjoint(const Monomial& m);

/// Heisenberg phase exponent of T_{z1} T_{z2} = e^{i phase} T_{z1+z2}.
double heisenberg_phase(const CVector& z1, const CVector& z2);

class AlgebraElement {
 public:
  explicit AlgebraElement(int modes = 0) : modes_(modes) {}
  AlgebraElement(const Monomial& m);  // NOLINT: monomials embed

  static AlgebraElement identity(int n) { return AlgebraElement(Monomial::identity(n)); }

  int modes() const { return modes_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const Monomial& m);
  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex c);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator*(Complex c, AlgebraElement a) { return a *= c; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

  AlgebraElement adjoint() const;

  /// Largest coefficient mismatch after matching points.
  double distance(const AlgebraElement& other) const;

 private:
  int modes_;
  std::vector<Monomial> terms_;
};

struct FixedPointData {
  RVector angles;        // phi_j in (0, 2pi) for eigenvalues != 1
  CMatrix eigenvectors;  // n x m, columns e_j
  CMatrix fixed_basis;   // n x (n - m), orthonormal basis of ker(g - 1)
  int m() const { return static_cast<int>(angles.size()); }
  int dim_fixed() const { return static_cast<int>(fixed_basis.cols()); }
};

FixedPointData fixed_point_data(const CMatrix& g, double tol = kFixedEigenTolerance);

bool affine_has_fixed_point(const CVector& z, const CMatrix& g, double tol = kFixedEigenTolerance);

/// prod_j exp((i/4) |(z, e_j)|^2 cot(phi_j / 2)).
Complex fixed_point_weight(const CVector& z, const FixedPointData& fp);

/// Angle of T_{w0} ... T_{w_{2k}} T_z^{-1}, accumulated by sequential composition without reduction.
double epsilon_phase_unreduced(const std::vector<CVector>& w);
/// Same angle reduced to (-pi, pi].
double epsilon_phase(const std::vector<CVector>& w);
/// sum_{i<j} Im(w_j conj(w_i)) / 2
double epsilon_closed_form(const std::vector<CVector>& w);

struct WTransform {
  std::vector<CVector> w;
  CVector z;
  CMatrix g;
};

WTransform w_transform(const std::vector<CVector>& zs, const std::vector<CMatrix>& gs);

/// (w, h) with h g1 h^{-1} = g2 and h z1 + (1 - g2) w = z2.
struct ConjugacyWitness {
  CMatrix h;
  CVector w;
};

std::optional<ConjugacyWitness> conjugacy_witness(const CVector& z1, const CMatrix& g1, const CVector& z2,
                                                  const CMatrix& g2, double tol = 1e-8);

bool same_conjugacy_class(const CVector& z1, const CMatrix& g1, const CVector& z2, const CMatrix& g2,
                          double tol = 1e-8);

/// (w, h)(z, g)(w, h)^{-1} as a group element.
std::pair<CVector, CMatrix> conjugate_point(const CVector& w, const CMatrix& h, const CVector& z, const CMatrix& g);

}  // namespace mpindex
