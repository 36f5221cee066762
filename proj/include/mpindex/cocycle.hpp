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

#include <vector>

#include "mpindex/group.hpp"
#include "mpindex/multivector.hpp"

namespace mpindex {

/// u T_z R_g with u a form on R^{2n}.
struct NCTerm {
  GrassmannElement u;
  CVector z;
  CMatrix g;
};

class NCForm {
 public:
  explicit NCForm(int modes = 0) : modes_(modes) {}
  NCForm(const AlgebraElement& a);  // NOLINT: degree-0 embedding
  static NCForm term(const GrassmannElement& u, const CVector& z, const CMatrix& g);

  int modes() const { return modes_; }
  const std::vector<NCTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const NCTerm& t);
  NCForm& operator+=(const NCForm& other);
  NCForm& operator*=(Complex c);
  friend NCForm operator+(NCForm a, const NCForm& b) { return a += b; }
  friend NCForm operator-(NCForm a, const NCForm& b) { return a += b * Complex{-1.0}; }
  friend NCForm operator*(NCForm a, Complex c) { return a *= c; }

  /// Degree if every term has the same homogeneous degree, else -1.
  int homogeneous_degree() const;
  double distance(const NCForm& other) const;

 private:
  int modes_;
  std::vector<NCTerm> terms_;
};

/// Action of (g^*)^{-1} on forms: rho(g) sigma(z) = sigma(g z).
RMatrix rho_matrix(const CMatrix& g);
GrassmannElement rho(const CMatrix& g, const GrassmannElement& u);

NCForm ncform_mul(const NCForm& a, const NCForm& b);
NCForm d(const NCForm& a);

/// Closed graded trace localized at the class of (z0, g0).
Complex tau_localized(const CVector& z0, const CMatrix& g0, const NCForm& a);

/// tau(a_0 da_1 ... da_k).
Complex phi_cocycle(const CVector& z0, const CMatrix& g0, const std::vector<AlgebraElement>& args);

/// Representative (z, g) of a conjugacy class.
struct ClassRepresentative {
  CVector z;
  CMatrix g;
};

struct PsiResult {
  Complex value;
  std::vector<ClassRepresentative> classes;  // classes of tuple products passing the vanishing test
};

/// Psi_{2k} per monomial tuple; 0 when k exceeds the mode count.
Complex psi_serial(int k, const std::vector<AlgebraElement>& args);
Complex psi(int k, const std::vector<AlgebraElement>& args);
PsiResult psi_with_classes(int k, const std::vector<AlgebraElement>& args);

/// Contribution of one monomial tuple.
Complex psi_monomial(int k, const std::vector<Monomial>& tuple);

/// One-mode closed forms for Psi_0 and Psi_2.
Complex psi_1d_closed_form(int k, const std::vector<Monomial>& tuple);

class ProjectionMatrix {
 public:
  ProjectionMatrix(int size, int modes);
  /// Entries row-major; throws ValidationError unless p^2 = p and p^* = p within tol.
  ProjectionMatrix(int size, std::vector<AlgebraElement> entries, bool validate = true, double tol = 1e-8);

  int size() const { return size_; }
  int modes() const { return modes_; }
  const AlgebraElement& operator()(int i, int j) const { return entries_[i * size_ + j]; }
  AlgebraElement& operator()(int i, int j) { return entries_[i * size_ + j]; }

  ProjectionMatrix operator*(const ProjectionMatrix& other) const;
  ProjectionMatrix adjoint() const;
  double distance(const ProjectionMatrix& other) const;
  /// p - c Id
  ProjectionMatrix shifted(Complex c) const;

 private:
  int size_, modes_;
  std::vector<AlgebraElement> entries_;
};

Complex pair_with_projection(const ProjectionMatrix& p);

/// Lattice-supported arguments with g = Id: Berezin integral of the (0, Id) component.
Complex torus_psi(int k, const std::vector<AlgebraElement>& args);

}  // namespace mpindex
