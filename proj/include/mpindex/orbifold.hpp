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

#include <array>
#include <cstdint>
#include <vector>

#include "mpindex/group.hpp"

namespace mpindex {

using LatticePoint = std::array<long, 2>;  // coordinates (n1, n2) in the basis k, k*eps
using IntMatrix2 = std::array<std::array<long, 2>, 2>;

/// Square lattice with Z_4 (order 4) or triangular lattice with Z_6 (order 6).
struct OrbifoldSpec {
  int order = 4;
  double k = 1.0;

  void validate() const;
  Complex rotation() const;  // eps = e^{2 pi i / order}
  /// Integer matrix of multiplication by eps^power on lattice coordinates.
  IntMatrix2 rotation_matrix(int power = 1) const;
  Complex to_complex(const LatticePoint& p) const;
  /// |z|^2 / k^2 as an exact integer.
  long norm_form(const LatticePoint& p) const;
  /// theta, with V U = e^{i theta} U V.
  double theta() const;
  /// Inverse of to_complex; throws ValidationError when z is not a lattice point.
  LatticePoint from_complex(Complex z, double tol = 1e-9) const;
  int alpha_of(Complex g, double tol = 1e-9) const;
};

/// e^{i half_theta * theta / 2} T_z R^alpha with z and alpha exact.
struct ExactMonomial {
  long half_theta = 0;
  LatticePoint coords{0, 0};
  int alpha = 0;
  bool operator==(const ExactMonomial&) const = default;
};

ExactMonomial exact_compose(const OrbifoldSpec& spec, const ExactMonomial& a, const ExactMonomial& b);
ExactMonomial exact_inverse(const OrbifoldSpec& spec, const ExactMonomial& a);
Monomial to_monomial(const OrbifoldSpec& spec, const ExactMonomial& a);

ExactMonomial orbifold_U();
ExactMonomial orbifold_V();
ExactMonomial orbifold_R();

/// Sublattice (1 - eps^alpha) L in Hermite normal form: generated by (a, 0) and (b, d), 0 <= b < a.
struct Sublattice {
  long a = 0, b = 0, d = 0;
  bool trivial = true;  // the zero sublattice (alpha = 0)
  long index() const { return a * d; }
  LatticePoint reduce(const LatticePoint& p) const;
  LatticePoint gen1() const { return {a, 0}; }
  LatticePoint gen2() const { return {b, d}; }
};

Sublattice hermite_sublattice(const IntMatrix2& m);

struct ClassDescriptor {
  int order = 4;
  int alpha = 0;
  LatticePoint representative{0, 0};
  Sublattice sublattice;
  std::vector<LatticePoint> offsets;  // coset representatives whose union is the class (alpha != 0)
  std::vector<LatticePoint> orbit;    // alpha = 0: the finite rotation orbit
  bool complement = false;            // offsets are every nonzero coset: L minus the sublattice

  bool contains(const LatticePoint& z, int alpha) const;
};

ClassDescriptor orbifold_class(const OrbifoldSpec& spec, const LatticePoint& z, int alpha);

/// Distinct classes with a nonempty affine fixed-point set, ordered as the tables.
std::vector<ClassDescriptor> enumerate_classes_serial(const OrbifoldSpec& spec, int radius = 3);
std::vector<ClassDescriptor> enumerate_classes(const OrbifoldSpec& spec, int radius = 3);

/// Phi_{0; class}(f) for f supported on L x Z_q.
Complex orbifold_trace(const OrbifoldSpec& spec, const ClassDescriptor& cls, const AlgebraElement& f);
std::vector<Complex> orbifold_traces(const OrbifoldSpec& spec, const AlgebraElement& f);

}  // namespace mpindex
