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

#include "mpindex/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace mpindex {

UnitaryEigen unitary_eigen(const CMatrix& g) {
  if (g.rows() == 0) return {CVector(0), CMatrix(0, 0)};
  Eigen::ComplexSchur<CMatrix> schur(g);
  if (schur.info() != Eigen::Success) throw std::runtime_error("unitary_eigen: Schur decomposition failed");
  return {schur.matrixT().diagonal(), schur.matrixU()};
}

double angle_0_2pi(Complex lambda) {
  double a = std::arg(lambda);
  if (a < 0) a += 2 * kPi;
  return a;
}

double reduce_angle(double theta) {
  double r = std::remainder(theta, 2 * kPi);
  if (r <= -kPi) r += 2 * kPi;
  return r;
}

}  // namespace mpindex
