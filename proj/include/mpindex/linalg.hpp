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

#include <limits>

#include "mpindex/types.hpp"

namespace mpindex {

inline constexpr double kUnitaryTolerance = 1e-10;

inline double unitarity_defect(const CMatrix& g) {
  if (g.rows() != g.cols()) return std::numeric_limits<double>::infinity();
  return (g.adjoint() * g - CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

inline void require_unitary(const CMatrix& g, const char* where) {
  if (g.rows() != g.cols()) throw DimensionError(std::string(where) + ": matrix is not square");
  if (g.size() > 0 && unitarity_defect(g) >= kUnitaryTolerance)
    throw ValidationError(std::string(where) + ": matrix is not unitary");
}

struct UnitaryEigen {
  CVector values;   // eigenvalues, |lambda| = 1
  CMatrix vectors;  // orthonormal eigenvectors as columns
};

/// Eigendecomposition of a normal matrix through its complex Schur form, so the
/// eigenvector system is orthonormal even inside degenerate eigenspaces.
UnitaryEigen unitary_eigen(const CMatrix& g);

/// Angle of a unit complex number mapped to [0, 2pi).
double angle_0_2pi(Complex lambda);

/// Reduce an angle to (-pi, pi].
double reduce_angle(double theta);

}  // namespace mpindex
