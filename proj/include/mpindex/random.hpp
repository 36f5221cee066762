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

#include <cstdint>
#include <random>

#include <Eigen/QR>

#include "mpindex/types.hpp"

namespace mpindex {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Complex random_complex(Rng& rng) {
  std::normal_distribution<double> nd;
  return {nd(rng), nd(rng)};
}

inline CVector random_vector(Rng& rng, int n, double scale = 1.0) {
  CVector z(n);
  for (int j = 0; j < n; ++j) z(j) = scale * random_complex(rng);
  return z;
}

/// Vector with norm drawn uniformly in [0, radius].
inline CVector random_vector_in_ball(Rng& rng, int n, double radius) {
  CVector z = random_vector(rng, n);
  const double norm = z.norm();
  if (norm == 0.0) return z;
  return z * (uniform(rng, 0.0, radius) / norm);
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the R-diagonal phases divided out.
inline CMatrix random_unitary(Rng& rng, int n) {
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = random_complex(rng);
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// h diag(e^{i angles}) h^{-1}.
inline CMatrix conjugated_diagonal(const CMatrix& h, const Eigen::VectorXd& angles) {
  CVector d(angles.size());
  for (Eigen::Index j = 0; j < angles.size(); ++j) d(j) = std::polar(1.0, angles(j));
  return h * d.asDiagonal() * h.adjoint();
}

}  // namespace mpindex
