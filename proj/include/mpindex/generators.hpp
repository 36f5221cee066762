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
#include "mpindex/random.hpp"

namespace mpindex {

/// Property-test generators shared by the unit tests and the verification suites.

Monomial random_monomial(Rng& rng, int n, double z_scale = 1.0);

/// One-mode monomial with angle drawn from [lo, hi].
Monomial random_rotation_monomial(Rng& rng, double lo, double hi, double z_scale = 1.0);

/// (z, g) whose affine map w -> g w + z fixes a random point; g has `moving` eigenvalues != 1.
Monomial random_fixed_point_element(Rng& rng, int n, int moving, double z_scale = 1.0);

/// count monomials whose ordered product equals target (up to coefficient).
std::vector<Monomial> random_closing_tuple(Rng& rng, int count, const Monomial& target, double z_scale = 1.0);

GrassmannElement random_form(Rng& rng, int n, int degree);

/// Random phase in every coordinate of g.
Monomial random_diagonal_monomial(Rng& rng, int n, double z_scale = 1.0);

/// 2k+1 diagonal monomials whose ordered product is a multiple of the identity.
std::vector<Monomial> random_closed_diagonal_tuple(Rng& rng, int n, int k, double z_scale = 1.0);

/// One-mode tuple of length 2k+1; about half of them close up (total angle 0, and
/// for k > 0 usually total translation 0) so both branches of the closed forms occur.
std::vector<Monomial> random_1d_tuple(Rng& rng, int k, double z_scale = 1.0);

}  // namespace mpindex
