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

// JSON encoding of the value types. Complex numbers are [re, im] pairs; a
// bare number is accepted on input as a real value.

#include <string>
#include <vector>

#include "json.hpp"
#include "mpindex/cocycle.hpp"
#include "mpindex/group.hpp"
#include "mpindex/orbifold.hpp"

namespace mpindex {

using nlohmann::json;

json to_json(Complex c);
json to_json(const CVector& v);
json to_json(const CMatrix& m);
json to_json(const Monomial& m);
json to_json(const AlgebraElement& a);
json to_json(const LatticePoint& p);

Complex complex_from_json(const json& j);
CVector vector_from_json(const json& j);
CMatrix matrix_from_json(const json& j);

/// {"coeff", "z", "g"} or {"coeff", "z", "angles"} for a diagonal g; g defaults to 1.
Monomial monomial_from_json(const json& j);
/// An array of monomials, {"terms": [...]}, or a single monomial object.
AlgebraElement algebra_from_json(const json& j);
std::vector<AlgebraElement> algebra_list_from_json(const json& j);

/// Lattice input for the orbifold commands: {"coeff", "coords":[n1,n2], "alpha"}
/// per term; generic monomials are accepted too.
AlgebraElement orbifold_element_from_json(const OrbifoldSpec& spec, const json& j);

/// Rounds every float to 12 significant digits, then dumps with sorted keys.
std::string dump_deterministic(const json& j, int indent = 2);

}  // namespace mpindex
