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

#include <string>
#include <vector>

#include "mpindex/types.hpp"

namespace mpindex {

// geometric spacing, inclusive of both ends
std::vector<double> geometric_grid(double lo, double hi, int count);

struct FitResult {
  std::vector<double> powers;
  std::vector<Complex> coeffs;
  double residual = 0.0;     // max |model - sample|
  double condition = 0.0;    // of the column-scaled design matrix
  std::vector<double> spread;  // per coefficient, against a refit on the small-t end of the grid
  std::string warning;       // empty unless the design is ill-conditioned

  Complex coefficient(double power) const;
  double spread_of(double power) const;
};

inline constexpr double kConditionWarning = 1e12;

/// Least squares for sum_m c_m t^m over the given exponents.
FitResult fit_asymptotics(const std::vector<double>& t, const std::vector<Complex>& values,
                          const std::vector<double>& powers);

/// Integer powers lo..hi.
std::vector<double> power_range(int lo, int hi);

}  // namespace mpindex
