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

#include <cmath>

#include "doctest.h"
#include "mpindex/asymptotics.hpp"

using namespace mpindex;

namespace {

std::vector<Complex> sample(const std::vector<double>& ts, double (*f)(double)) {
  std::vector<Complex> out;
  for (double t : ts) out.emplace_back(f(t));
  return out;
}

}  // namespace

TEST_CASE("geometric grid") {
  auto g = geometric_grid(0.05, 0.8, 12);
  REQUIRE(g.size() == 12);
  CHECK(g.front() == doctest::Approx(0.05));
  CHECK(g.back() == 0.8);
  for (std::size_t i = 1; i + 1 < g.size(); ++i) CHECK(g[i + 1] / g[i] == doctest::Approx(g[1] / g[0]));
  CHECK_THROWS_AS(geometric_grid(0.0, 1.0, 4), ValidationError);
  CHECK_THROWS_AS(geometric_grid(0.5, 0.2, 4), ValidationError);
}

TEST_CASE("exact model is recovered") {
  const auto ts = geometric_grid(0.05, 0.8, 12);
  auto fit = fit_asymptotics(ts, sample(ts, [](double t) { return 2.0 / t + 3.0; }), {-1, 0});
  CHECK(std::abs(fit.coefficient(-1) - 2.0) < 1e-10);
  CHECK(std::abs(fit.coefficient(0) - 3.0) < 1e-10);
  CHECK(fit.residual < 1e-12);
  CHECK(fit.warning.empty());
}

TEST_CASE("coth(t/2) leading coefficient") {
  const auto ts = geometric_grid(0.05, 0.8, 12);
  auto vals = sample(ts, [](double t) { return 1.0 / std::tanh(0.5 * t); });
  auto fit = fit_asymptotics(ts, vals, {-1, 0, 1});
  CHECK(std::abs(fit.coefficient(-1) - 2.0) < 1e-4);
  auto wide = fit_asymptotics(ts, vals, power_range(-1, 6));
  CHECK(std::abs(wide.coefficient(-1) - 2.0) < 1e-10);
  CHECK(std::abs(wide.coefficient(1) - 1.0 / 6.0) < 1e-6);
  CHECK(std::abs(wide.coefficient(0)) < 1e-8);
  CHECK(wide.spread_of(-1) < 1e-8);
}

TEST_CASE("residual flags an omitted power") {
  const auto ts = geometric_grid(0.05, 0.8, 12);
  auto vals = sample(ts, [](double t) { return 1.0 / t + 0.5 + t * t; });
  auto good = fit_asymptotics(ts, vals, {-1, 0, 2});
  auto bad = fit_asymptotics(ts, vals, {-1, 0});
  CHECK(good.residual < 1e-12);
  CHECK(bad.residual > 1e-3);
}

TEST_CASE("complex samples fit componentwise") {
  const auto ts = geometric_grid(0.1, 1.0, 10);
  std::vector<Complex> vals;
  for (double t : ts) vals.push_back(Complex(1, -2) / t + Complex(0, 0.25) * t);
  auto fit = fit_asymptotics(ts, vals, {-1, 0, 1});
  CHECK(std::abs(fit.coefficient(-1) - Complex(1, -2)) < 1e-10);
  CHECK(std::abs(fit.coefficient(1) - Complex(0, 0.25)) < 1e-10);
}

TEST_CASE("bad inputs and conditioning") {
  const auto ts = geometric_grid(0.1, 1.0, 4);
  std::vector<Complex> v(4, 1.0);
  CHECK_THROWS_AS(fit_asymptotics(ts, v, {-1, 0, 1}), ValidationError);
  CHECK_THROWS_AS(fit_asymptotics({0.1, 0.1, 0.2, 0.3, 0.4}, std::vector<Complex>(5, 1.0), {0}), ValidationError);
  CHECK_THROWS_AS(fit_asymptotics(ts, std::vector<Complex>(3, 1.0), {0}), DimensionError);
  CHECK_THROWS_AS(fit_asymptotics(ts, v, {1, 0.0}).coefficient(5), ValidationError);

  const auto close = geometric_grid(1.0, 1.0001, 16);
  auto fit = fit_asymptotics(close, std::vector<Complex>(16, 1.0), power_range(0, 8));
  CHECK(!fit.warning.empty());
}
