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

#include "mpindex/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mpindex {

std::vector<double> geometric_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw ValidationError("geometric_grid: need 0 < lo < hi, count >= 2");
  std::vector<double> out(count);
  const double ratio = std::pow(hi / lo, 1.0 / (count - 1));
  for (int i = 0; i < count; ++i) out[i] = lo * std::pow(ratio, i);
  out.back() = hi;
  return out;
}

std::vector<double> power_range(int lo, int hi) {
  std::vector<double> out;
  for (int p = lo; p <= hi; ++p) out.push_back(p);
  return out;
}

Complex FitResult::coefficient(double power) const {
  for (std::size_t i = 0; i < powers.size(); ++i)
    if (std::abs(powers[i] - power) < 1e-12) return coeffs[i];
  throw ValidationError("fit has no such power");
}

double FitResult::spread_of(double power) const {
  for (std::size_t i = 0; i < powers.size() && i < spread.size(); ++i)
    if (std::abs(powers[i] - power) < 1e-12) return spread[i];
  return 0.0;
}

namespace {

struct Solve {
  CVector coeffs;
  double residual;
  double condition;
};

Solve solve_scaled(const std::vector<double>& t, const std::vector<Complex>& values, const std::vector<double>& powers,
                   std::size_t rows) {
  const auto cols = static_cast<Eigen::Index>(powers.size());
  RMatrix design(static_cast<Eigen::Index>(rows), cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) design(i, j) = std::pow(t[i], powers[j]);
  // scale columns to unit norm so t^-2 and t^6 are comparable
  RVector scale = design.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < cols; ++j) design.col(j) /= scale(j);
  Eigen::JacobiSVD<RMatrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  CVector rhs(static_cast<Eigen::Index>(rows));
  for (std::size_t i = 0; i < rows; ++i) rhs(i) = values[i];
  const CMatrix cdesign = design.cast<Complex>();
  CVector x = svd.solve(rhs.real()).cast<Complex>() + kI * svd.solve(rhs.imag()).cast<Complex>();
  const double res = (cdesign * x - rhs).cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < cols; ++j) x(j) /= scale(j);
  return {x, res, sv(0) / sv(sv.size() - 1)};
}

}  // namespace

FitResult fit_asymptotics(const std::vector<double>& t, const std::vector<Complex>& values,
                          const std::vector<double>& powers) {
  require_dims(t.size() == values.size(), "fit_asymptotics: samples and values differ in length");
  if (powers.empty()) throw ValidationError("fit_asymptotics: no powers");
  if (t.size() < powers.size() + 2) throw ValidationError("fit_asymptotics: need at least len(powers)+2 samples");
  std::set<double> distinct(t.begin(), t.end());
  if (distinct.size() != t.size()) throw ValidationError("fit_asymptotics: t values must be distinct");
  for (double x : t)
    if (!(x > 0.0)) throw DomainError("fit_asymptotics: t must be positive");

  // sort by t so the prefix is the small-t end
  std::vector<std::size_t> order(t.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return t[a] < t[b]; });
  std::vector<double> ts;
  std::vector<Complex> vs;
  for (auto i : order) ts.push_back(t[i]), vs.push_back(values[i]);

  const Solve full = solve_scaled(ts, vs, powers, ts.size());
  FitResult out;
  out.powers = powers;
  out.coeffs.assign(full.coeffs.data(), full.coeffs.data() + full.coeffs.size());
  out.residual = full.residual;
  out.condition = full.condition;
  if (full.condition > kConditionWarning) out.warning = "ill-conditioned design matrix";

  // refinement check: refit on the smaller-t part of the grid
  const std::size_t sub = std::max(powers.size() + 1, (ts.size() * 3 + 3) / 4);
  if (sub < ts.size()) {
    const Solve part = solve_scaled(ts, vs, powers, sub);
    const RVector diff = (part.coeffs - full.coeffs).cwiseAbs();
    out.spread.assign(diff.data(), diff.data() + diff.size());
  }
  return out;
}

}  // namespace mpindex
