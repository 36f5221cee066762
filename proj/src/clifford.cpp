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

#include "mpindex/clifford.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include <Eigen/LU>

#include "mpindex/linalg.hpp"

namespace mpindex {

namespace {

using Mask = std::uint32_t;

int subset_sign_below(Mask s, int j) { return (std::popcount(s & ((Mask{1} << j) - 1)) & 1) ? -1 : 1; }

Eigen::Index spinor_dim(int modes) { return Eigen::Index{1} << modes; }

std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  for (; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

}  // namespace

CliffordElement::CliffordElement(int modes) : modes_(modes) {
  require_dims(modes >= 0 && modes <= 15, "CliffordElement: mode count out of range");
}

CliffordElement CliffordElement::scalar(int modes, Complex value) {
  CliffordElement out(modes);
  out.add_term(0, value);
  return out;
}

CliffordElement CliffordElement::generator(int modes, int index) {
  require_dims(index >= 0 && index < 2 * modes, "CliffordElement: generator index out of range");
  CliffordElement out(modes);
  out.add_term(Mask{1} << index, 1.0);
  return out;
}

CliffordElement CliffordElement::from_vector(const CVector& z) {
  const int n = static_cast<int>(z.size());
  CliffordElement out(n);
  for (int j = 0; j < n; ++j) {
    out.add_term(Mask{1} << (2 * j), z(j).imag());
    out.add_term(Mask{1} << (2 * j + 1), z(j).real());
  }
  return out;
}

Complex CliffordElement::coefficient(Mask mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? Complex{} : it->second;
}

void CliffordElement::add_term(Mask mask, Complex value) {
  require_dims(mask >> (2 * modes_) == 0, "CliffordElement: mask exceeds generator count");
  auto [it, inserted] = terms_.try_emplace(mask, value);
  if (!inserted) it->second += value;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& other) {
  require_dims(modes_ == other.modes_, "CliffordElement: mode count mismatch");
  for (const auto& [mask, c] : other.terms_) add_term(mask, c);
  return *this;
}

CliffordElement& CliffordElement::operator*=(Complex factor) {
  for (auto& [mask, c] : terms_) c *= factor;
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
  return *this;
}

CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
  require_dims(a.modes_ == b.modes_, "CliffordElement: mode count mismatch");
  CliffordElement out(a.modes_);
  // e_j^2 = +1, so shared generators cancel without extra sign
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      out.add_term(ma ^ mb, static_cast<double>(reorder_sign(ma, mb)) * ca * cb);
  return out;
}

SpinorOperator::SpinorOperator(int modes, CMatrix matrix) : modes_(modes), matrix_(std::move(matrix)) {
  require_dims(matrix_.rows() == spinor_dim(modes) && matrix_.cols() == spinor_dim(modes),
               "SpinorOperator: matrix size does not match 2^n");
}

SpinorOperator SpinorOperator::identity(int modes) {
  return {modes, CMatrix::Identity(spinor_dim(modes), spinor_dim(modes))};
}

SpinorOperator SpinorOperator::zero(int modes) {
  return {modes, CMatrix::Zero(spinor_dim(modes), spinor_dim(modes))};
}

double SpinorOperator::distance(const SpinorOperator& other) const {
  require_dims(modes_ == other.modes_, "SpinorOperator: mode count mismatch");
  if (matrix_.size() == 0) return 0.0;
  return (matrix_ - other.matrix_).cwiseAbs().maxCoeff();
}

SpinorOperator operator*(const SpinorOperator& a, const SpinorOperator& b) {
  require_dims(a.modes_ == b.modes_, "SpinorOperator: mode count mismatch");
  return {a.modes_, a.matrix_ * b.matrix_};
}

SpinorOperator operator+(const SpinorOperator& a, const SpinorOperator& b) {
  require_dims(a.modes_ == b.modes_, "SpinorOperator: mode count mismatch");
  return {a.modes_, a.matrix_ + b.matrix_};
}

SpinorOperator operator-(const SpinorOperator& a, const SpinorOperator& b) {
  require_dims(a.modes_ == b.modes_, "SpinorOperator: mode count mismatch");
  return {a.modes_, a.matrix_ - b.matrix_};
}

SpinorOperator creation(int modes, int j) {
  require_dims(j >= 0 && j < modes, "creation: index out of range");
  CMatrix m = CMatrix::Zero(spinor_dim(modes), spinor_dim(modes));
  for (Mask s = 0; s < static_cast<Mask>(spinor_dim(modes)); ++s)
    if (!(s & (Mask{1} << j))) m(s | (Mask{1} << j), s) = static_cast<double>(subset_sign_below(s, j));
  return {modes, std::move(m)};
}

SpinorOperator annihilation(int modes, int j) { return creation(modes, j).adjoint(); }

SpinorOperator c_vector(const CVector& z) {
  const int n = static_cast<int>(z.size());
  SpinorOperator out = SpinorOperator::zero(n);
  for (int j = 0; j < n; ++j)
    out = out + std::conj(z(j)) * creation(n, j) + z(j) * annihilation(n, j);
  return out;
}

SpinorOperator c_clifford(const CliffordElement& a) {
  const int n = a.modes();
  std::vector<SpinorOperator> gens;
  for (int j = 0; j < n; ++j) {
    CVector u = CVector::Zero(n);
    u(j) = kI;
    gens.push_back(c_vector(u));  // e_{2j-1} = i u_j
    u(j) = 1.0;
    gens.push_back(c_vector(u));  // e_{2j} = u_j
  }
  SpinorOperator out = SpinorOperator::zero(n);
  for (const auto& [mask, c] : a.terms()) {
    SpinorOperator prod = SpinorOperator::identity(n);
    for (int g : bits_of(mask)) prod = prod * gens[g];
    out = out + c * prod;
  }
  return out;
}

Complex supertrace(const SpinorOperator& a) {
  Complex sum{};
  for (Eigen::Index s = 0; s < a.dim(); ++s)
    sum += (std::popcount(static_cast<Mask>(s)) & 1 ? -1.0 : 1.0) * a.matrix()(s, s);
  return sum;
}

Complex supertrace_heat_coefficient(const SpinorOperator& a, int power) {
  require_dims(power >= 0, "supertrace_heat_coefficient: negative power");
  const int n = a.modes();
  double factorial = 1.0;
  for (int p = 2; p <= power; ++p) factorial *= p;
  Complex sum{};
  for (Eigen::Index s = 0; s < a.dim(); ++s) {
    const int deg = std::popcount(static_cast<Mask>(s));
    sum += (deg & 1 ? -1.0 : 1.0) * a.matrix()(s, s) * std::pow(-(deg - 0.5 * n), power);
  }
  return sum / factorial;
}

GrassmannElement symbol(const CliffordElement& a) {
  // generator order e_1,e_2,... matches dx_1,dp_1,... bit for bit
  GrassmannElement out(a.modes());
  for (const auto& [mask, c] : a.terms()) out.add_term(mask, c);
  return out;
}

SpinorOperator fermion_number_F(int modes) {
  CMatrix m = CMatrix::Zero(spinor_dim(modes), spinor_dim(modes));
  for (Eigen::Index s = 0; s < m.rows(); ++s) m(s, s) = std::popcount(static_cast<Mask>(s)) - 0.5 * modes;
  return {modes, std::move(m)};
}

SpinorOperator heat_F(int modes, double t) {
  CMatrix m = CMatrix::Zero(spinor_dim(modes), spinor_dim(modes));
  for (Eigen::Index s = 0; s < m.rows(); ++s)
    m(s, s) = std::exp(-t * (std::popcount(static_cast<Mask>(s)) - 0.5 * modes));
  return {modes, std::move(m)};
}

SpinorOperator exterior_power(const CMatrix& m) {
  require_dims(m.rows() == m.cols(), "exterior_power: matrix is not square");
  const int n = static_cast<int>(m.rows());
  const Eigen::Index dim = spinor_dim(n);
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Mask s = 0; s < static_cast<Mask>(dim); ++s) {
    const auto cols = bits_of(s);
    for (Mask t = 0; t < static_cast<Mask>(dim); ++t) {
      if (std::popcount(t) != std::popcount(s)) continue;
      const auto rows = bits_of(t);
      if (rows.empty()) {
        out(t, s) = 1.0;
        continue;
      }
      CMatrix minor(rows.size(), cols.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) minor(r, c) = m(rows[r], cols[c]);
      out(t, s) = minor.determinant();
    }
  }
  return {n, std::move(out)};
}

SpinorOperator g_star_inv_diagonal(const RVector& angles) {
  const int n = static_cast<int>(angles.size());
  SpinorOperator out = SpinorOperator::identity(n);
  for (int j = 0; j < n; ++j) {
    CliffordElement pair(n);
    pair.add_term(Mask{3} << (2 * j), 1.0);
    const double half = 0.5 * angles(j);
    out = out * (std::exp(-kI * half) *
                 (std::cos(half) * SpinorOperator::identity(n) + Complex{std::sin(half)} * c_clifford(pair)));
  }
  return out;
}

SpinorOperator g_star_inv(const CMatrix& g) {
  require_unitary(g, "g_star_inv");
  const int n = static_cast<int>(g.rows());
  const auto eig = unitary_eigen(g);
  RVector angles(n);
  for (int j = 0; j < n; ++j) angles(j) = angle_0_2pi(eig.values(j));
  // g = h g0 h^{-1} acts on forms through conj(h): the pullback is antilinear in the dz slots
  const SpinorOperator basis_change = exterior_power(eig.vectors.conjugate());
  return basis_change * g_star_inv_diagonal(angles) * basis_change.adjoint();
}

}  // namespace mpindex
