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

#include "mpindex/group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mpindex/linalg.hpp"

namespace mpindex {

namespace {

Complex inner(const CVector& a, const CVector& b) { return b.dot(a); }  // sum a_j conj(b_j)

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

void Monomial::validate() const {
  require_dims(g.rows() == z.size() && g.cols() == z.size(), "Monomial: g must be n x n with n = |z|");
  require_unitary(g, "Monomial");
}

Monomial Monomial::identity(int n) { return {1.0, CVector::Zero(n), CMatrix::Identity(n, n)}; }

Monomial Monomial::translation(const CVector& z, Complex coeff) {
  return {coeff, z, CMatrix::Identity(z.size(), z.size())};
}

Monomial Monomial::rotation(const CMatrix& g, Complex coeff) {
  require_dims(g.rows() == g.cols(), "Monomial: g must be square");
  return {coeff, CVector::Zero(g.rows()), g};
}

bool same_point(const Monomial& a, const Monomial& b, double tol) {
  if (a.modes() != b.modes()) return false;
  return (a.z - b.z).norm() < tol && max_abs(a.g - b.g) < tol;
}

double heisenberg_phase(const CVector& z1, const CVector& z2) { return -0.5 * inner(z1, z2).imag(); }

Monomial compose(const Monomial& a, const Monomial& b) {
  require_dims(a.modes() == b.modes(), "compose: mode count mismatch");
  const CVector gz = a.g * b.z;
  return {a.coeff * b.coeff * std::polar(1.0, heisenberg_phase(a.z, gz)), a.z + gz, a.g * b.g};
}

Monomial inverse(const Monomial& m) {
  const CMatrix ginv = m.g.adjoint();
  return {1.0 / m.coeff, -(ginv * m.z), ginv};
}

Monomial adjoint(const Monomial& m) {
  Monomial inv = inverse(m);
  inv.coeff = std::conj(m.coeff);
  return inv;
}

AlgebraElement::AlgebraElement(const Monomial& m) : modes_(m.modes()) { add(m); }

void AlgebraElement::add(const Monomial& m) {
  require_dims(m.modes() == modes_, "AlgebraElement: mode count mismatch");
  for (auto it = terms_.begin(); it != terms_.end(); ++it)
    if (same_point(*it, m)) {
      it->coeff += m.coeff;
      if (std::abs(it->coeff) < kPruneThreshold) terms_.erase(it);
      return;
    }
  if (std::abs(m.coeff) >= kPruneThreshold) terms_.push_back(m);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  for (const auto& m : other.terms_) add(m);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex c) {
  for (auto& m : terms_) m.coeff *= c;
  std::erase_if(terms_, [](const Monomial& m) { return std::abs(m.coeff) < kPruneThreshold; });
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_dims(a.modes_ == b.modes_, "AlgebraElement: mode count mismatch");
  AlgebraElement out(a.modes_);
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) out.add(compose(x, y));
  return out;
}

AlgebraElement AlgebraElement::adjoint() const {
  AlgebraElement out(modes_);
  for (const auto& m : terms_) out.add(mpindex::adjoint(m));
  return out;
}

double AlgebraElement::distance(const AlgebraElement& other) const {
  AlgebraElement diff = *this;
  for (Monomial m : other.terms_) {
    m.coeff = -m.coeff;
    diff.add(m);
  }
  double worst = 0.0;
  for (const auto& m : diff.terms_) worst = std::max(worst, std::abs(m.coeff));
  return worst;
}

FixedPointData fixed_point_data(const CMatrix& g, double tol) {
  require_dims(g.rows() == g.cols(), "fixed_point_data: g must be square");
  const int n = static_cast<int>(g.rows());
  const auto eig = unitary_eigen(g);
  std::vector<int> moving, fixed;
  for (int j = 0; j < n; ++j) (std::abs(eig.values(j) - 1.0) < tol ? fixed : moving).push_back(j);
  FixedPointData out;
  out.angles.resize(static_cast<Eigen::Index>(moving.size()));
  out.eigenvectors.resize(n, static_cast<Eigen::Index>(moving.size()));
  out.fixed_basis.resize(n, static_cast<Eigen::Index>(fixed.size()));
  for (std::size_t i = 0; i < moving.size(); ++i) {
    out.angles(i) = angle_0_2pi(eig.values(moving[i]));
    out.eigenvectors.col(i) = eig.vectors.col(moving[i]);
  }
  for (std::size_t i = 0; i < fixed.size(); ++i) out.fixed_basis.col(i) = eig.vectors.col(fixed[i]);
  return out;
}

bool affine_has_fixed_point(const CVector& z, const CMatrix& g, double tol) {
  const auto fp = fixed_point_data(g);
  const CVector coords = fp.fixed_basis.adjoint() * z;
  return coords.norm() < tol * (1.0 + z.norm());
}

Complex fixed_point_weight(const CVector& z, const FixedPointData& fp) {
  double exponent = 0.0;
  for (int j = 0; j < fp.m(); ++j) {
    const double c = std::abs(inner(z, fp.eigenvectors.col(j)));
    exponent += 0.25 * c * c / std::tan(0.5 * fp.angles(j));
  }
  return std::polar(1.0, exponent);
}

double epsilon_phase_unreduced(const std::vector<CVector>& w) {
  if (w.empty()) return 0.0;
  Monomial acc = Monomial::translation(w.front());
  double phase = 0.0;
  for (std::size_t j = 1; j < w.size(); ++j) {
    phase += heisenberg_phase(acc.z, w[j]);
    acc.z += w[j];
  }
  // T_z T_z^{-1} = T_z T_{-z} contributes Im(-|z|^2) = 0
  phase += heisenberg_phase(acc.z, -acc.z);
  return phase;
}

double epsilon_phase(const std::vector<CVector>& w) { return reduce_angle(epsilon_phase_unreduced(w)); }

double epsilon_closed_form(const std::vector<CVector>& w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) sum += inner(w[j], w[i]).imag();
  return 0.5 * sum;
}

WTransform w_transform(const std::vector<CVector>& zs, const std::vector<CMatrix>& gs) {
  require_dims(zs.size() == gs.size() && !zs.empty(), "w_transform: list lengths differ or are empty");
  const auto n = zs.front().size();
  WTransform out;
  CMatrix prefix = CMatrix::Identity(n, n);
  out.z = CVector::Zero(n);
  for (std::size_t j = 0; j < zs.size(); ++j) {
    require_dims(zs[j].size() == n && gs[j].rows() == n && gs[j].cols() == n, "w_transform: dimension mismatch");
    out.w.push_back(prefix * zs[j]);
    out.z += out.w.back();
    prefix = prefix * gs[j];
  }
  out.g = prefix;
  return out;
}

std::pair<CVector, CMatrix> conjugate_point(const CVector& w, const CMatrix& h, const CVector& z, const CMatrix& g) {
  const CMatrix g2 = h * g * h.adjoint();
  const auto n = g.rows();
  return {h * z + (CMatrix::Identity(n, n) - g2) * w, g2};
}

std::optional<ConjugacyWitness> conjugacy_witness(const CVector& z1, const CMatrix& g1, const CVector& z2,
                                                  const CMatrix& g2, double tol) {
  const auto n = g1.rows();
  if (g2.rows() != n || z1.size() != n || z2.size() != n) return std::nullopt;
  const auto e1 = unitary_eigen(g1), e2 = unitary_eigen(g2);

  auto sorted = [&](const UnitaryEigen& e) {
    std::vector<std::pair<double, Eigen::Index>> keyed;
    for (Eigen::Index j = 0; j < n; ++j) {
      const bool one = std::abs(e.values(j) - 1.0) < kFixedEigenTolerance;
      keyed.emplace_back(one ? 0.0 : angle_0_2pi(e.values(j)), j);
    }
    std::sort(keyed.begin(), keyed.end());
    return keyed;
  };
  const auto s1 = sorted(e1), s2 = sorted(e2);
  CMatrix u1(n, n), u2(n, n);
  std::vector<Eigen::Index> fixed2;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(e1.values(s1[j].second) - e2.values(s2[j].second)) > tol) return std::nullopt;
    u1.col(j) = e1.vectors.col(s1[j].second);
    u2.col(j) = e2.vectors.col(s2[j].second);
    if (std::abs(e2.values(s2[j].second) - 1.0) < kFixedEigenTolerance) fixed2.push_back(j);
  }
  CMatrix h = u2 * u1.adjoint();

  // On the fixed space of g2 the translation part is only movable by a unitary of that space.
  CMatrix p2 = CMatrix::Zero(n, n);
  for (auto j : fixed2) p2 += u2.col(j) * u2.col(j).adjoint();
  const CVector a = p2 * (h * z1), b = p2 * z2;
  const double scale = 1.0 + z1.norm() + z2.norm();
  if (std::abs(a.norm() - b.norm()) > tol * scale) return std::nullopt;
  if (a.norm() > tol * scale) {
    const Complex ab = inner(b, a);  // (b, a)
    const Complex phase = std::abs(ab) > 0 ? ab / std::abs(ab) : Complex{1.0};
    CMatrix v = CMatrix::Identity(n, n) + (phase - 1.0) * p2;
    const CVector diff = phase * a - b;
    if (diff.norm() > tol * scale) {
      const CVector u = diff / diff.norm();
      v = (CMatrix::Identity(n, n) - 2.0 * u * u.adjoint()) * v;
    }
    h = v * h;
  }

  const CVector r = z2 - h * z1;
  CVector w = CVector::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex lambda = e2.values(s2[j].second);
    if (std::abs(lambda - 1.0) < kFixedEigenTolerance) continue;
    w += u2.col(j) * (inner(r, u2.col(j)) / (1.0 - lambda));
  }
  const auto [zc, gc] = conjugate_point(w, h, z1, g1);
  if (max_abs(gc - g2) > tol * 10 || (zc - z2).norm() > tol * scale) return std::nullopt;
  return ConjugacyWitness{h, w};
}

bool same_conjugacy_class(const CVector& z1, const CMatrix& g1, const CVector& z2, const CMatrix& g2, double tol) {
  return conjugacy_witness(z1, g1, z2, g2, tol).has_value();
}

}  // namespace mpindex
