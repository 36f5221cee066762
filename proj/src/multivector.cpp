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

#include "mpindex/multivector.hpp"

#include <bit>
#include <cmath>
#include <vector>

namespace mpindex {

GrassmannElement::GrassmannElement(int modes) : modes_(modes) {
  require_dims(modes >= 0 && modes <= 15, "GrassmannElement: mode count out of range");
}

GrassmannElement GrassmannElement::scalar(int modes, Complex value) {
  GrassmannElement out(modes);
  out.add_term(0, value);
  return out;
}

GrassmannElement GrassmannElement::generator(int modes, int index) {
  require_dims(index >= 0 && index < 2 * modes, "GrassmannElement: generator index out of range");
  GrassmannElement out(modes);
  out.add_term(Mask{1} << index, 1.0);
  return out;
}

Complex GrassmannElement::coefficient(Mask mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? Complex{} : it->second;
}

int GrassmannElement::homogeneous_degree() const {
  int degree = -1;
  for (const auto& [mask, c] : terms_) {
    int d = std::popcount(mask);
    if (degree >= 0 && d != degree) return -1;
    degree = d;
  }
  return degree;
}

GrassmannElement GrassmannElement::part(int degree) const {
  GrassmannElement out(modes_);
  for (const auto& [mask, c] : terms_)
    if (std::popcount(mask) == degree) out.terms_.emplace(mask, c);
  return out;
}

int GrassmannElement::max_degree() const {
  int degree = -1;
  for (const auto& [mask, c] : terms_) degree = std::max(degree, std::popcount(mask));
  return degree;
}

void GrassmannElement::add_term(Mask mask, Complex value) {
  require_dims(mask >> generators() == 0, "GrassmannElement: mask exceeds generator count");
  auto [it, inserted] = terms_.try_emplace(mask, value);
  if (!inserted) it->second += value;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& other) {
  require_dims(modes_ == other.modes_, "GrassmannElement: mode count mismatch");
  for (const auto& [mask, c] : other.terms_) add_term(mask, c);
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& other) {
  require_dims(modes_ == other.modes_, "GrassmannElement: mode count mismatch");
  for (const auto& [mask, c] : other.terms_) add_term(mask, -c);
  return *this;
}

GrassmannElement& GrassmannElement::operator*=(Complex factor) {
  for (auto& [mask, c] : terms_) c *= factor;
  prune();
  return *this;
}

double GrassmannElement::distance(const GrassmannElement& other) const {
  require_dims(modes_ == other.modes_, "GrassmannElement: mode count mismatch");
  double worst = 0.0;
  for (const auto& [mask, c] : terms_) worst = std::max(worst, std::abs(c - other.coefficient(mask)));
  for (const auto& [mask, c] : other.terms_)
    if (!terms_.contains(mask)) worst = std::max(worst, std::abs(c));
  return worst;
}

void GrassmannElement::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
}

int reorder_sign(GrassmannElement::Mask a, GrassmannElement::Mask b) {
  // Each generator in b must move left past every generator of a above it.
  int swaps = 0;
  while (b != 0) {
    int j = std::countr_zero(b);
    swaps += std::popcount(a >> (j + 1));
    b &= b - 1;
  }
  return (swaps & 1) ? -1 : 1;
}

GrassmannElement wedge(const GrassmannElement& u, const GrassmannElement& v) {
  require_dims(u.modes() == v.modes(), "wedge: mode count mismatch");
  GrassmannElement out(u.modes());
  for (const auto& [ma, ca] : u.terms())
    for (const auto& [mb, cb] : v.terms()) {
      if (ma & mb) continue;
      out.add_term(ma | mb, static_cast<double>(reorder_sign(ma, mb)) * ca * cb);
    }
  return out;
}

GrassmannElement sigma_one_form(const CVector& z) {
  const int n = static_cast<int>(z.size());
  GrassmannElement out(n);
  for (int j = 0; j < n; ++j) {
    out.add_term(GrassmannElement::Mask{1} << (2 * j), z(j).imag());
    out.add_term(GrassmannElement::Mask{1} << (2 * j + 1), z(j).real());
  }
  return out;
}

GrassmannElement symplectic_form(int modes) {
  GrassmannElement out(modes);
  for (int j = 0; j < modes; ++j) out.add_term(GrassmannElement::Mask{3} << (2 * j), 1.0);
  return out;
}

GrassmannElement exp_neg_omega(int modes) {
  const GrassmannElement minus_omega = symplectic_form(modes) * Complex{-1.0};
  GrassmannElement sum = GrassmannElement::scalar(modes, 1.0);
  GrassmannElement power = GrassmannElement::scalar(modes, 1.0);
  for (int k = 1; k <= modes; ++k) {
    power = wedge(power, minus_omega) * Complex{1.0 / k};
    sum += power;
  }
  return sum;
}

GrassmannElement substitute(const GrassmannElement& u, const RMatrix& images, int target_modes) {
  require_dims(images.cols() == u.generators() && images.rows() == 2 * target_modes,
               "substitute: image matrix has wrong shape");
  std::vector<GrassmannElement> image_forms;
  image_forms.reserve(images.cols());
  for (int i = 0; i < images.cols(); ++i) {
    GrassmannElement g(target_modes);
    for (int l = 0; l < images.rows(); ++l) g.add_term(GrassmannElement::Mask{1} << l, images(l, i));
    image_forms.push_back(std::move(g));
  }
  GrassmannElement out(target_modes);
  for (const auto& [mask, c] : u.terms()) {
    GrassmannElement product = GrassmannElement::scalar(target_modes, c);
    for (auto m = mask; m != 0 && !product.is_zero(); m &= m - 1)
      product = wedge(product, image_forms[std::countr_zero(m)]);
    out += product;
  }
  return out;
}

RMatrix restriction_pullback(const CMatrix& basis) {
  const auto n = basis.rows();
  const auto k = basis.cols();
  RMatrix images = RMatrix::Zero(2 * k, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < k; ++l) {
      const Complex b = basis(j, l);
      // x_j = sum_l Im(b) p'_l + Re(b) x'_l ;  p_j = sum_l Re(b) p'_l - Im(b) x'_l
      images(2 * l, 2 * j) = b.real();
      images(2 * l + 1, 2 * j) = b.imag();
      images(2 * l, 2 * j + 1) = -b.imag();
      images(2 * l + 1, 2 * j + 1) = b.real();
    }
  return images;
}

GrassmannElement restrict_to(const GrassmannElement& u, const CMatrix& basis) {
  require_dims(basis.rows() == u.modes(), "restrict_to: basis vectors have wrong length");
  const auto k = basis.cols();
  if (k > 0) {
    const double defect =
        (basis.adjoint() * basis - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (defect > 1e-10) throw ValidationError("restrict_to: basis is not orthonormal");
  }
  return substitute(u, restriction_pullback(basis), static_cast<int>(k));
}

Complex berezin(const GrassmannElement& u) {
  const int k = u.modes();
  const auto top = k == 0 ? GrassmannElement::Mask{0} : (GrassmannElement::Mask{1} << (2 * k)) - 1;
  // dp_l ^ dx_l = -dx_l ^ dp_l for each of the k pairs.
  return (k % 2 ? -1.0 : 1.0) * u.coefficient(top);
}

}  // namespace mpindex
