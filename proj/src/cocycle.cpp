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

#include "mpindex/cocycle.hpp"

#include <cmath>

#include "mpindex/linalg.hpp"

namespace mpindex {

namespace {

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

bool same_term_point(const NCTerm& a, const NCTerm& b) {
  return (a.z - b.z).norm() < kMergeTolerance && max_abs(a.g - b.g) < kMergeTolerance;
}

void check_args(int k, const std::vector<AlgebraElement>& args) {
  if (k < 0) throw ValidationError("psi: k must be nonnegative");
  require_dims(static_cast<int>(args.size()) == 2 * k + 1, "psi: expected 2k+1 arguments");
  for (const auto& a : args) require_dims(a.modes() == args.front().modes(), "psi: mode count mismatch");
}

// Mixed-radix walk over one monomial from each argument.
std::vector<Monomial> tuple_at(const std::vector<AlgebraElement>& args, long index) {
  std::vector<Monomial> tuple;
  tuple.reserve(args.size());
  for (const auto& a : args) {
    const long size = static_cast<long>(a.terms().size());
    tuple.push_back(a.terms()[static_cast<std::size_t>(index % size)]);
    index /= size;
  }
  return tuple;
}

long tuple_count(const std::vector<AlgebraElement>& args) {
  long count = 1;
  for (const auto& a : args) count *= static_cast<long>(a.terms().size());
  return count;
}

struct TupleData {
  WTransform wt;
  FixedPointData fp;
  bool contributes = false;
};

TupleData analyse(int k, const std::vector<Monomial>& tuple) {
  std::vector<CVector> zs;
  std::vector<CMatrix> gs;
  for (const auto& m : tuple) {
    zs.push_back(m.z);
    gs.push_back(m.g);
  }
  TupleData out{w_transform(zs, gs), {}, false};
  out.fp = fixed_point_data(out.wt.g);
  const CVector fixed_coords = out.fp.fixed_basis.adjoint() * out.wt.z;
  const bool has_fixed_point = fixed_coords.norm() < kFixedEigenTolerance * (1.0 + out.wt.z.norm());
  out.contributes = has_fixed_point && k <= out.fp.dim_fixed();
  return out;
}

}  // namespace

NCForm::NCForm(const AlgebraElement& a) : modes_(a.modes()) {
  for (const auto& m : a.terms()) add({GrassmannElement::scalar(modes_, m.coeff), m.z, m.g});
}

NCForm NCForm::term(const GrassmannElement& u, const CVector& z, const CMatrix& g) {
  NCForm out(u.modes());
  out.add({u, z, g});
  return out;
}

void NCForm::add(const NCTerm& t) {
  require_dims(t.u.modes() == modes_ && t.z.size() == modes_, "NCForm: mode count mismatch");
  if (t.u.is_zero()) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it)
    if (same_term_point(*it, t)) {
      it->u += t.u;
      if (it->u.is_zero()) terms_.erase(it);
      return;
    }
  terms_.push_back(t);
}

NCForm& NCForm::operator+=(const NCForm& other) {
  for (const auto& t : other.terms_) add(t);
  return *this;
}

NCForm& NCForm::operator*=(Complex c) {
  for (auto& t : terms_) t.u *= c;
  std::erase_if(terms_, [](const NCTerm& t) { return t.u.is_zero(); });
  return *this;
}

int NCForm::homogeneous_degree() const {
  int degree = -1;
  for (const auto& t : terms_) {
    const int d = t.u.homogeneous_degree();
    if (d < 0 || (degree >= 0 && d != degree)) return -1;
    degree = d;
  }
  return degree;
}

double NCForm::distance(const NCForm& other) const {
  const NCForm diff = *this - other;
  double worst = 0.0;
  for (const auto& t : diff.terms_) worst = std::max(worst, t.u.distance(GrassmannElement(modes_)));
  return worst;
}

RMatrix rho_matrix(const CMatrix& g) {
  const auto n = g.rows();
  RMatrix images(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l) {
      const Complex c = g(l, j);
      // dx_j -> sigma(i g e_j), dp_j -> sigma(g e_j)
      images(2 * l, 2 * j) = c.real();
      images(2 * l + 1, 2 * j) = -c.imag();
      images(2 * l, 2 * j + 1) = c.imag();
      images(2 * l + 1, 2 * j + 1) = c.real();
    }
  return images;
}

GrassmannElement rho(const CMatrix& g, const GrassmannElement& u) {
  require_dims(g.rows() == u.modes() && g.cols() == u.modes(), "rho: dimension mismatch");
  return substitute(u, rho_matrix(g), u.modes());
}

NCForm ncform_mul(const NCForm& a, const NCForm& b) {
  require_dims(a.modes() == b.modes(), "ncform_mul: mode count mismatch");
  NCForm out(a.modes());
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      const CVector gz = x.g * y.z;
      GrassmannElement u = wedge(x.u, rho(x.g, y.u)) * std::polar(1.0, heisenberg_phase(x.z, gz));
      out.add({std::move(u), x.z + gz, x.g * y.g});
    }
  return out;
}

NCForm d(const NCForm& a) {
  NCForm out(a.modes());
  for (const auto& t : a.terms()) {
    const GrassmannElement s = sigma_one_form(t.z);
    for (int deg = 0; deg <= t.u.max_degree(); ++deg) {
      const GrassmannElement part = t.u.part(deg);
      if (part.is_zero()) continue;
      out.add({wedge(part, s) * Complex{deg % 2 ? -1.0 : 1.0}, t.z, t.g});
    }
  }
  return out;
}

Complex tau_localized(const CVector& z0, const CMatrix& g0, const NCForm& a) {
  require_dims(z0.size() == a.modes() && g0.rows() == a.modes(), "tau_localized: anchor dimension mismatch");
  if (!affine_has_fixed_point(z0, g0)) throw DomainError("tau_localized: anchor has no affine fixed point");
  const GrassmannElement volume = exp_neg_omega(a.modes());
  Complex sum{};
  for (const auto& t : a.terms()) {
    if (!same_conjugacy_class(t.z, t.g, z0, g0)) continue;
    const auto fp = fixed_point_data(t.g);
    sum += fixed_point_weight(t.z, fp) * berezin(restrict_to(wedge(t.u, volume), fp.fixed_basis));
  }
  return sum;
}

Complex phi_cocycle(const CVector& z0, const CMatrix& g0, const std::vector<AlgebraElement>& args) {
  require_dims(!args.empty(), "phi_cocycle: needs at least one argument");
  NCForm prod(args.front());
  for (std::size_t j = 1; j < args.size(); ++j) prod = ncform_mul(prod, d(NCForm(args[j])));
  return tau_localized(z0, g0, prod);
}

Complex psi_monomial(int k, const std::vector<Monomial>& tuple) {
  if (k < 0) throw ValidationError("psi: k must be nonnegative");
  require_dims(static_cast<int>(tuple.size()) == 2 * k + 1, "psi: expected 2k+1 monomials");
  const int n = tuple.front().modes();
  if (k > n) return 0.0;
  const TupleData data = analyse(k, tuple);
  if (!data.contributes) return 0.0;
  GrassmannElement form = GrassmannElement::scalar(n, 1.0);
  for (int j = 1; j <= 2 * k; ++j) form = wedge(form, sigma_one_form(data.wt.w[j]));
  form = wedge(form, exp_neg_omega(n));
  Complex coeff = 1.0;
  for (const auto& m : tuple) coeff *= m.coeff;
  const Complex prefactor = std::pow(kI, -k) / factorial(2 * k);
  return prefactor * coeff * std::polar(1.0, epsilon_phase(data.wt.w)) * fixed_point_weight(data.wt.z, data.fp) *
         berezin(restrict_to(form, data.fp.fixed_basis));
}

Complex psi_serial(int k, const std::vector<AlgebraElement>& args) {
  check_args(k, args);
  if (k > args.front().modes()) return 0.0;
  const long count = tuple_count(args);
  Complex sum{};
  for (long idx = 0; idx < count; ++idx) sum += psi_monomial(k, tuple_at(args, idx));
  return sum;
}

Complex psi(int k, const std::vector<AlgebraElement>& args) {
  check_args(k, args);
  if (k > args.front().modes()) return 0.0;
  const long count = tuple_count(args);
  double re = 0.0, im = 0.0;
#pragma omp parallel for reduction(+ : re, im) schedule(dynamic)
  for (long idx = 0; idx < count; ++idx) {
    const Complex v = psi_monomial(k, tuple_at(args, idx));
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

PsiResult psi_with_classes(int k, const std::vector<AlgebraElement>& args) {
  check_args(k, args);
  PsiResult out{psi(k, args), {}};
  if (k > args.front().modes()) return out;
  const long count = tuple_count(args);
  for (long idx = 0; idx < count; ++idx) {
    const auto data = analyse(k, tuple_at(args, idx));
    if (!data.contributes) continue;
    bool seen = false;
    for (const auto& c : out.classes)
      if (same_conjugacy_class(c.z, c.g, data.wt.z, data.wt.g)) {
        seen = true;
        break;
      }
    if (!seen) out.classes.push_back({data.wt.z, data.wt.g});
  }
  return out;
}

Complex psi_1d_closed_form(int k, const std::vector<Monomial>& tuple) {
  if (k < 0) throw ValidationError("psi_1d_closed_form: k must be nonnegative");
  require_dims(static_cast<int>(tuple.size()) == 2 * k + 1, "psi_1d_closed_form: expected 2k+1 monomials");
  for (const auto& m : tuple) require_dims(m.modes() == 1, "psi_1d_closed_form: one-mode monomials only");
  if (k > 1) return 0.0;
  Complex coeff = 1.0;
  for (const auto& m : tuple) coeff *= m.coeff;
  if (k == 0) {
    const Complex g = tuple[0].g(0, 0), z = tuple[0].z(0);
    if (std::abs(g - 1.0) < kFixedEigenTolerance) return std::abs(z) < kFixedEigenTolerance ? coeff : 0.0;
    const double phi = angle_0_2pi(g);
    return coeff * std::polar(1.0, 0.25 * std::norm(z) / std::tan(0.5 * phi));
  }
  const Complex e0 = tuple[0].g(0, 0), e1 = tuple[1].g(0, 0), e2 = tuple[2].g(0, 0);
  const Complex z0 = tuple[0].z(0), z1 = tuple[1].z(0), z2 = tuple[2].z(0);
  if (std::abs(e0 * e1 * e2 - 1.0) >= kFixedEigenTolerance) return 0.0;
  const Complex w = z0 + e0 * z1 + e0 * e1 * z2;
  if (std::abs(w) >= kFixedEigenTolerance * (1.0 + std::abs(w))) return 0.0;
  const double eps = 0.5 * (e0 * z1 * std::conj(z0) + e1 * z2 * std::conj(z1) + e0 * e1 * z2 * std::conj(z0)).imag();
  return coeff * std::polar(1.0, eps) / 4.0 * (z1 * std::conj(z2) * std::conj(e1) - std::conj(z1) * z2 * e1);
}

ProjectionMatrix::ProjectionMatrix(int size, int modes)
    : size_(size), modes_(modes), entries_(static_cast<std::size_t>(size) * size, AlgebraElement(modes)) {
  require_dims(size >= 0, "ProjectionMatrix: negative size");
}

ProjectionMatrix::ProjectionMatrix(int size, std::vector<AlgebraElement> entries, bool validate, double tol)
    : size_(size), modes_(entries.empty() ? 0 : entries.front().modes()), entries_(std::move(entries)) {
  require_dims(static_cast<int>(entries_.size()) == size * size, "ProjectionMatrix: expected size^2 entries");
  for (const auto& e : entries_) require_dims(e.modes() == modes_, "ProjectionMatrix: mode count mismatch");
  if (!validate) return;
  if ((*this * *this).distance(*this) > tol) throw ValidationError("ProjectionMatrix: p^2 != p");
  if (adjoint().distance(*this) > tol) throw ValidationError("ProjectionMatrix: p^* != p");
}

ProjectionMatrix ProjectionMatrix::operator*(const ProjectionMatrix& other) const {
  require_dims(size_ == other.size_ && modes_ == other.modes_, "ProjectionMatrix: shape mismatch");
  ProjectionMatrix out(size_, modes_);
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j)
      for (int l = 0; l < size_; ++l) out(i, j) += (*this)(i, l) * other(l, j);
  return out;
}

ProjectionMatrix ProjectionMatrix::adjoint() const {
  ProjectionMatrix out(size_, modes_);
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) out(i, j) = (*this)(j, i).adjoint();
  return out;
}

double ProjectionMatrix::distance(const ProjectionMatrix& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) worst = std::max(worst, entries_[i].distance(other.entries_[i]));
  return worst;
}

ProjectionMatrix ProjectionMatrix::shifted(Complex c) const {
  ProjectionMatrix out = *this;
  for (int i = 0; i < size_; ++i) out(i, i) += -c * AlgebraElement::identity(modes_);
  return out;
}

Complex pair_with_projection(const ProjectionMatrix& p) {
  const int n = p.modes(), size = p.size();
  Complex total{};
  for (int i = 0; i < size; ++i) total += psi(0, {p(i, i)});
  const ProjectionMatrix p_half = p.shifted(0.5);
  for (int k = 1; k <= n; ++k) {
    const int slots = 2 * k + 1;
    long cycles = 1;
    for (int s = 0; s < slots; ++s) cycles *= size;
    Complex sum{};
    for (long idx = 0; idx < cycles; ++idx) {
      std::vector<int> ind(slots);
      long rest = idx;
      for (int s = 0; s < slots; ++s) {
        ind[s] = static_cast<int>(rest % size);
        rest /= size;
      }
      std::vector<AlgebraElement> args;
      bool zero = false;
      for (int s = 0; s < slots; ++s) {
        const AlgebraElement& e = (s == 0 ? p_half : p)(ind[s], ind[(s + 1) % slots]);
        if (e.empty()) zero = true;
        args.push_back(e);
      }
      if (!zero) sum += psi(k, args);
    }
    total += (k % 2 ? -1.0 : 1.0) * factorial(2 * k) / factorial(k) * sum;
  }
  return total;
}

Complex torus_psi(int k, const std::vector<AlgebraElement>& args) {
  check_args(k, args);
  const int n = args.front().modes();
  for (const auto& a : args)
    for (const auto& m : a.terms())
      if (max_abs(m.g - CMatrix::Identity(n, n)) > 1e-10) throw ValidationError("torus_psi: arguments must have g = Id");
  if (k > n) return 0.0;
  NCForm prod(args.front());
  for (std::size_t j = 1; j < args.size(); ++j) prod = ncform_mul(prod, d(NCForm(args[j])));
  GrassmannElement zero_part(n);
  for (const auto& t : prod.terms())
    if (t.z.norm() < kMergeTolerance) zero_part += t.u;
  return std::pow(kI, -k) / factorial(2 * k) * berezin(wedge(zero_part, exp_neg_omega(n)));
}

}  // namespace mpindex
