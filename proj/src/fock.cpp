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

#include "mpindex/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <utility>

#include <gsl/gsl_sf_zeta.h>
#include <omp.h>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "mpindex/clifford.hpp"
#include "mpindex/linalg.hpp"

namespace mpindex {

namespace {

int popcount(Eigen::Index s) { return std::popcount(static_cast<unsigned long>(s)); }

CMatrix kron_all(const std::vector<CMatrix>& factors) {
  CMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    CMatrix next = Eigen::kroneckerProduct(out, factors[i]).eval();
    out = std::move(next);
  }
  return out;
}

// A on mode j, identity elsewhere
CMatrix embed_mode(const FockSpace& space, const CMatrix& op, int j) {
  std::vector<CMatrix> f(space.modes(), CMatrix::Identity(space.mode_dim(), space.mode_dim()));
  f[j] = op;
  return kron_all(f);
}

void require_dense(Eigen::Index dim) {
  if (dim > kMaxDenseDim) throw SizingError("dense Fock matrix of dimension " + std::to_string(dim) + " refused");
}

}  // namespace

// ---- FockSpace

FockSpace::FockSpace(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
  if (modes < 1) throw ValidationError("FockSpace: need at least one mode");
  if (cutoff < 1) throw ValidationError("FockSpace: cutoff must be positive");
  const int limit = modes == 1 ? kMaxCutoffOneMode : modes == 2 ? kMaxCutoffTwoModes : 0;
  if (cutoff > limit)
    throw SizingError("FockSpace: cutoff " + std::to_string(cutoff) + " outside the supported envelope for " +
                      std::to_string(modes) + " modes");
  padding_ = 48 + cutoff / 16;
}

Eigen::Index FockSpace::boson_dim() const {
  Eigen::Index d = 1;
  for (int j = 0; j < modes_; ++j) d *= mode_dim();
  return d;
}

CMatrix FockSpace::ladder(Eigen::Index dim) const {
  if (dim < 0) dim = mode_dim();
  CMatrix a = CMatrix::Zero(dim, dim);
  for (Eigen::Index m = 1; m < dim; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  return a;
}

CMatrix FockSpace::mode_x() const {
  const CMatrix a = ladder();
  return (a + a.adjoint()) / std::sqrt(2.0);
}

CMatrix FockSpace::mode_p() const {
  const CMatrix a = ladder();
  return kI * (a.adjoint() - a) / std::sqrt(2.0);
}

CMatrix FockSpace::mode_T(Complex z) const {
  const Eigen::Index big = mode_dim() + padding_;
  // i(k x - a p) = beta a^dag - conj(beta) a with beta = conj(z)/sqrt2. Write
  // beta = r e^{i theta}; the phase is the gauge diag(e^{i m theta}), leaving a
  // real antisymmetric generator for the exponential.
  const Complex beta = std::conj(z) / std::sqrt(2.0);
  const double r = std::abs(beta), theta = std::arg(beta);
  RMatrix gen = RMatrix::Zero(big, big);
  for (Eigen::Index m = 1; m < big; ++m) {
    const double s = r * std::sqrt(static_cast<double>(m));
    gen(m, m - 1) = s;
    gen(m - 1, m) = -s;
  }
  const RMatrix e = gen.exp();
  CMatrix out = e.topLeftCorner(mode_dim(), mode_dim()).cast<Complex>();
  for (Eigen::Index i = 0; i < mode_dim(); ++i)
    for (Eigen::Index j = 0; j < mode_dim(); ++j) out(i, j) *= std::polar(1.0, theta * static_cast<double>(i - j));
  return out;
}

CVector FockSpace::mode_R(double phi) const {
  CVector d(mode_dim());
  for (Eigen::Index m = 0; m < mode_dim(); ++m) d(m) = std::polar(1.0, -phi * static_cast<double>(m));
  return d;
}

std::vector<int> FockSpace::levels(Eigen::Index boson_index) const {
  std::vector<int> out(modes_);
  for (int j = modes_ - 1; j >= 0; --j) {
    out[j] = static_cast<int>(boson_index % mode_dim());
    boson_index /= mode_dim();
  }
  return out;
}

RVector FockSpace::boson_energies() const {
  RVector e(boson_dim());
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    double s = 0.5 * modes_;
    for (int m : levels(i)) s += m;
    e(i) = s;
  }
  return e;
}

RVector FockSpace::full_energies() const {
  const RVector h = boson_energies();
  RVector e(full_dim());
  for (Eigen::Index s = 0; s < spinor_dim(); ++s)
    e.segment(s * boson_dim(), boson_dim()) = h.array() + (popcount(s) - 0.5 * modes_);
  return e;
}

RVector FockSpace::full_grading() const {
  RVector g(full_dim());
  for (Eigen::Index s = 0; s < spinor_dim(); ++s)
    g.segment(s * boson_dim(), boson_dim()).setConstant(popcount(s) % 2 ? -1.0 : 1.0);
  return g;
}

std::vector<Eigen::Index> FockSpace::low_block(int max_level) const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < boson_dim(); ++i) {
    int total = 0;
    for (int m : levels(i)) total += m;
    if (total <= max_level) out.push_back(i);
  }
  return out;
}

std::vector<Eigen::Index> FockSpace::low_block_full(int max_level) const {
  const auto b = low_block(max_level);
  std::vector<Eigen::Index> out;
  for (Eigen::Index s = 0; s < spinor_dim(); ++s)
    for (auto i : b) out.push_back(s * boson_dim() + i);
  return out;
}

// ---- FockOperator

FockOperator::FockOperator(const FockSpace& space, CMatrix matrix, bool spinor)
    : modes_(space.modes()), cutoff_(space.cutoff()), spinor_(spinor), matrix_(std::move(matrix)) {
  const Eigen::Index dim = spinor ? space.full_dim() : space.boson_dim();
  require_dims(matrix_.rows() == dim && matrix_.cols() == dim, "FockOperator: matrix does not fit the space");
}

void FockOperator::require_compatible(const FockOperator& other) const {
  require_dims(modes_ == other.modes_ && cutoff_ == other.cutoff_ && spinor_ == other.spinor_,
               "FockOperator: operands live on different spaces");
}

FockOperator FockOperator::adjoint() const { return {modes_, cutoff_, matrix_.adjoint(), spinor_}; }

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  a.require_compatible(b);
  return {a.modes_, a.cutoff_, a.matrix_ * b.matrix_, a.spinor_};
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  a.require_compatible(b);
  return {a.modes_, a.cutoff_, a.matrix_ + b.matrix_, a.spinor_};
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  a.require_compatible(b);
  return {a.modes_, a.cutoff_, a.matrix_ - b.matrix_, a.spinor_};
}

FockOperator operator*(Complex c, FockOperator a) {
  a.matrix_ *= c;
  return a;
}

double FockOperator::block_distance(const FockOperator& other, const std::vector<Eigen::Index>& block) const {
  require_compatible(other);
  double worst = 0.0;
  for (auto i : block)
    for (auto j : block) worst = std::max(worst, std::abs(matrix_(i, j) - other.matrix_(i, j)));
  return worst;
}

// ---- operators

FockOperator fock_T(const FockSpace& space, const CVector& z) {
  require_dims(z.size() == space.modes(), "fock_T: z has the wrong length");
  require_dense(space.boson_dim());
  std::vector<CMatrix> f;
  for (int j = 0; j < space.modes(); ++j) f.push_back(space.mode_T(z(j)));
  return {space, kron_all(f), false};
}

FockOperator fock_R_diag(const FockSpace& space, const RVector& angles) {
  require_dims(angles.size() == space.modes(), "fock_R_diag: wrong number of angles");
  require_dense(space.boson_dim());
  std::vector<CMatrix> f;
  for (int j = 0; j < space.modes(); ++j) f.push_back(space.mode_R(angles(j)).asDiagonal());
  return {space, kron_all(f), false};
}

FockOperator fock_H(const FockSpace& space) {
  require_dense(space.boson_dim());
  return {space, space.boson_energies().cast<Complex>().asDiagonal(), false};
}

FockOperator lift(const FockSpace& space, const FockOperator& boson) {
  require_dims(!boson.spinor(), "lift: operator already acts on spinors");
  require_dense(space.full_dim());
  CMatrix id = CMatrix::Identity(space.spinor_dim(), space.spinor_dim());
  return {space, Eigen::kroneckerProduct(id, boson.matrix()).eval(), true};
}

FockOperator fock_R_bold(const FockSpace& space, const RVector& angles) {
  require_dense(space.full_dim());
  const CMatrix spin = g_star_inv_diagonal(angles).matrix();
  return {space, Eigen::kroneckerProduct(spin, fock_R_diag(space, angles).matrix()).eval(), true};
}

FockOperator fock_D(const FockSpace& space) {
  require_dense(space.full_dim());
  const int n = space.modes();
  const CMatrix a = space.ladder();
  CMatrix d = CMatrix::Zero(space.full_dim(), space.full_dim());
  for (int j = 0; j < n; ++j) {
    const CMatrix aj = embed_mode(space, a, j);
    d += Eigen::kroneckerProduct(creation(n, j).matrix(), aj).eval();
    d += Eigen::kroneckerProduct(annihilation(n, j).matrix(), aj.adjoint()).eval();
  }
  return {space, d, true};
}

FockOperator fock_D_squared(const FockSpace& space) {
  require_dense(space.full_dim());
  return {space, space.full_energies().cast<Complex>().asDiagonal(), true};
}

RVector diagonal_angles(const CMatrix& g, double tol) {
  require_unitary(g, "diagonal_angles");
  const CMatrix off = g - CMatrix(g.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() > tol) throw ValidationError("Fock oracle handles diagonal g only; pre-rotate z");
  RVector angles(g.rows());
  for (Eigen::Index j = 0; j < g.rows(); ++j) angles(j) = angle_0_2pi(g(j, j));
  return angles;
}

FockOperator fock_monomial(const FockSpace& space, const Monomial& m) {
  m.validate();
  require_dims(m.modes() == space.modes(), "fock_monomial: mode count mismatch");
  const RVector angles = diagonal_angles(m.g);
  return m.coeff * (lift(space, fock_T(space, m.z)) * fock_R_bold(space, angles));
}

// ---- traces

namespace {

const RVector& energies_for(const FockOperator& b, const FockSpace& space, RVector& store) {
  store = b.spinor() ? space.full_energies() : space.boson_energies();
  return store;
}

void require_positive(double t) {
  if (!(t > 0.0)) throw DomainError("heat trace needs t > 0");
}

}  // namespace

Complex heat_trace(const FockOperator& b, double t) {
  require_positive(t);
  const FockSpace space(b.modes(), b.cutoff());
  RVector e;
  energies_for(b, space, e);
  Complex s{};
  for (Eigen::Index i = 0; i < e.size(); ++i) s += b.matrix()(i, i) * std::exp(-t * e(i));
  return s;
}

std::vector<Complex> heat_trace_samples_serial(const FockOperator& b, const std::vector<double>& ts) {
  std::vector<Complex> out;
  for (double t : ts) out.push_back(heat_trace(b, t));
  return out;
}

std::vector<Complex> heat_trace_samples(const FockOperator& b, const std::vector<double>& ts) {
  for (double t : ts) require_positive(t);
  const FockSpace space(b.modes(), b.cutoff());
  RVector e;
  energies_for(b, space, e);
  const CVector diag = b.matrix().diagonal();
  std::vector<Complex> out(ts.size());
  const int count = static_cast<int>(ts.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < count; ++i) {
    Complex s{};
    for (Eigen::Index r = 0; r < e.size(); ++r) s += diag(r) * std::exp(-ts[i] * e(r));
    out[i] = s;
  }
  return out;
}

Complex heat_supertrace(const std::vector<FockOperator>& ops, double t) {
  require_positive(t);
  if (ops.empty()) throw ValidationError("heat_supertrace: empty product");
  for (const auto& op : ops) require_dims(op.spinor(), "heat_supertrace: operators must act on spinor x Fock");
  const FockSpace space(ops[0].modes(), ops[0].cutoff());
  CMatrix prefix = CMatrix::Identity(space.full_dim(), space.full_dim());
  for (std::size_t i = 0; i + 1 < ops.size(); ++i) prefix = prefix * ops[i].matrix();
  const CVector diag = (prefix.array() * ops.back().matrix().transpose().array()).rowwise().sum();
  const RVector e = space.full_energies(), g = space.full_grading();
  Complex s{};
  for (Eigen::Index i = 0; i < e.size(); ++i) s += g(i) * diag(i) * std::exp(-t * e(i));
  return s;
}

Complex mehler_trace(double t) {
  require_positive(t);
  return 1.0 / (std::sqrt(2.0) * std::sqrt(std::cosh(t) - 1.0));
}

Complex mehler_trace(Complex z, double t) {
  require_positive(t);
  const double a = z.real(), k = -z.imag();
  const double ch = std::cosh(t), sh = std::sinh(t);
  return std::exp(-a * a * (ch + 1.0) / (4.0 * sh) - k * k * sh / (4.0 * (ch - 1.0))) /
         (std::sqrt(2.0) * std::sqrt(ch - 1.0));
}

Complex mehler_trace(Complex z, double phi, double t) {
  require_positive(t);
  const double a = z.real(), k = -z.imag();
  const Complex s(t, phi);
  const Complex ch = std::cosh(s), sh = std::sinh(s);
  // sqrt(ch s - 1) continued along t -> t + i phi as sqrt2 sinh(s/2)
  const Complex root = std::sqrt(2.0) * std::sinh(0.5 * s);
  return std::polar(1.0, 0.5 * phi) * std::exp(-a * a * (ch + 1.0) / (4.0 * sh) - k * k * sh / (4.0 * (ch - 1.0))) /
         (std::sqrt(2.0) * root);
}

// ---- mode-by-mode evaluation of a_0 [D,a_1] ... [D,a_2k] e^{-tD^2}

namespace {

// coeff * spin (x) mode[0] (x) ... (x) mode[n-1]
struct Term {
  Complex coeff;
  CMatrix spin;
  std::vector<CMatrix> mode;
};
using Slot = std::vector<Term>;

struct Heat {
  std::vector<RVector> spin;  // signed e^{-tF} on spinor masks, per t
  std::vector<RVector> mode;  // e^{-t(m+1/2)}, per t
};

Heat heat_tables(const FockSpace& space, const std::vector<double>& ts) {
  Heat h;
  const int n = space.modes();
  for (double t : ts) {
    RVector s(space.spinor_dim()), m(space.mode_dim());
    for (Eigen::Index mask = 0; mask < s.size(); ++mask)
      s(mask) = (popcount(mask) % 2 ? -1.0 : 1.0) * std::exp(-t * (popcount(mask) - 0.5 * n));
    for (Eigen::Index l = 0; l < m.size(); ++l) m(l) = std::exp(-t * (static_cast<double>(l) + 0.5));
    h.spin.push_back(s);
    h.mode.push_back(m);
  }
  return h;
}

Term monomial_term(const FockSpace& space, const Monomial& m) {
  m.validate();
  require_dims(m.modes() == space.modes(), "oracle: mode count mismatch");
  const RVector angles = diagonal_angles(m.g);
  Term t{m.coeff, g_star_inv_diagonal(angles).matrix(), {}};
  for (int j = 0; j < space.modes(); ++j)
    t.mode.push_back(space.mode_T(m.z(j)) * space.mode_R(angles(j)).asDiagonal());
  return t;
}

// [D, a] with D = sum_j f_j^dag (x) a_j + f_j (x) a_j^dag
Slot commutator_with_D(const FockSpace& space, const Term& a) {
  const int n = space.modes();
  const CMatrix lower = space.ladder(), raise = lower.adjoint();
  Slot out;
  for (int j = 0; j < n; ++j) {
    const CMatrix fc = creation(n, j).matrix(), fa = annihilation(n, j).matrix();
    auto with = [&](Complex sign, CMatrix spin, CMatrix mj) {
      Term t{sign * a.coeff, std::move(spin), a.mode};
      t.mode[j] = std::move(mj);
      out.push_back(std::move(t));
    };
    with(1.0, fc * a.spin, lower * a.mode[j]);
    with(-1.0, a.spin * fc, a.mode[j] * lower);
    with(1.0, fa * a.spin, raise * a.mode[j]);
    with(-1.0, a.spin * fa, a.mode[j] * raise);
  }
  return out;
}

// [D^2, .] with D^2 = F + sum_j H_j, all diagonal
Slot commutator_with_D2(const FockSpace& space, const Slot& in) {
  const int n = space.modes();
  RVector f(space.spinor_dim()), h(space.mode_dim());
  for (Eigen::Index s = 0; s < f.size(); ++s) f(s) = popcount(s) - 0.5 * n;
  for (Eigen::Index m = 0; m < h.size(); ++m) h(m) = static_cast<double>(m) + 0.5;
  auto ad = [](const RVector& diag, const CMatrix& x) {
    CMatrix y = x;
    for (Eigen::Index c = 0; c < x.cols(); ++c)
      for (Eigen::Index r = 0; r < x.rows(); ++r) y(r, c) *= diag(r) - diag(c);
    return y;
  };
  Slot out;
  for (const auto& t : in) {
    Term fs = t;
    fs.spin = ad(f, t.spin);
    if (fs.spin.cwiseAbs().maxCoeff() > 0.0) out.push_back(std::move(fs));
    for (int j = 0; j < n; ++j) {
      Term hs = t;
      hs.mode[j] = ad(h, t.mode[j]);
      out.push_back(std::move(hs));
    }
  }
  return out;
}

std::vector<Slot> build_slots(const FockSpace& space, const std::vector<Monomial>& monomials,
                              const std::vector<int>& alpha) {
  if (monomials.empty() || monomials.size() % 2 == 0) throw ValidationError("oracle: need an odd number 2k+1 of monomials");
  const std::size_t slots = monomials.size();
  if (!alpha.empty()) require_dims(alpha.size() == slots - 1, "oracle: alpha needs one entry per commutator");
  std::vector<Slot> out;
  out.push_back({monomial_term(space, monomials[0])});
  for (std::size_t i = 1; i < slots; ++i) {
    Slot s = commutator_with_D(space, monomial_term(space, monomials[i]));
    const int reps = alpha.empty() ? 0 : alpha[i - 1];
    if (reps < 0) throw ValidationError("oracle: alpha entries must be nonnegative");
    for (int r = 0; r < reps; ++r) s = commutator_with_D2(space, s);
    out.push_back(std::move(s));
  }
  return out;
}

struct Prefix {
  Complex coeff;
  CMatrix spin;
  std::vector<CMatrix> mode;
};

Prefix extend(const Prefix& p, const Term& t) {
  Prefix out{p.coeff * t.coeff, p.spin * t.spin, {}};
  for (std::size_t j = 0; j < t.mode.size(); ++j) out.mode.push_back(p.mode[j] * t.mode[j]);
  return out;
}

Prefix start(const Term& t) { return {t.coeff, t.spin, t.mode}; }

// add the heat supertrace of prefix * (each term of last) to acc
void close_with(const Prefix* p, const Slot& last, const Heat& heat, std::vector<Complex>& acc) {
  for (const auto& t : last) {
    const CVector ds = p ? CVector((p->spin.array() * t.spin.transpose().array()).rowwise().sum()) : CVector(t.spin.diagonal());
    std::vector<CVector> dm;
    for (std::size_t j = 0; j < t.mode.size(); ++j)
      dm.push_back(p ? CVector((p->mode[j].array() * t.mode[j].transpose().array()).rowwise().sum())
                     : CVector(t.mode[j].diagonal()));
    const Complex c = p ? p->coeff * t.coeff : t.coeff;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      Complex v = c * heat.spin[i].cast<Complex>().dot(ds);  // dot conjugates its left operand
      for (const auto& d : dm) v *= heat.mode[i].cast<Complex>().dot(d);
      acc[i] += v;
    }
  }
}

void descend(const Prefix& p, const std::vector<Slot>& slots, std::size_t depth, const Heat& heat,
             std::vector<Complex>& acc) {
  if (depth + 1 == slots.size()) {
    close_with(&p, slots[depth], heat, acc);
    return;
  }
  for (const auto& t : slots[depth]) descend(extend(p, t), slots, depth + 1, heat, acc);
}

void check_grid(const std::vector<double>& ts) {
  if (ts.empty()) throw ValidationError("oracle: empty t grid");
  for (double t : ts) require_positive(t);
}

}  // namespace

std::vector<Complex> cm_supertrace_samples_serial(const FockSpace& space, const std::vector<Monomial>& monomials,
                                                  const std::vector<double>& ts, const std::vector<int>& alpha) {
  check_grid(ts);
  const auto slots = build_slots(space, monomials, alpha);
  const Heat heat = heat_tables(space, ts);
  std::vector<Complex> acc(ts.size());
  if (slots.size() == 1) {
    close_with(nullptr, slots[0], heat, acc);
    return acc;
  }
  descend(start(slots[0][0]), slots, 1, heat, acc);
  return acc;
}

std::vector<Complex> cm_supertrace_samples(const FockSpace& space, const std::vector<Monomial>& monomials,
                                           const std::vector<double>& ts, const std::vector<int>& alpha) {
  check_grid(ts);
  const auto slots = build_slots(space, monomials, alpha);
  const Heat heat = heat_tables(space, ts);
  std::vector<Complex> acc(ts.size());
  if (slots.size() == 1) {
    close_with(nullptr, slots[0], heat, acc);
    return acc;
  }
  // the first commutator slot is the widest branching point
  const Prefix root = start(slots[0][0]);
  const int branches = static_cast<int>(slots[1].size());
  std::vector<std::vector<Complex>> partial(branches, std::vector<Complex>(ts.size()));
#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < branches; ++b) {
    if (slots.size() == 2) {
      close_with(&root, Slot{slots[1][b]}, heat, partial[b]);
    } else {
      descend(extend(root, slots[1][b]), slots, 2, heat, partial[b]);
    }
  }
  for (const auto& p : partial)
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += p[i];
  return acc;
}

Complex factorized_supertrace(const FockSpace& space, const std::vector<Monomial>& monomials, double t) {
  require_positive(t);
  if (monomials.empty() || monomials.size() % 2 == 0) throw ValidationError("oracle: need an odd number 2k+1 of monomials");
  const int n = space.modes();
  const int k = static_cast<int>(monomials.size() / 2);
  Monomial total = monomials[0];
  CMatrix prefix_g = monomials[0].g;
  SpinorOperator spin = SpinorOperator::identity(n);
  for (std::size_t i = 1; i < monomials.size(); ++i) {
    spin = spin * c_vector(prefix_g * monomials[i].z);
    prefix_g = prefix_g * monomials[i].g;
    total = compose(total, monomials[i]);
  }
  const RVector angles = diagonal_angles(total.g);
  spin = spin * g_star_inv_diagonal(angles);
  Complex boson = 1.0;
  for (int j = 0; j < n; ++j) {
    const CMatrix b = space.mode_T(total.z(j)) * space.mode_R(angles(j)).asDiagonal();
    Complex s{};
    for (Eigen::Index m = 0; m < b.rows(); ++m) s += b(m, m) * std::exp(-t * (static_cast<double>(m) + 0.5));
    boson *= s;
  }
  Complex fermion{};
  for (Eigen::Index mask = 0; mask < spin.dim(); ++mask)
    fermion += (popcount(mask) % 2 ? -1.0 : 1.0) * std::exp(-t * (popcount(mask) - 0.5 * n)) * spin.matrix()(mask, mask);
  return std::pow(2.0, -k) * total.coeff * boson * fermion;
}

// ---- oracle drivers

OracleOptions default_oracle_options(int modes) {
  OracleOptions o;
  if (modes == 1) {
    o.cutoff = 256;
    o.t_grid = geometric_grid(0.1, 0.6, 12);
  } else {
    o.cutoff = kMaxCutoffTwoModes;
    o.t_grid = geometric_grid(0.6, 2.5, 14);
  }
  o.powers = power_range(-modes, 6);
  return o;
}

Complex oracle_sample_at(const FockSpace& space, const std::vector<Monomial>& monomials, double t) {
  return cm_supertrace_samples(space, monomials, {t}).front();
}

namespace {

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

OracleResult psi_oracle(int k, const std::vector<Monomial>& monomials, OracleOptions options) {
  if (k < 0) throw ValidationError("psi_oracle: k must be nonnegative");
  require_dims(monomials.size() == static_cast<std::size_t>(2 * k + 1), "psi_oracle: need 2k+1 monomials");
  const int n = monomials[0].modes();
  if (k > n) throw ValidationError("psi_oracle: k exceeds the mode count");
  const OracleOptions defaults = default_oracle_options(n);
  if (options.cutoff == 0) options.cutoff = defaults.cutoff;
  if (options.t_grid.empty()) options.t_grid = defaults.t_grid;
  if (options.powers.empty()) options.powers = defaults.powers;

  auto run = [&](int cutoff, OracleResult& r) {
    const FockSpace space(n, cutoff);
    r.samples = cm_supertrace_samples(space, monomials, options.t_grid);
    r.fit = fit_asymptotics(options.t_grid, r.samples, options.powers);
    r.value = r.fit.coefficient(-k) / factorial(2 * k);
  };
  OracleResult out;
  out.cutoff = options.cutoff;
  out.t_grid = options.t_grid;
  run(options.cutoff, out);
  {
    // The fit sees a power series in t. Without a fixed point the trace is
    // O(e^{-c/t}); a rotation by phi puts singularities at t = +-i phi.
    Monomial product = monomials.front();
    for (std::size_t i = 1; i < monomials.size(); ++i) product = compose(product, monomials[i]);
    if (!affine_has_fixed_point(product.z, product.g))
      out.warnings.push_back("tuple product has no fixed point: the true value is zero and the fit cannot resolve e^{-c/t}");
    const RVector angles = diagonal_angles(product.g);
    double radius = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < angles.size(); ++j) {
      const double a = std::remainder(angles(j), 2 * kPi);
      if (std::abs(a) > 1e-9) radius = std::min(radius, std::abs(a));
    }
    const double t_max = *std::max_element(options.t_grid.begin(), options.t_grid.end());
    if (t_max > 0.8 * radius)
      out.warnings.push_back("t grid reaches " + std::to_string(t_max) + ", beyond 0.8 of the rotation radius " +
                             std::to_string(radius));
    if (!out.fit.warning.empty()) out.warnings.push_back(out.fit.warning);
  }
  {
    const FockSpace space(n, options.cutoff);
    const Eigen::Index half = space.mode_dim() / 2;
    for (const auto& m : monomials)
      for (int j = 0; j < n; ++j) {
        const CMatrix t = space.mode_T(m.z(j));
        const CMatrix defect = (t * t.adjoint()).topLeftCorner(half, half) - CMatrix::Identity(half, half);
        out.unitarity_defect = std::max(out.unitarity_defect, defect.cwiseAbs().maxCoeff());
      }
  }
  if (options.sentinel) {
    // Convergence in the cutoff is faster than geometric, so the change against a
    // smaller cutoff overstates the error at N; two probes give the contraction
    // ratio and an extrapolated tail.
    const int step = std::max(2, options.cutoff / 8);
    OracleResult near, far;
    run(options.cutoff - step, near);
    run(options.cutoff - 2 * step, far);
    const double scale = std::max({std::abs(out.value), std::abs(near.value), 1e-2});
    const double d1 = std::abs(out.value - near.value) / scale, d2 = std::abs(near.value - far.value) / scale;
    const double ratio = d2 > 0.0 ? d1 / d2 : 1.0;
    const double estimate = ratio < 1.0 ? d1 * ratio / (1.0 - ratio) : d1;
    out.truncation_estimate = estimate;
    if (estimate > options.sentinel_tolerance)
      throw SizingError("psi_oracle: cutoff " + std::to_string(options.cutoff) + " too small, estimated truncation error " +
                        std::to_string(estimate));
  }
  return out;
}

GetzlerReport getzler_vanishing_check(int k, const std::vector<int>& alpha, const std::vector<Monomial>& monomials,
                                      int cutoff, std::vector<double> t_grid) {
  require_dims(monomials.size() == static_cast<std::size_t>(2 * k + 1), "getzler_vanishing_check: need 2k+1 monomials");
  const int n = monomials[0].modes();
  if (cutoff == 0) cutoff = n == 1 ? 384 : kMaxCutoffTwoModes;
  if (t_grid.empty()) t_grid = n == 1 ? geometric_grid(0.06, 0.2, 8) : geometric_grid(0.6, 1.5, 8);
  int order = 0;
  for (int a : alpha) order += a;
  const FockSpace space(n, cutoff);
  GetzlerReport rep;
  rep.t_grid = t_grid;
  rep.bound = 0.5 * order;
  const auto samples = cm_supertrace_samples(space, monomials, t_grid, alpha);
  double scale = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    rep.values.push_back(std::pow(t_grid[i], k + order) * samples[i]);
    scale = std::max(scale, std::abs(rep.values.back()));
  }
  if (scale < 1e-13) {
    rep.identically_zero = true;
    rep.fitted_exponent = std::numeric_limits<double>::infinity();
    return rep;
  }
  // slope of log|v| against log t
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = std::log(t_grid[i]), y = std::log(std::abs(rep.values[i]));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  rep.fitted_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return rep;
}

ResidueResult residue_from_heat(const FockOperator& b, double m, std::vector<double> t_grid) {
  if (m < 0.0) throw DomainError("residue_from_heat: m must be nonnegative");
  const FockSpace space(b.modes(), b.cutoff());
  const RVector e = b.spinor() ? space.full_energies() : space.boson_energies();
  const CVector diag = b.matrix().diagonal();
  if (t_grid.empty()) t_grid = geometric_grid(0.05, 0.5, 14);

  ResidueResult out;
  out.convention = "kernel of D^2 projected out before inverse powers";
  CVector kept = diag;
  for (Eigen::Index i = 0; i < e.size(); ++i)
    if (std::abs(e(i)) < 1e-12) kept(i) = 0.0, out.kernel_projected = true;

  std::vector<Complex> samples(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    Complex s{};
    for (Eigen::Index r = 0; r < e.size(); ++r) s += kept(r) * std::exp(-t_grid[i] * e(r));
    samples[i] = s;
  }
  std::vector<double> powers = power_range(-space.modes(), 6);
  if (std::find_if(powers.begin(), powers.end(), [&](double p) { return std::abs(p + m) < 1e-12; }) == powers.end())
    powers.insert(powers.begin(), -m);
  out.fit = fit_asymptotics(t_grid, samples, powers);
  out.residue = m == 0.0 ? out.fit.coefficient(0.0) : out.fit.coefficient(-m) / std::tgamma(m);

  // direct eigenvalue sum, one mode, diagonal B, tail continued with the last
  // diagonal entry through a Hurwitz zeta
  const CMatrix off = b.matrix() - CMatrix(diag.asDiagonal());
  if (space.modes() == 1 && !b.spinor() && m >= 1.0 && off.cwiseAbs().maxCoeff() < 1e-12) {
    const Complex top = diag(diag.size() - 1);
    auto sum_at = [&](double s) {
      Complex acc{};
      for (Eigen::Index r = 0; r < e.size(); ++r)
        if (e(r) > 1e-12) acc += kept(r) * std::pow(e(r), -s);
      return acc + top * gsl_sf_hzeta(s, static_cast<double>(space.cutoff()) + 1.5);
    };
    const double h = 1e-3;
    const Complex r1 = h * sum_at(m + h), r2 = 2 * h * sum_at(m + 2 * h);
    out.eigen_sum_estimate = 2.0 * r1 - r2;
  }
  return out;
}

}  // namespace mpindex
