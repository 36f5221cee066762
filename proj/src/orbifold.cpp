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

#include "mpindex/orbifold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace mpindex {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long positive_mod(long a, long m) { return ((a % m) + m) % m; }

LatticePoint act(const IntMatrix2& m, const LatticePoint& p) {
  return {m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1]};
}

IntMatrix2 multiply(const IntMatrix2& a, const IntMatrix2& b) {
  IntMatrix2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return out;
}

long det(const LatticePoint& u, const LatticePoint& v) { return u[0] * v[1] - u[1] * v[0]; }

// extended gcd: returns g >= 0 with g = x a + y b
long ext_gcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  long x1, y1;
  const long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// norm ascending, then n1 descending, then n2 descending
bool canonical_less(const OrbifoldSpec& spec, const LatticePoint& a, const LatticePoint& b) {
  const long na = spec.norm_form(a), nb = spec.norm_form(b);
  if (na != nb) return na < nb;
  if (a[0] != b[0]) return a[0] > b[0];
  return a[1] > b[1];
}

std::vector<LatticePoint> box(int radius) {
  std::vector<LatticePoint> pts;
  for (long n1 = -radius; n1 <= radius; ++n1)
    for (long n2 = -radius; n2 <= radius; ++n2) pts.push_back({n1, n2});
  return pts;
}

bool class_order(const OrbifoldSpec& spec, const ClassDescriptor& a, const ClassDescriptor& b) {
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return canonical_less(spec, a.representative, b.representative);
}

std::vector<ClassDescriptor> deduplicate(const OrbifoldSpec& spec, std::vector<ClassDescriptor> all) {
  std::vector<ClassDescriptor> out;
  for (auto& c : all) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const ClassDescriptor& o) {
      return o.alpha == c.alpha && o.offsets == c.offsets && o.orbit == c.orbit;
    });
    if (!seen) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return class_order(spec, a, b); });
  return out;
}

}  // namespace

void OrbifoldSpec::validate() const {
  if (order != 4 && order != 6) throw ValidationError("orbifold: order must be 4 or 6");
  if (!(k > 0) || !std::isfinite(k)) throw ValidationError("orbifold: k must be a positive real");
}

Complex OrbifoldSpec::rotation() const { return std::polar(1.0, 2 * kPi / order); }

IntMatrix2 OrbifoldSpec::rotation_matrix(int power) const {
  // eps * (n1 + n2 eps): eps^2 = -1 (order 4) or eps^2 = eps - 1 (order 6)
  const IntMatrix2 gen = order == 4 ? IntMatrix2{{{0, -1}, {1, 0}}} : IntMatrix2{{{0, -1}, {1, 1}}};
  IntMatrix2 out{{{1, 0}, {0, 1}}};
  for (int p = 0; p < static_cast<int>(positive_mod(power, order)); ++p) out = multiply(gen, out);
  return out;
}

Complex OrbifoldSpec::to_complex(const LatticePoint& p) const {
  return k * (static_cast<double>(p[0]) + static_cast<double>(p[1]) * rotation());
}

long OrbifoldSpec::norm_form(const LatticePoint& p) const {
  return order == 4 ? p[0] * p[0] + p[1] * p[1] : p[0] * p[0] + p[0] * p[1] + p[1] * p[1];
}

double OrbifoldSpec::theta() const { return order == 4 ? -k * k : -std::sqrt(3.0) / 2.0 * k * k; }

LatticePoint OrbifoldSpec::from_complex(Complex z, double tol) const {
  const Complex u = z / k, e = rotation();
  const double n2 = u.imag() / e.imag();
  const double n1 = u.real() - n2 * e.real();
  const LatticePoint p{std::lround(n1), std::lround(n2)};
  if (std::abs(to_complex(p) - z) > tol * (1.0 + std::abs(z)))
    throw ValidationError("orbifold: support point is not on the lattice");
  return p;
}

int OrbifoldSpec::alpha_of(Complex g, double tol) const {
  double a = std::arg(g) / (2 * kPi / order);
  const int alpha = static_cast<int>(positive_mod(std::lround(a), order));
  if (std::abs(g - std::polar(1.0, 2 * kPi * alpha / order)) > tol)
    throw ValidationError("orbifold: rotation part is not a power of the generator");
  return alpha;
}

ExactMonomial exact_compose(const OrbifoldSpec& spec, const ExactMonomial& a, const ExactMonomial& b) {
  const LatticePoint w = act(spec.rotation_matrix(a.alpha), b.coords);
  // -Im(z1 conj(w))/2 = -det(z1, w) theta / 2 on both lattices
  return {a.half_theta + b.half_theta - det(a.coords, w),
          {a.coords[0] + w[0], a.coords[1] + w[1]},
          static_cast<int>(positive_mod(a.alpha + b.alpha, spec.order))};
}

ExactMonomial exact_inverse(const OrbifoldSpec& spec, const ExactMonomial& a) {
  const LatticePoint w = act(spec.rotation_matrix(-a.alpha), a.coords);
  return {-a.half_theta, {-w[0], -w[1]}, static_cast<int>(positive_mod(-a.alpha, spec.order))};
}

Monomial to_monomial(const OrbifoldSpec& spec, const ExactMonomial& a) {
  CVector z(1);
  z << spec.to_complex(a.coords);
  CMatrix g(1, 1);
  g << std::polar(1.0, 2 * kPi * a.alpha / spec.order);
  return {std::polar(1.0, 0.5 * static_cast<double>(a.half_theta) * spec.theta()), z, g};
}

ExactMonomial orbifold_U() { return {0, {1, 0}, 0}; }
ExactMonomial orbifold_V() { return {0, {0, 1}, 0}; }
ExactMonomial orbifold_R() { return {0, {0, 0}, 1}; }

LatticePoint Sublattice::reduce(const LatticePoint& p) const {
  if (trivial) return p;
  const long t = floor_div(p[1], d);
  const long x = p[0] - t * b;
  return {positive_mod(x, a), p[1] - t * d};
}

Sublattice hermite_sublattice(const IntMatrix2& m) {
  const LatticePoint c1{m[0][0], m[1][0]}, c2{m[0][1], m[1][1]};
  const long determinant = det(c1, c2);
  if (determinant == 0) return {};
  long x, y;
  const long g = ext_gcd(c1[1], c2[1], x, y);
  // u has second entry g; v has second entry 0 and first entry determinant / g up to sign
  const LatticePoint u{x * c1[0] + y * c2[0], g};
  const long v1 = (c2[1] / g) * c1[0] - (c1[1] / g) * c2[0];
  Sublattice s;
  s.trivial = false;
  s.a = std::abs(v1);
  s.d = g;
  s.b = positive_mod(u[0], s.a);
  return s;
}

bool ClassDescriptor::contains(const LatticePoint& z, int a) const {
  if (a != alpha) return false;
  if (alpha == 0) return std::find(orbit.begin(), orbit.end(), z) != orbit.end();
  return std::binary_search(offsets.begin(), offsets.end(), sublattice.reduce(z));
}

ClassDescriptor orbifold_class(const OrbifoldSpec& spec, const LatticePoint& z, int alpha) {
  spec.validate();
  ClassDescriptor c;
  c.order = spec.order;
  c.alpha = static_cast<int>(positive_mod(alpha, spec.order));
  if (c.alpha == 0) {
    std::set<LatticePoint> orbit;
    for (int beta = 0; beta < spec.order; ++beta) orbit.insert(act(spec.rotation_matrix(beta), z));
    c.orbit.assign(orbit.begin(), orbit.end());
    c.representative = *std::min_element(c.orbit.begin(), c.orbit.end(),
                                         [&](const auto& p, const auto& q) { return canonical_less(spec, p, q); });
    return c;
  }
  IntMatrix2 shift = spec.rotation_matrix(c.alpha);
  shift[0][0] = 1 - shift[0][0];
  shift[0][1] = -shift[0][1];
  shift[1][0] = -shift[1][0];
  shift[1][1] = 1 - shift[1][1];
  c.sublattice = hermite_sublattice(shift);
  std::set<LatticePoint> cosets;
  for (int beta = 0; beta < spec.order; ++beta)
    cosets.insert(c.sublattice.reduce(act(spec.rotation_matrix(beta), z)));
  c.offsets.assign(cosets.begin(), cosets.end());
  c.complement = c.offsets.size() >= 2 && static_cast<long>(c.offsets.size()) == c.sublattice.index() - 1 &&
                 !cosets.contains(LatticePoint{0, 0});
  bool found = false;
  for (const auto& p : box(static_cast<int>(c.sublattice.a + c.sublattice.d))) {
    if (!c.contains(p, c.alpha)) continue;
    if (!found || canonical_less(spec, p, c.representative)) c.representative = p;
    found = true;
  }
  return c;
}

std::vector<ClassDescriptor> enumerate_classes_serial(const OrbifoldSpec& spec, int radius) {
  spec.validate();
  std::vector<ClassDescriptor> all;
  for (int alpha = 0; alpha < spec.order; ++alpha)
    for (const auto& z : box(radius)) {
      // (z, 1) with z != 0 is a pure translation: no affine fixed point
      if (alpha == 0 && (z[0] != 0 || z[1] != 0)) continue;
      all.push_back(orbifold_class(spec, z, alpha));
    }
  return deduplicate(spec, std::move(all));
}

std::vector<ClassDescriptor> enumerate_classes(const OrbifoldSpec& spec, int radius) {
  spec.validate();
  const auto pts = box(radius);
  const long count = static_cast<long>(pts.size()) * spec.order;
  std::vector<ClassDescriptor> all(static_cast<std::size_t>(count));
  std::vector<char> keep(static_cast<std::size_t>(count), 0);
#pragma omp parallel for schedule(static)
  for (long idx = 0; idx < count; ++idx) {
    const int alpha = static_cast<int>(idx / static_cast<long>(pts.size()));
    const auto& z = pts[static_cast<std::size_t>(idx % static_cast<long>(pts.size()))];
    if (alpha == 0 && (z[0] != 0 || z[1] != 0)) continue;
    all[idx] = orbifold_class(spec, z, alpha);
    keep[idx] = 1;
  }
  std::vector<ClassDescriptor> kept;
  for (long idx = 0; idx < count; ++idx)
    if (keep[idx]) kept.push_back(std::move(all[idx]));
  return deduplicate(spec, std::move(kept));
}

Complex orbifold_trace(const OrbifoldSpec& spec, const ClassDescriptor& cls, const AlgebraElement& f) {
  spec.validate();
  require_dims(f.modes() == 1, "orbifold_trace: elements must have one mode");
  Complex sum{};
  for (const auto& m : f.terms()) {
    const LatticePoint p = spec.from_complex(m.z(0));
    const int alpha = spec.alpha_of(m.g(0, 0));
    if (!cls.contains(p, alpha)) continue;
    if (alpha == 0) {
      sum += m.coeff;
      continue;
    }
    const double r2 = spec.k * spec.k * static_cast<double>(spec.norm_form(p));
    sum += m.coeff * std::polar(1.0, 0.25 * r2 / std::tan(kPi * alpha / spec.order));
  }
  return sum;
}

std::vector<Complex> orbifold_traces(const OrbifoldSpec& spec, const AlgebraElement& f) {
  std::vector<Complex> out;
  for (const auto& c : enumerate_classes(spec)) out.push_back(orbifold_trace(spec, c, f));
  return out;
}

}  // namespace mpindex
