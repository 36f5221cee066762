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

#include "mpindex/io.hpp"

#include <cstdio>
#include <cstdlib>

namespace mpindex {

namespace {

const json& require(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string(what) + ": missing \"" + key + "\"");
  return j.at(key);
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

json rounded(const json& j) {
  if (j.is_number_float()) return round12(j.get<double>());
  if (j.is_array()) {
    json out = json::array();
    for (const auto& e : j) out.push_back(rounded(e));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) out[k] = rounded(v);
    return out;
  }
  return j;
}

}  // namespace

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(CVector(m.row(i).transpose())));
  return out;
}

json to_json(const Monomial& m) { return {{"coeff", to_json(m.coeff)}, {"z", to_json(m.z)}, {"g", to_json(m.g)}}; }

json to_json(const AlgebraElement& a) {
  json out = json::array();
  for (const auto& m : a.terms()) out.push_back(to_json(m));
  return out;
}

json to_json(const LatticePoint& p) { return json::array({p[0], p[1]}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ValidationError("expected a complex number [re, im], got " + j.dump());
}

CVector vector_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of complex numbers");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  CMatrix m(rows, static_cast<Eigen::Index>(j[0].size()));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const CVector row = vector_from_json(j[r]);
    require_dims(row.size() == m.cols(), "matrix rows differ in length");
    m.row(r) = row.transpose();
  }
  return m;
}

Monomial monomial_from_json(const json& j) {
  Monomial m;
  m.z = vector_from_json(require(j, "z", "monomial"));
  const auto n = m.z.size();
  if (n == 0) throw ValidationError("monomial: z must have at least one entry");
  m.coeff = j.contains("coeff") ? complex_from_json(j["coeff"]) : Complex{1.0};
  if (j.contains("g") && j.contains("angles")) throw ValidationError("monomial: give either g or angles");
  if (j.contains("g")) {
    m.g = matrix_from_json(j["g"]);
  } else if (j.contains("angles")) {
    const auto& a = j["angles"];
    if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != n) throw DimensionError("monomial: angles need one entry per mode");
    m.g = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m.g(i, i) = std::polar(1.0, a[i].get<double>());
  } else {
    m.g = CMatrix::Identity(n, n);
  }
  require_dims(m.g.rows() == n && m.g.cols() == n, "monomial: g must be n x n");
  m.validate();
  return m;
}

AlgebraElement algebra_from_json(const json& j) {
  const json* terms = &j;
  if (j.is_object() && j.contains("terms")) terms = &j["terms"];
  else if (j.is_object()) return AlgebraElement(monomial_from_json(j));
  if (!terms->is_array() || terms->empty()) throw ValidationError("algebra element: expected a nonempty list of monomials");
  AlgebraElement a(monomial_from_json((*terms)[0]).modes());
  for (const auto& t : *terms) {
    const Monomial m = monomial_from_json(t);
    require_dims(m.modes() == a.modes(), "algebra element: terms differ in mode count");
    a.add(m);
  }
  return a;
}

std::vector<AlgebraElement> algebra_list_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("expected a list of algebra elements");
  std::vector<AlgebraElement> out;
  for (const auto& e : j) out.push_back(algebra_from_json(e));
  for (const auto& a : out) require_dims(a.modes() == out.front().modes(), "arguments differ in mode count");
  return out;
}

AlgebraElement orbifold_element_from_json(const OrbifoldSpec& spec, const json& j) {
  const json& terms = j.is_object() && j.contains("terms") ? j["terms"] : (j.is_array() ? j : json::array({j}));
  if (terms.empty()) throw ValidationError("orbifold element: no terms");
  AlgebraElement a(1);
  for (const auto& t : terms) {
    if (t.is_object() && t.contains("coords")) {
      const auto& c = t["coords"];
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
        throw ValidationError("orbifold element: coords must be two integers");
      const int alpha = t.value("alpha", 0);
      if (alpha < 0 || alpha >= spec.order) throw ValidationError("orbifold element: alpha out of range");
      Monomial m = to_monomial(spec, ExactMonomial{0, {c[0].get<long>(), c[1].get<long>()}, alpha});
      if (t.contains("coeff")) m.coeff = complex_from_json(t["coeff"]);
      a.add(m);
    } else {
      const Monomial m = monomial_from_json(t);
      require_dims(m.modes() == 1, "orbifold element: one mode expected");
      a.add(m);
    }
  }
  return a;
}

std::string dump_deterministic(const json& j, int indent) { return rounded(j).dump(indent); }

}  // namespace mpindex
