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

#include <optional>
#include <string>
#include <vector>

#include "mpindex/asymptotics.hpp"
#include "mpindex/group.hpp"
#include "mpindex/types.hpp"

namespace mpindex {

// Supported sizes. Dense spinor x Fock matrices beyond kMaxDenseDim are
// refused; the oracle itself works mode-by-mode and only needs the cutoffs.
inline constexpr int kMaxCutoffOneMode = 512;
inline constexpr int kMaxCutoffTwoModes = 48;
inline constexpr Eigen::Index kMaxDenseDim = 4096;

/// Truncated oscillator basis |m_1..m_n>, m_j <= cutoff. Mode 0 is the slowest
/// index of the Kronecker ordering; spinor index (bitmask) is slower still.
class FockSpace {
 public:
  FockSpace(int modes, int cutoff);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  int padding() const { return padding_; }
  Eigen::Index mode_dim() const { return cutoff_ + 1; }
  Eigen::Index boson_dim() const;
  Eigen::Index spinor_dim() const { return Eigen::Index{1} << modes_; }
  Eigen::Index full_dim() const { return boson_dim() * spinor_dim(); }

  /// Lowering operator on one mode, sqrt(m) on the superdiagonal.
  CMatrix ladder(Eigen::Index dim = -1) const;
  CMatrix mode_x() const;
  CMatrix mode_p() const;
  /// exp(i(k x - a p)) for z = a - ik, computed on a padded basis and cropped.
  CMatrix mode_T(Complex z) const;
  /// diag e^{-i m phi}.
  CVector mode_R(double phi) const;

  /// Levels m_j of a bosonic basis index.
  std::vector<int> levels(Eigen::Index boson_index) const;
  RVector boson_energies() const;   // H
  RVector full_energies() const;    // H + F
  RVector full_grading() const;     // (-1)^{form degree}
  /// Bosonic indices with total level <= max_level.
  std::vector<Eigen::Index> low_block(int max_level) const;
  /// The same, on spinor x Fock.
  std::vector<Eigen::Index> low_block_full(int max_level) const;

 private:
  int modes_;
  int cutoff_;
  int padding_;
};

class FockOperator {
 public:
  FockOperator(const FockSpace& space, CMatrix matrix, bool spinor);

  const CMatrix& matrix() const { return matrix_; }
  bool spinor() const { return spinor_; }
  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }

  FockOperator adjoint() const;
  friend FockOperator operator*(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator+(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(Complex c, FockOperator a);

  /// Max entry of the difference restricted to the given index set.
  double block_distance(const FockOperator& other, const std::vector<Eigen::Index>& block) const;

 private:
  FockOperator(int modes, int cutoff, CMatrix matrix, bool spinor)
      : modes_(modes), cutoff_(cutoff), spinor_(spinor), matrix_(std::move(matrix)) {}
  void require_compatible(const FockOperator& other) const;

  int modes_;
  int cutoff_;
  bool spinor_;
  CMatrix matrix_;
};

FockOperator fock_T(const FockSpace& space, const CVector& z);
FockOperator fock_R_diag(const FockSpace& space, const RVector& angles);
FockOperator fock_H(const FockSpace& space);
/// Extend a bosonic operator by the identity on spinors.
FockOperator lift(const FockSpace& space, const FockOperator& boson);
/// R_g tensored with the action of g on forms (diagonal g only).
FockOperator fock_R_bold(const FockSpace& space, const RVector& angles);
FockOperator fock_D(const FockSpace& space);
FockOperator fock_D_squared(const FockSpace& space);
/// coeff T_z R_g on spinor x Fock; g must be diagonal.
FockOperator fock_monomial(const FockSpace& space, const Monomial& m);

/// Angles of a diagonal unitary; ValidationError otherwise.
RVector diagonal_angles(const CMatrix& g, double tol = 1e-12);

/// tr(B e^{-tH}) for bosonic B, tr(B e^{-tD^2}) for spinor B.
Complex heat_trace(const FockOperator& b, double t);
std::vector<Complex> heat_trace_samples(const FockOperator& b, const std::vector<double>& ts);
std::vector<Complex> heat_trace_samples_serial(const FockOperator& b, const std::vector<double>& ts);
/// tr_s(ops[0] ops[1] ... e^{-tD^2}).
Complex heat_supertrace(const std::vector<FockOperator>& ops, double t);

// closed forms for one mode
Complex mehler_trace(double t);                           // tr e^{-tH}
Complex mehler_trace(Complex z, double t);                // tr T_z e^{-tH}
Complex mehler_trace(Complex z, double phi, double t);    // tr T_z R_phi e^{-tH}

/// tr_s(a_0 [D,a_1] ... [D,a_2k] e^{-tD^2}) for monomials with diagonal g,
/// evaluated mode by mode on the truncated space. alpha[i] > 0 replaces
/// [D,a_i] by its alpha[i]-fold commutator with D^2.
std::vector<Complex> cm_supertrace_samples(const FockSpace& space, const std::vector<Monomial>& monomials,
                                           const std::vector<double>& ts, const std::vector<int>& alpha = {});
std::vector<Complex> cm_supertrace_samples_serial(const FockSpace& space, const std::vector<Monomial>& monomials,
                                                  const std::vector<double>& ts, const std::vector<int>& alpha = {});

/// Same quantity assembled from the bosonic Fock trace of the composed monomial
/// and the exact spinor supertrace of c(w_1)...c(w_2k) G.
Complex factorized_supertrace(const FockSpace& space, const std::vector<Monomial>& monomials, double t);

struct OracleOptions {
  int cutoff = 0;                 // 0: default for the mode count
  std::vector<double> t_grid;     // empty: default
  std::vector<double> powers;     // empty: -n..6
  bool sentinel = true;           // rerun at N - N/8 and N - N/4, extrapolate the truncation error
  double sentinel_tolerance = 1e-3;
};

struct OracleResult {
  Complex value;
  int cutoff = 0;
  std::vector<double> t_grid;
  std::vector<Complex> samples;
  FitResult fit;
  std::optional<double> truncation_estimate;  // relative, from the sentinel reruns
  double unitarity_defect = 0.0;          // max |T T^* - 1| over the lower half of each mode
  std::vector<std::string> warnings;      // inputs where the power-law fit is known to be unreliable
};

OracleOptions default_oracle_options(int modes);

Complex oracle_sample_at(const FockSpace& space, const std::vector<Monomial>& monomials, double t);

/// Psi_2k from the t^{-k} heat coefficient divided by (2k)!.
OracleResult psi_oracle(int k, const std::vector<Monomial>& monomials, OracleOptions options = {});

struct GetzlerReport {
  std::vector<double> t_grid;
  std::vector<Complex> values;    // t^{k+|alpha|} tr_s(...)
  double fitted_exponent = 0.0;   // slope of log|value| against log t
  double bound = 0.0;             // |alpha| / 2
  bool identically_zero = false;
};

GetzlerReport getzler_vanishing_check(int k, const std::vector<int>& alpha, const std::vector<Monomial>& monomials,
                                      int cutoff = 0, std::vector<double> t_grid = {});

struct ResidueResult {
  Complex residue;
  FitResult fit;
  std::optional<Complex> eigen_sum_estimate;
  bool kernel_projected = false;
  std::string convention;
};

/// Res_{z=0} tr(B |D|^{-2(m+z)}) = a_{-m} / Gamma(m), a_0 for m = 0.
ResidueResult residue_from_heat(const FockOperator& b, double m, std::vector<double> t_grid = {});

}  // namespace mpindex
