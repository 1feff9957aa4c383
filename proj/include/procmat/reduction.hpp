// Copyright 2026 The procmat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Single-party reduction: a valid one-laboratory process matrix factors as
// W = W_1 (x) I with W_1 a density matrix.
//
// Two independent routes are provided. The constructive route decomposes W in
// the Pauli basis and evaluates normalization sums over measure-in-alpha /
// prepare-in-beta instruments; each sum isolates one Pauli coefficient that
// must vanish. The projection oracle works for any dimensions: it projects W
// onto the set of operators of the form X (x) I and checks the residual.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "procmat/channels.hpp"
#include "procmat/process.hpp"

namespace procmat {

/// Pauli string over the n input factors followed by the n output factors.
using PauliString = std::vector<Pauli>;

/// e.g. "x1|z1" for X (x) I on the inputs and Z (x) I on the outputs.
std::string pauli_label(const PauliString& word);

/// n such that d == 2^n, or -1.
int log2_exact(int d);

/// Qubits per side of a single-party W with d_in == d_out == 2^n.
int qubits_per_side(const ProcessMatrix& w);

/// Real coefficients w_word with W = sum_word w_word * sigma_word.
class PauliDecomposition {
 public:
  PauliDecomposition(int n, std::vector<double> coefficients);

  int qubits_per_side() const { return n_; }
  std::size_t size() const { return coefficients_.size(); }
  const std::vector<double>& coefficients() const { return coefficients_; }

  double coefficient(const PauliString& word) const;
  double operator[](std::size_t index) const { return coefficients_[index]; }

  /// Base-4 index, first factor most significant.
  static std::size_t index_of(const PauliString& word);
  static PauliString word_at(std::size_t index, int factors);

  Matrix reconstruct() const;

 private:
  int n_;
  std::vector<double> coefficients_;
};

/// Coefficients Tr[W sigma_word] / 4^n. Throws if d_in != d_out or not a power
/// of two, or if a coefficient has imaginary part above 1e-12 (non-Hermitian W).
PauliDecomposition pauli_decompose(const ProcessMatrix& w);

/// Tr[W sigma_word] for a single-party qubit W, via the signed-permutation form
/// of the Pauli string.
Complex pauli_expectation(const Matrix& w, const PauliString& word);

enum class PrepareRule {
  SameAsOutcome,  ///< m = s
  AlwaysZero,     ///< m = 0
};

struct ConstraintRecord {
  std::string description;
  double lhs = 0.0;
  double expected = 1.0;
  PauliString implied_word;  ///< empty when the constraint does not isolate one coefficient
  double implied_coefficient = 0.0;

  std::string implied_label() const { return implied_word.empty() ? std::string() : pauli_label(implied_word); }
  bool satisfied(double tol) const { return std::abs(lhs - expected) <= tol; }
};

/// sum_s Tr[W (P_alpha(s) (x) P_beta(m(s)))] for a single-qubit W. The sum is
/// 2 w_11 + 2 w_{alpha beta} for m = s and 2 w_11 + 2 w_{1 beta} for m = 0;
/// the isolated coefficient is reported as (lhs - 2 w_11)/2 with w_11 = Tr(W)/4.
ConstraintRecord constraint_sum_single(const ProcessMatrix& w, Pauli alpha, Pauli beta, PrepareRule rule);

/// Parity-subset sum for n qubits per side:
///
///   sum_s (1/|S_s|) sum_{m in S_s} Tr[W (P_alpha_1(s_1) .. P_alpha_n(s_n)) (x) (P_beta_1(m_1) ..)]
///
/// with S_s = {m : parity of m over eta_support = parity of s over xi_support}
/// (parity 0 when xi_support is empty). The sum equals 2^n (w_{1..1} + w_target)
/// where the target has alpha_i on xi_support inputs and beta_i on eta_support
/// outputs. Throws on an empty eta_support.
ConstraintRecord parity_subset_sum(const ProcessMatrix& w, const std::vector<Pauli>& alphas,
                                   const std::vector<Pauli>& betas, const std::vector<int>& xi_support,
                                   const std::vector<int>& eta_support);

struct ReductionReport {
  std::string method;
  bool certified = false;
  std::optional<Matrix> w1;  ///< set when certified
  double residual = 0.0;     ///< Frobenius norm of W - W_1 (x) I for the candidate W_1
  std::vector<ConstraintRecord> violations;
  std::size_t constraints_checked = 0;
  bool hermitian = false;
  bool psd_ok = false;
  bool trace_ok = false;
  double trace = 0.0;
  bool w1_psd = false;
  double w1_trace = 0.0;
  /// Max-norm gap between the partial-trace W_1 and the one reassembled from
  /// input-only Pauli coefficients (reduce_multiqubit only).
  double extraction_crosscheck = 0.0;
};

/// 9 basis pairs x 2 rules, plus Tr(W) = 2 and W >= 0; W_1 = I/2 + sum_a w_{a1} sigma_a.
ReductionReport reduce_single_qubit(const ProcessMatrix& w, double tol = kDefaultTol);

/// n <= 4 qubits per side. For n <= 3 one constraint per Pauli coefficient with
/// non-identity output content; for n = 4 one representative basis pair per
/// support pattern. W_1 = Tr_out(W) / 2^n.
ReductionReport reduce_multiqubit(const ProcessMatrix& w, double tol = kDefaultTol);

/// Any single-party dimensions: W_1 = Tr_out(W) / d_out, residual, positivity,
/// Tr(W_1) = 1 and the process-module normalization constraints.
ReductionReport projection_oracle(const ProcessMatrix& w, double tol = kDefaultTol);

/// (Tr[W M_f], Tr[f(W_1)]); equal when W = W_1 (x) I.
std::pair<double, double> born_equivalence(const Matrix& w1, const KrausFamily& f, const ProcessMatrix& w);

}  // namespace procmat
