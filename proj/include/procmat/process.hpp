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

// Process matrices, the trace probability rule, and validity checking.
//
// Factor order of a process matrix: for each party in declaration order, its
// input space followed by its output space.

#pragma once

#include <string>
#include <vector>

#include "procmat/channels.hpp"
#include "procmat/linalg.hpp"

namespace procmat {

class PartySpec {
 public:
  explicit PartySpec(std::vector<DimensionPair> parties);

  static PartySpec single(int d_in, int d_out) { return PartySpec({DimensionPair(d_in, d_out)}); }

  const std::vector<DimensionPair>& parties() const { return parties_; }
  std::size_t size() const { return parties_.size(); }
  int total_dim() const;
  /// Product of the output dimensions: the trace of a valid process matrix.
  int output_product() const;
  /// [d_in(0), d_out(0), d_in(1), d_out(1), ...]
  std::vector<int> factor_dims() const;

  friend bool operator==(const PartySpec&, const PartySpec&) = default;

 private:
  std::vector<DimensionPair> parties_;
};

/// Hermiticity is not enforced at construction; see validate().
class ProcessMatrix {
 public:
  ProcessMatrix(PartySpec spec, Matrix matrix);

  const PartySpec& spec() const { return spec_; }
  const Matrix& matrix() const { return matrix_; }
  bool is_single_party() const { return spec_.size() == 1; }

 private:
  PartySpec spec_;
  Matrix matrix_;
};

/// Tr[W (M_1 (x) M_2 (x) ...)] without discarding the imaginary part.
Complex trace_rule(const ProcessMatrix& w, const std::vector<CJOperator>& branch_cjs);

/// Real part of trace_rule(). Throws NotHermitianError if |Im| > 1e-10.
double probability(const ProcessMatrix& w, const std::vector<CJOperator>& branch_cjs);

/// Clamp to [0, 1] for human-readable output only.
double display_probability(double p);

struct LabeledOperator {
  std::string label;
  Matrix op;
};

/// Reference CPTP CJ plus the Tr_out-traceless Hermitian directions for one party.
struct PartyConstraintBasis {
  LabeledOperator reference;
  std::vector<LabeledOperator> directions;
};

/// Reference map is the identity channel when d_in == d_out, otherwise
/// "trace and prepare |0>". Directions are (G_in (x) G_out)/2 over a Hermitian
/// basis G_in of L(H_in) and traceless Hermitian G_out.
PartyConstraintBasis party_constraint_basis(DimensionPair dims);

struct NormalizationConstraint {
  std::string label;
  Matrix op;
  double expected = 0.0;
};

/// Every product of per-party choices (reference or one direction): expected 1
/// when all parties take the reference, 0 otherwise. Linearity of the trace rule
/// makes this finite set equivalent to normalization over all CPTP choices.
std::vector<NormalizationConstraint> normalization_constraints(const PartySpec& spec);

struct ConstraintResidual {
  std::string label;
  double value = 0.0;
  double expected = 0.0;
  double residual = 0.0;
};

struct ValidityReport {
  bool hermitian = false;
  bool psd_ok = false;
  double min_eigenvalue = 0.0;
  bool normalization_ok = false;
  double worst_residual = 0.0;
  std::size_t constraints_checked = 0;
  bool trace_ok = false;
  double trace = 0.0;
  double expected_trace = 0.0;
  std::vector<ConstraintResidual> violated_constraints;

  bool ok() const { return hermitian && psd_ok && normalization_ok && trace_ok; }
};

ValidityReport validate(const ProcessMatrix& w, double tol = kDefaultTol);

/// sum_{j,k} Tr[W M_{E_jk}] with E_jk = |j><k| / sqrt(d_out). Equals Tr(W)/d_out
/// for any W; equals 1 exactly when Tr(W) = d_out. Single-party only.
double trace_dimension_identity(const ProcessMatrix& w);

}  // namespace procmat
