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

// Completely positive maps as Kraus families, instruments, and their
// Choi-Jamiolkowski (CJ) operators.
//
// The CJ operator of a CP map E : L(H_in) -> L(H_out) is
//
//     M_E = sum_{i,j} |i><j| (x) E(|j><i|)      in L(H_in (x) H_out).
//
// This is the partial transpose on the input factor of the usual Choi matrix,
// so M_E is Hermitian but not always positive (the identity channel maps to
// SWAP). It satisfies Tr_out(M_E) = sum_k E_k^dagger E_k and, for a
// measure-and-prepare map |eta><psi|, M_E = |psi><psi| (x) |eta><eta|.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "procmat/linalg.hpp"

namespace procmat {

/// A CP map rho -> sum_k E_k rho E_k^dagger; each E_k is d_out x d_in.
class KrausFamily {
 public:
  KrausFamily(DimensionPair dims, std::vector<Matrix> operators);

  static KrausFamily identity(int d);
  static KrausFamily unitary(const Matrix& u);
  /// Single Kraus operator |eta><psi|: project onto psi, prepare eta.
  static KrausFamily measure_prepare(const Vector& psi, const Vector& eta);

  const DimensionPair& dims() const { return dims_; }
  const std::vector<Matrix>& operators() const { return operators_; }

  Matrix apply(const Matrix& rho) const;
  /// sum_k E_k^dagger E_k.
  Matrix effect() const;

 private:
  DimensionPair dims_;
  std::vector<Matrix> operators_;
};

/// One CP branch per outcome; the branches sum to a CPTP map.
class Instrument {
 public:
  Instrument(std::vector<KrausFamily> branches, double tol = kDefaultTol);

  const DimensionPair& dims() const { return dims_; }
  const std::vector<KrausFamily>& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }

  /// All Kraus operators of all branches, as one CPTP map.
  KrausFamily total() const;

 private:
  DimensionPair dims_;
  std::vector<KrausFamily> branches_;
};

struct CJOperator {
  DimensionPair dims;
  Matrix matrix;

  CJOperator(DimensionPair d, Matrix m);
};

/// sum_j |j>|j>, not normalized.
Vector max_entangled(int d);

CJOperator cj_of_kraus(const KrausFamily& f);

/// [(I (x) E)|ME><ME|]^T with a full transpose. Equals cj_of_kraus(f) with the
/// output factor transposed. The two coincide only when E maps every |i><j| to
/// a symmetric matrix, e.g. measure-and-prepare with a real prepared state.
Matrix cj_transpose_form(const KrausFamily& f);

/// max-norm of sum_k E_k^dagger E_k - I.
double cptp_residual(const KrausFamily& f);
bool is_cptp(const KrausFamily& f, double tol = kDefaultTol);

/// Measure sigma_basis; on outcome s prepare prepared[s].
Instrument measure_prepare_instrument(Pauli basis, const std::array<Vector, 2>& prepared,
                                      double tol = kDefaultTol);

KrausFamily random_cp_map(DimensionPair dims, int n_kraus, std::uint64_t seed);
/// Gaussian Kraus operators right-multiplied by (sum_k E_k^dagger E_k)^{-1/2}.
/// Requires n_kraus * d_out >= d_in.
KrausFamily random_cptp(DimensionPair dims, int n_kraus, std::uint64_t seed);
/// Random CPTP map split into `outcomes` branches of `kraus_per_outcome` operators.
Instrument random_instrument(DimensionPair dims, int outcomes, int kraus_per_outcome,
                             std::uint64_t seed);

}  // namespace procmat
