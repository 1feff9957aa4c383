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

#include "procmat/channels.hpp"

#include <cmath>
#include <string>

#include "procmat/random.hpp"

namespace procmat {

KrausFamily::KrausFamily(DimensionPair dims, std::vector<Matrix> operators)
    : dims_(dims), operators_(std::move(operators)) {
  if (operators_.empty()) throw std::invalid_argument("KrausFamily: at least one operator required");
  for (const auto& e : operators_) {
    if (e.rows() != dims_.d_out || e.cols() != dims_.d_in)
      throw DimensionError("KrausFamily: operator is " + std::to_string(e.rows()) + "x" +
                           std::to_string(e.cols()) + ", expected " +
                           std::to_string(dims_.d_out) + "x" + std::to_string(dims_.d_in));
    if (!all_finite(e)) throw std::invalid_argument("KrausFamily: non-finite entry");
  }
}

KrausFamily KrausFamily::identity(int d) { return {DimensionPair(d, d), {Matrix::Identity(d, d)}}; }

KrausFamily KrausFamily::unitary(const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("KrausFamily::unitary: matrix must be square");
  const int d = static_cast<int>(u.rows());
  return {DimensionPair(d, d), {u}};
}

KrausFamily KrausFamily::measure_prepare(const Vector& psi, const Vector& eta) {
  const int din = static_cast<int>(psi.size());
  const int dout = static_cast<int>(eta.size());
  return {DimensionPair(din, dout), {eta * psi.adjoint()}};
}

Matrix KrausFamily::apply(const Matrix& rho) const {
  if (rho.rows() != dims_.d_in || rho.cols() != dims_.d_in)
    throw DimensionError("KrausFamily::apply: input has wrong dimension");
  Matrix out = Matrix::Zero(dims_.d_out, dims_.d_out);
  for (const auto& e : operators_) out += e * rho * e.adjoint();
  return out;
}

Matrix KrausFamily::effect() const {
  Matrix out = Matrix::Zero(dims_.d_in, dims_.d_in);
  for (const auto& e : operators_) out += e.adjoint() * e;
  return out;
}

Instrument::Instrument(std::vector<KrausFamily> branches, double tol) : branches_(std::move(branches)) {
  if (branches_.empty()) throw std::invalid_argument("Instrument: at least one branch required");
  dims_ = branches_.front().dims();
  for (const auto& b : branches_)
    if (!(b.dims() == dims_)) throw DimensionError("Instrument: branches disagree on dimensions");
  const double res = cptp_residual(total());
  if (!(res <= tol))
    throw std::invalid_argument("Instrument: branches do not sum to a trace-preserving map (residual " +
                                std::to_string(res) + ")");
}

KrausFamily Instrument::total() const {
  std::vector<Matrix> all;
  for (const auto& b : branches_) all.insert(all.end(), b.operators().begin(), b.operators().end());
  return {dims_, std::move(all)};
}

CJOperator::CJOperator(DimensionPair d, Matrix m) : dims(d), matrix(std::move(m)) {
  if (matrix.rows() != dims.total() || matrix.cols() != dims.total())
    throw DimensionError("CJOperator: matrix size does not match d_in*d_out");
}

Vector max_entangled(int d) {
  if (d < 1) throw DimensionError("max_entangled: dimension must be positive");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int j = 0; j < d; ++j) v(j * d + j) = 1.0;
  return v;
}

CJOperator cj_of_kraus(const KrausFamily& f) {
  const int din = f.dims().d_in;
  const int dout = f.dims().d_out;
  Matrix m = Matrix::Zero(din * dout, din * dout);
  // block (i, j) holds E(|j><i|)
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j) {
      Matrix unit = Matrix::Zero(din, din);
      unit(j, i) = 1.0;
      m.block(i * dout, j * dout, dout, dout) = f.apply(unit);
    }
  return {f.dims(), std::move(m)};
}

Matrix cj_transpose_form(const KrausFamily& f) {
  const int din = f.dims().d_in;
  const int dout = f.dims().d_out;
  const Vector me = max_entangled(din);
  // (I (x) E) acting on |ME><ME| = sum_{ij} |i><j| (x) |i><j|
  const Matrix phi = projector(me);
  Matrix out = Matrix::Zero(din * dout, din * dout);
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j)
      out.block(i * dout, j * dout, dout, dout) = f.apply(phi.block(i * din, j * din, din, din));
  return out.transpose();
}

double cptp_residual(const KrausFamily& f) {
  const int d = f.dims().d_in;
  return max_abs(f.effect() - Matrix::Identity(d, d));
}

bool is_cptp(const KrausFamily& f, double tol) { return cptp_residual(f) <= tol; }

Instrument measure_prepare_instrument(Pauli basis, const std::array<Vector, 2>& prepared, double tol) {
  if (basis == Pauli::I) throw std::invalid_argument("measure_prepare_instrument: basis must be x, y or z");
  std::vector<KrausFamily> branches;
  for (int s = 0; s < 2; ++s) {
    const Vector& eta = prepared[s];
    if (eta.size() < 1 || std::abs(eta.norm() - 1.0) > tol)
      throw std::invalid_argument("measure_prepare_instrument: prepared state " + std::to_string(s) +
                                  " is not a unit vector");
    branches.push_back(KrausFamily::measure_prepare(pauli_eigenvector(basis, s), eta));
  }
  return Instrument(std::move(branches), tol);
}

KrausFamily random_cp_map(DimensionPair dims, int n_kraus, std::uint64_t seed) {
  if (n_kraus < 1) throw std::invalid_argument("random_cp_map: n_kraus must be positive");
  ComplexGaussian gauss(seed);
  std::vector<Matrix> ops;
  for (int k = 0; k < n_kraus; ++k) ops.push_back(gauss.matrix(dims.d_out, dims.d_in));
  return {dims, std::move(ops)};
}

namespace {

std::vector<Matrix> trace_normalized(const KrausFamily& f) {
  const auto n = static_cast<int>(f.operators().size());
  if (n * f.dims().d_out < f.dims().d_in)
    throw std::invalid_argument("random CPTP map needs n_kraus * d_out >= d_in");
  const Matrix s = f.effect();
  Eigen::SelfAdjointEigenSolver<Matrix> solver((s + s.adjoint()) / 2.0);
  const Matrix inv_sqrt = solver.operatorInverseSqrt();
  std::vector<Matrix> ops;
  for (const auto& e : f.operators()) ops.push_back(e * inv_sqrt);
  return ops;
}

}  // namespace

KrausFamily random_cptp(DimensionPair dims, int n_kraus, std::uint64_t seed) {
  return {dims, trace_normalized(random_cp_map(dims, n_kraus, seed))};
}

Instrument random_instrument(DimensionPair dims, int outcomes, int kraus_per_outcome, std::uint64_t seed) {
  if (outcomes < 1 || kraus_per_outcome < 1)
    throw std::invalid_argument("random_instrument: counts must be positive");
  const auto ops = trace_normalized(random_cp_map(dims, outcomes * kraus_per_outcome, seed));
  std::vector<KrausFamily> branches;
  for (int o = 0; o < outcomes; ++o)
    branches.emplace_back(dims, std::vector<Matrix>(ops.begin() + o * kraus_per_outcome,
                                                    ops.begin() + (o + 1) * kraus_per_outcome));
  return Instrument(std::move(branches), 1e-10);
}

}  // namespace procmat
