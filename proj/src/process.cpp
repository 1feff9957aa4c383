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

#include "procmat/process.hpp"

#include <cmath>
#include <string>

namespace procmat {

PartySpec::PartySpec(std::vector<DimensionPair> parties) : parties_(std::move(parties)) {
  if (parties_.empty()) throw std::invalid_argument("PartySpec: at least one party required");
}

int PartySpec::total_dim() const {
  int t = 1;
  for (const auto& p : parties_) t *= p.total();
  return t;
}

int PartySpec::output_product() const {
  int t = 1;
  for (const auto& p : parties_) t *= p.d_out;
  return t;
}

std::vector<int> PartySpec::factor_dims() const {
  std::vector<int> dims;
  for (const auto& p : parties_) {
    dims.push_back(p.d_in);
    dims.push_back(p.d_out);
  }
  return dims;
}

ProcessMatrix::ProcessMatrix(PartySpec spec, Matrix matrix) : spec_(std::move(spec)), matrix_(std::move(matrix)) {
  const int n = spec_.total_dim();
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw DimensionError("ProcessMatrix: matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + " but the party spec needs " + std::to_string(n) +
                         "x" + std::to_string(n));
}

namespace {

// Tr(A B) without forming the product.
Complex trace_of_product(const Matrix& a, const Matrix& b) { return a.transpose().cwiseProduct(b).sum(); }

}  // namespace

Complex trace_rule(const ProcessMatrix& w, const std::vector<CJOperator>& branch_cjs) {
  const auto& parties = w.spec().parties();
  if (branch_cjs.size() != parties.size())
    throw DimensionError("probability: expected " + std::to_string(parties.size()) + " CJ operators, got " +
                         std::to_string(branch_cjs.size()));
  Matrix joint = Matrix::Identity(1, 1);
  for (std::size_t p = 0; p < parties.size(); ++p) {
    if (!(branch_cjs[p].dims == parties[p]))
      throw DimensionError("probability: CJ operator " + std::to_string(p) + " does not match party dimensions");
    joint = kron(joint, branch_cjs[p].matrix);
  }
  return trace_of_product(w.matrix(), joint);
}

double probability(const ProcessMatrix& w, const std::vector<CJOperator>& branch_cjs) {
  const Complex t = trace_rule(w, branch_cjs);
  if (std::abs(t.imag()) > 1e-10)
    throw NotHermitianError("probability: trace rule has imaginary part " + std::to_string(t.imag()) +
                            "; process matrix or CJ operator is not Hermitian");
  return t.real();
}

double display_probability(double p) { return std::clamp(p, 0.0, 1.0); }

namespace {

std::string basis_label(int d, std::size_t k) {
  if (d == 2) return std::string(1, pauli_char(kAllPaulis[k]));
  return k == 0 ? std::string("1") : "g" + std::to_string(k);
}

}  // namespace

PartyConstraintBasis party_constraint_basis(DimensionPair dims) {
  PartyConstraintBasis out;
  if (dims.d_in == dims.d_out) {
    out.reference = {"ref", cj_of_kraus(KrausFamily::identity(dims.d_in)).matrix};
  } else {
    std::vector<Matrix> ops;
    const Vector zero = basis_vector(dims.d_out, 0);
    for (int k = 0; k < dims.d_in; ++k) ops.push_back(zero * basis_vector(dims.d_in, k).adjoint());
    out.reference = {"ref", cj_of_kraus(KrausFamily(dims, std::move(ops))).matrix};
  }
  const auto gin = gell_mann_basis(dims.d_in);
  const auto gout = gell_mann_basis(dims.d_out);
  for (std::size_t a = 0; a < gin.size(); ++a)
    for (std::size_t b = 1; b < gout.size(); ++b)
      out.directions.push_back({"in=" + basis_label(dims.d_in, a) + "/out=" + basis_label(dims.d_out, b),
                                kron(gin[a], gout[b]) / 2.0});
  return out;
}

std::vector<NormalizationConstraint> normalization_constraints(const PartySpec& spec) {
  std::vector<PartyConstraintBasis> bases;
  for (const auto& p : spec.parties()) bases.push_back(party_constraint_basis(p));

  // mixed-radix enumeration: choice 0 = reference, choice k = direction k-1
  std::vector<std::size_t> radix;
  std::size_t count = 1;
  for (const auto& b : bases) {
    radix.push_back(b.directions.size() + 1);
    count *= radix.back();
  }
  std::vector<NormalizationConstraint> out;
  out.reserve(count);
  std::vector<std::size_t> choice(bases.size(), 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rem = idx;
    for (std::size_t p = bases.size(); p-- > 0;) {
      choice[p] = rem % radix[p];
      rem /= radix[p];
    }
    NormalizationConstraint c;
    c.op = Matrix::Identity(1, 1);
    bool all_reference = true;
    for (std::size_t p = 0; p < bases.size(); ++p) {
      const auto& lo = choice[p] == 0 ? bases[p].reference : bases[p].directions[choice[p] - 1];
      all_reference = all_reference && choice[p] == 0;
      c.op = kron(c.op, lo.op);
      if (!c.label.empty()) c.label += " ";
      c.label += "p" + std::to_string(p) + ":" + lo.label;
    }
    c.expected = all_reference ? 1.0 : 0.0;
    out.push_back(std::move(c));
  }
  return out;
}

ValidityReport validate(const ProcessMatrix& w, double tol) {
  ValidityReport r;
  const Matrix& m = w.matrix();
  r.hermitian = is_hermitian(m, tol);
  if (r.hermitian) {
    r.min_eigenvalue = min_eigenvalue(m, tol);
    r.psd_ok = r.min_eigenvalue >= -tol;
  } else {
    r.min_eigenvalue = std::nan("");
    r.psd_ok = false;
  }

  r.trace = m.trace().real();
  r.expected_trace = w.spec().output_product();
  r.trace_ok = std::abs(r.trace - r.expected_trace) <= tol && std::abs(m.trace().imag()) <= tol;

  const auto constraints = normalization_constraints(w.spec());
  r.constraints_checked = constraints.size();
  r.worst_residual = 0.0;
  for (const auto& c : constraints) {
    const Complex v = trace_of_product(m, c.op);
    const double residual = std::abs(v - Complex(c.expected));
    r.worst_residual = std::max(r.worst_residual, residual);
    if (residual > tol) r.violated_constraints.push_back({c.label, v.real(), c.expected, residual});
  }
  r.normalization_ok = r.violated_constraints.empty();
  return r;
}

double trace_dimension_identity(const ProcessMatrix& w) {
  if (!w.is_single_party()) throw std::invalid_argument("trace_dimension_identity: single-party process matrix required");
  const DimensionPair dims = w.spec().parties().front();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dims.d_out));
  double total = 0.0;
  for (int j = 0; j < dims.d_out; ++j)
    for (int k = 0; k < dims.d_in; ++k) {
      const Matrix e = scale * basis_vector(dims.d_out, j) * basis_vector(dims.d_in, k).adjoint();
      total += trace_rule(w, {cj_of_kraus(KrausFamily(dims, {e}))}).real();
    }
  return total;
}

}  // namespace procmat
