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

#include "procmat/reduction.hpp"

#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace procmat {

std::string pauli_label(const PauliString& word) {
  const std::size_t n = word.size() / 2;
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i == n) s += '|';
    s += pauli_char(word[i]);
  }
  return s;
}

int log2_exact(int d) {
  if (d < 1 || !std::has_single_bit(static_cast<unsigned>(d))) return -1;
  return std::countr_zero(static_cast<unsigned>(d));
}

int qubits_per_side(const ProcessMatrix& w) {
  if (!w.is_single_party()) throw std::invalid_argument("single-party process matrix required");
  const DimensionPair dims = w.spec().parties().front();
  const int n = log2_exact(dims.d_in);
  if (dims.d_in != dims.d_out || n < 0)
    throw DimensionError("Pauli analysis needs d_in == d_out == 2^n (got " + std::to_string(dims.d_in) + ", " +
                         std::to_string(dims.d_out) + ")");
  return n;
}

// ---------------------------------------------------------------------------
// Pauli decomposition

namespace {

// sigma_word |j> = phase(j) |j xor flip>, first factor on the most significant bit.
struct SignedPermutation {
  unsigned flip = 0;
  unsigned sign_mask = 0;
  int y_count = 0;

  explicit SignedPermutation(const PauliString& word) {
    const std::size_t nf = word.size();
    for (std::size_t f = 0; f < nf; ++f) {
      const unsigned bit = 1u << (nf - 1 - f);
      switch (word[f]) {
        case Pauli::I: break;
        case Pauli::X: flip |= bit; break;
        case Pauli::Y: flip |= bit; sign_mask |= bit; ++y_count; break;
        case Pauli::Z: sign_mask |= bit; break;
      }
    }
  }

  Complex phase(unsigned j) const {
    static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex base = ipow[y_count % 4];
    return (std::popcount(j & sign_mask) % 2) ? -base : base;
  }
};

}  // namespace

Complex pauli_expectation(const Matrix& w, const PauliString& word) {
  const long dim = 1L << word.size();
  if (w.rows() != dim || w.cols() != dim) throw DimensionError("pauli_expectation: size mismatch");
  const SignedPermutation p(word);
  Complex acc(0);
  for (unsigned j = 0; j < static_cast<unsigned>(dim); ++j) acc += w(j, j ^ p.flip) * p.phase(j);
  return acc;
}

PauliDecomposition::PauliDecomposition(int n, std::vector<double> coefficients)
    : n_(n), coefficients_(std::move(coefficients)) {
  if (n < 1) throw DimensionError("PauliDecomposition: at least one qubit per side");
  if (coefficients_.size() != (std::size_t{1} << (4 * n)))
    throw DimensionError("PauliDecomposition: coefficient count must be 4^(2n)");
}

std::size_t PauliDecomposition::index_of(const PauliString& word) {
  std::size_t idx = 0;
  for (Pauli p : word) idx = idx * 4 + static_cast<std::size_t>(p);
  return idx;
}

PauliString PauliDecomposition::word_at(std::size_t index, int factors) {
  PauliString word(static_cast<std::size_t>(factors));
  for (int f = factors - 1; f >= 0; --f) {
    word[f] = static_cast<Pauli>(index % 4);
    index /= 4;
  }
  return word;
}

double PauliDecomposition::coefficient(const PauliString& word) const {
  if (word.size() != static_cast<std::size_t>(2 * n_)) throw DimensionError("coefficient: word length must be 2n");
  return coefficients_[index_of(word)];
}

Matrix PauliDecomposition::reconstruct() const {
  const int nf = 2 * n_;
  const long dim = 1L << nf;
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t idx = 0; idx < coefficients_.size(); ++idx) {
    const double c = coefficients_[idx];
    if (c == 0.0) continue;
    const SignedPermutation p(word_at(idx, nf));
    for (unsigned j = 0; j < static_cast<unsigned>(dim); ++j) out(j ^ p.flip, j) += c * p.phase(j);
  }
  return out;
}

PauliDecomposition pauli_decompose(const ProcessMatrix& w) {
  const int n = qubits_per_side(w);
  const int nf = 2 * n;
  const double dim = static_cast<double>(1L << nf);
  const double imag_tol = 1e-12 * std::max(1.0, max_abs(w.matrix()));
  std::vector<double> coeffs(std::size_t{1} << (2 * nf));
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    const Complex t = pauli_expectation(w.matrix(), PauliDecomposition::word_at(idx, nf)) / dim;
    if (std::abs(t.imag()) > imag_tol)
      throw NotHermitianError("pauli_decompose: coefficient " + pauli_label(PauliDecomposition::word_at(idx, nf)) +
                              " has imaginary part " + std::to_string(t.imag()));
    coeffs[idx] = t.real();
  }
  return {n, std::move(coeffs)};
}

// ---------------------------------------------------------------------------
// constraint sums

namespace {

double identity_coefficient(const Matrix& w) {
  const double dim = static_cast<double>(w.rows());
  return w.trace().real() / dim;
}

// Diagonals of V^dagger W V for product eigenbases V, one per basis choice.
// Entry k is Tr[W (P_{b_1(k_1)} (x) ... )] with k's bits in factor order.
class ProductBasisTable {
 public:
  explicit ProductBasisTable(const Matrix& w) : w_(w), factors_(log2_exact(static_cast<int>(w.rows()))) {}

  const Eigen::VectorXd& probabilities(const PauliString& bases) {
    const std::size_t key = PauliDecomposition::index_of(bases);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Matrix r = w_;
    for (int f = 0; f < factors_; ++f) rotate(r, f, pauli_eigenbasis(bases[f]));
    return cache_.emplace(key, r.diagonal().real()).first->second;
  }

 private:
  // r <- A^dagger r A with A = I (x) u (x) I acting on factor f.
  void rotate(Matrix& r, int f, const Matrix& u) const {
    const long dim = r.rows();
    const long bit = 1L << (factors_ - 1 - f);
    for (long c0 = 0; c0 < dim; ++c0) {
      if (c0 & bit) continue;
      const long c1 = c0 | bit;
      for (long row = 0; row < dim; ++row) {
        const Complex a = r(row, c0), b = r(row, c1);
        r(row, c0) = a * u(0, 0) + b * u(1, 0);
        r(row, c1) = a * u(0, 1) + b * u(1, 1);
      }
    }
    for (long r0 = 0; r0 < dim; ++r0) {
      if (r0 & bit) continue;
      const long r1 = r0 | bit;
      for (long col = 0; col < dim; ++col) {
        const Complex a = r(r0, col), b = r(r1, col);
        r(r0, col) = std::conj(u(0, 0)) * a + std::conj(u(1, 0)) * b;
        r(r1, col) = std::conj(u(0, 1)) * a + std::conj(u(1, 1)) * b;
      }
    }
  }

  const Matrix& w_;
  int factors_;
  std::map<std::size_t, Eigen::VectorXd> cache_;
};

std::string support_label(const std::vector<int>& support) {
  std::string s = "{";
  for (std::size_t i = 0; i < support.size(); ++i) s += (i ? "," : "") + std::to_string(support[i]);
  return s + "}";
}

unsigned support_mask(const std::vector<int>& support, int n, const char* what) {
  unsigned mask = 0;
  for (int p : support) {
    if (p < 0 || p >= n) throw std::invalid_argument(std::string(what) + " position out of range");
    mask |= 1u << (n - 1 - p);
  }
  return mask;
}

ConstraintRecord parity_constraint(ProductBasisTable& table, double w0, int n, const std::vector<Pauli>& alphas,
                                   const std::vector<Pauli>& betas, const std::vector<int>& xi_support,
                                   const std::vector<int>& eta_support) {
  if (static_cast<int>(alphas.size()) != n || static_cast<int>(betas.size()) != n)
    throw DimensionError("parity_subset_sum: need one alpha and one beta per qubit");
  for (Pauli p : alphas)
    if (p == Pauli::I) throw std::invalid_argument("parity_subset_sum: alphas must be x, y or z");
  for (Pauli p : betas)
    if (p == Pauli::I) throw std::invalid_argument("parity_subset_sum: betas must be x, y or z");
  if (eta_support.empty())
    throw std::invalid_argument("parity_subset_sum: eta_support must be nonempty; input-only coefficients are not constrained");

  const unsigned xi = support_mask(xi_support, n, "xi_support");
  const unsigned eta = support_mask(eta_support, n, "eta_support");

  PauliString bases(alphas);
  bases.insert(bases.end(), betas.begin(), betas.end());
  const Eigen::VectorXd& probs = table.probabilities(bases);

  const unsigned count = 1u << n;
  double lhs = 0.0;
  for (unsigned s = 0; s < count; ++s) {
    const unsigned target_parity = xi == 0 ? 0u : static_cast<unsigned>(std::popcount(s & xi) % 2);
    double acc = 0.0;
    unsigned subset_size = 0;
    for (unsigned m = 0; m < count; ++m) {
      if (static_cast<unsigned>(std::popcount(m & eta) % 2) != target_parity) continue;
      ++subset_size;
      acc += probs((s << n) | m);
    }
    if (subset_size != count / 2) throw std::logic_error("parity subset does not have size 2^(n-1)");
    lhs += acc / subset_size;
  }

  ConstraintRecord rec;
  PauliString target(2 * n, Pauli::I);
  for (int p = 0; p < n; ++p) {
    if (xi & (1u << (n - 1 - p))) target[p] = alphas[p];
    if (eta & (1u << (n - 1 - p))) target[n + p] = betas[p];
  }
  std::string a, b;
  for (Pauli p : alphas) a += pauli_char(p);
  for (Pauli p : betas) b += pauli_char(p);
  rec.description = "alphas=" + a + " betas=" + b + " xi=" + support_label(xi_support) +
                    " eta=" + support_label(eta_support);
  rec.lhs = lhs;
  rec.expected = 1.0;
  const double scale = static_cast<double>(count);
  rec.implied_coefficient = lhs / scale - w0;
  rec.implied_word = std::move(target);
  return rec;
}

}  // namespace

ConstraintRecord constraint_sum_single(const ProcessMatrix& w, Pauli alpha, Pauli beta, PrepareRule rule) {
  if (qubits_per_side(w) != 1) throw DimensionError("constraint_sum_single: single-qubit process matrix required");
  if (alpha == Pauli::I || beta == Pauli::I)
    throw std::invalid_argument("constraint_sum_single: alpha and beta must be x, y or z");
  const DimensionPair dims(2, 2);
  double lhs = 0.0;
  for (int s = 0; s < 2; ++s) {
    const int m = rule == PrepareRule::SameAsOutcome ? s : 0;
    const Matrix cj = kron(projector(pauli_eigenvector(alpha, s)), projector(pauli_eigenvector(beta, m)));
    lhs += trace_rule(w, {CJOperator(dims, cj)}).real();
  }
  ConstraintRecord rec;
  rec.description = std::string("alpha=") + pauli_char(alpha) + " beta=" + pauli_char(beta) +
                    (rule == PrepareRule::SameAsOutcome ? " m=s" : " m=0");
  rec.lhs = lhs;
  rec.expected = 1.0;
  rec.implied_word = {rule == PrepareRule::SameAsOutcome ? alpha : Pauli::I, beta};
  rec.implied_coefficient = (lhs - 2.0 * identity_coefficient(w.matrix())) / 2.0;
  return rec;
}

ConstraintRecord parity_subset_sum(const ProcessMatrix& w, const std::vector<Pauli>& alphas,
                                   const std::vector<Pauli>& betas, const std::vector<int>& xi_support,
                                   const std::vector<int>& eta_support) {
  const int n = qubits_per_side(w);
  ProductBasisTable table(w.matrix());
  return parity_constraint(table, identity_coefficient(w.matrix()), n, alphas, betas, xi_support, eta_support);
}

// ---------------------------------------------------------------------------
// reductions

namespace {

void check_positivity(const Matrix& m, double tol, bool& hermitian, bool& psd) {
  hermitian = is_hermitian(m, tol);
  psd = hermitian && min_eigenvalue(m, tol) >= -tol;
}

double product_residual(const Matrix& w, const Matrix& w1, int d_out) {
  return (w - kron(w1, Matrix::Identity(d_out, d_out))).norm();
}

void finish(ReductionReport& r, const Matrix& w1, double tol) {
  bool w1_herm = false;
  check_positivity(w1, tol, w1_herm, r.w1_psd);
  r.w1_trace = w1.trace().real();
  r.certified = r.violations.empty() && r.hermitian && r.psd_ok && r.trace_ok && r.w1_psd &&
                std::abs(r.w1_trace - 1.0) <= tol && r.residual <= tol;
  if (r.certified) r.w1 = w1;
}

}  // namespace

ReductionReport reduce_single_qubit(const ProcessMatrix& w, double tol) {
  if (qubits_per_side(w) != 1) throw DimensionError("reduce_single_qubit: single-qubit process matrix required");
  const Matrix& m = w.matrix();
  ReductionReport r;
  r.method = "constructive-single-qubit";
  check_positivity(m, tol, r.hermitian, r.psd_ok);
  if (r.hermitian) {
    for (Pauli alpha : kNonIdentityPaulis)
      for (Pauli beta : kNonIdentityPaulis)
        for (PrepareRule rule : {PrepareRule::SameAsOutcome, PrepareRule::AlwaysZero}) {
          ConstraintRecord rec = constraint_sum_single(w, alpha, beta, rule);
          ++r.constraints_checked;
          if (!rec.satisfied(tol)) r.violations.push_back(std::move(rec));
        }
  } else {
    ConstraintRecord rec;
    rec.description = "W is not Hermitian; constraint sums skipped";
    rec.lhs = std::nan("");
    r.violations.push_back(std::move(rec));
  }
  r.trace = m.trace().real();
  r.trace_ok = std::abs(r.trace - 2.0) <= tol;

  Matrix w1 = Matrix::Identity(2, 2) / 2.0;
  for (Pauli alpha : kNonIdentityPaulis)
    w1 += (pauli_expectation(m, {alpha, Pauli::I}).real() / 4.0) * pauli(alpha);
  r.residual = product_residual(m, w1, 2);
  finish(r, w1, tol);
  return r;
}

ReductionReport reduce_multiqubit(const ProcessMatrix& w, double tol) {
  const int n = qubits_per_side(w);
  if (n > 4) throw DimensionError("reduce_multiqubit: at most 4 qubits per side (dimension 256)");
  const Matrix& m = w.matrix();
  const int nf = 2 * n;
  const unsigned half = 1u << n;
  const double w0 = identity_coefficient(m);

  ReductionReport r;
  r.method = "constructive-multiqubit";
  ProductBasisTable table(m);

  auto run = [&](const PauliString& bases, unsigned xi_mask, unsigned eta_mask) {
    std::vector<Pauli> alphas(bases.begin(), bases.begin() + n), betas(bases.begin() + n, bases.end());
    std::vector<int> xi, eta;
    for (int p = 0; p < n; ++p) {
      if (xi_mask & (1u << (n - 1 - p))) xi.push_back(p);
      if (eta_mask & (1u << (n - 1 - p))) eta.push_back(p);
    }
    ConstraintRecord rec = parity_constraint(table, w0, n, alphas, betas, xi, eta);
    ++r.constraints_checked;
    if (!rec.satisfied(tol)) r.violations.push_back(std::move(rec));
  };

  if (n <= 3) {
    // one constraint per coefficient; off-support positions measured in Z
    const std::size_t words = std::size_t{1} << (2 * nf);
    for (std::size_t idx = 0; idx < words; ++idx) {
      const PauliString word = PauliDecomposition::word_at(idx, nf);
      unsigned xi_mask = 0, eta_mask = 0;
      PauliString bases(nf, Pauli::Z);
      for (int p = 0; p < n; ++p) {
        if (word[p] != Pauli::I) {
          xi_mask |= 1u << (n - 1 - p);
          bases[p] = word[p];
        }
        if (word[n + p] != Pauli::I) {
          eta_mask |= 1u << (n - 1 - p);
          bases[n + p] = word[n + p];
        }
      }
      if (eta_mask != 0) run(bases, xi_mask, eta_mask);
    }
  } else {
    // one representative basis pair per support pattern, letters cycling x, y, z
    std::size_t pattern = 0;
    for (unsigned xi_mask = 0; xi_mask < half; ++xi_mask)
      for (unsigned eta_mask = 1; eta_mask < half; ++eta_mask, ++pattern) {
        PauliString bases(nf);
        for (int f = 0; f < nf; ++f) bases[f] = kNonIdentityPaulis[(pattern + f) % 3];
        run(bases, xi_mask, eta_mask);
      }
  }

  const double d_out = static_cast<double>(half);
  r.trace = m.trace().real();
  r.trace_ok = std::abs(r.trace - d_out) <= tol;
  check_positivity(m, tol, r.hermitian, r.psd_ok);

  const Matrix w1 = partial_trace(m, {static_cast<int>(half), static_cast<int>(half)}, {0}) / d_out;
  if (r.hermitian) {
    // W_1 = sum over input words xi of w_{xi, 1..1} sigma_xi
    Matrix reassembled = Matrix::Zero(half, half);
    const std::size_t in_words = std::size_t{1} << nf;
    for (std::size_t idx = 0; idx < in_words; ++idx) {
      PauliString word = PauliDecomposition::word_at(idx, n);
      PauliString full(word);
      full.resize(nf, Pauli::I);
      const double c = pauli_expectation(m, full).real() / static_cast<double>(1L << nf);
      reassembled += c * pauli_word(word);
    }
    r.extraction_crosscheck = max_abs(reassembled - w1);
  }
  r.residual = product_residual(m, w1, static_cast<int>(half));
  finish(r, w1, tol);
  return r;
}

ReductionReport projection_oracle(const ProcessMatrix& w, double tol) {
  if (!w.is_single_party()) throw std::invalid_argument("projection_oracle: single-party process matrix required");
  const DimensionPair dims = w.spec().parties().front();
  const Matrix& m = w.matrix();

  ReductionReport r;
  r.method = "projection";
  const Matrix w1 = partial_trace(m, {dims.d_in, dims.d_out}, {0}) / static_cast<double>(dims.d_out);
  r.residual = product_residual(m, w1, dims.d_out);

  const ValidityReport v = validate(w, tol);
  r.hermitian = v.hermitian;
  r.psd_ok = v.psd_ok;
  r.trace = v.trace;
  r.trace_ok = v.trace_ok;
  r.constraints_checked = v.constraints_checked;
  for (const auto& c : v.violated_constraints) {
    ConstraintRecord rec;
    rec.description = c.label;
    rec.lhs = c.value;
    rec.expected = c.expected;
    rec.implied_coefficient = c.value - c.expected;
    r.violations.push_back(std::move(rec));
  }
  finish(r, w1, tol);
  return r;
}

std::pair<double, double> born_equivalence(const Matrix& w1, const KrausFamily& f, const ProcessMatrix& w) {
  if (!w.is_single_party()) throw std::invalid_argument("born_equivalence: single-party process matrix required");
  if (!(w.spec().parties().front() == f.dims())) throw DimensionError("born_equivalence: map dimensions do not match W");
  if (w1.rows() != f.dims().d_in || w1.cols() != f.dims().d_in)
    throw DimensionError("born_equivalence: W_1 dimension does not match map input");
  const double via_process = probability(w, {cj_of_kraus(f)});
  const double via_born = f.apply(w1).trace().real();
  return {via_process, via_born};
}

}  // namespace procmat
