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

// Dense complex linear algebra on small Hilbert spaces.
//
// Basis convention: computational basis |0>,|1>,...; for tensor products the
// left factor owns the most significant index, matching kron().

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace procmat {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using Matrix = CMatrix<double>;
using Vector = CVector<double>;

/// Tolerance used for Hermiticity, PSD and CPTP tests unless overridden.
inline constexpr double kDefaultTol = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input/output dimensions of one laboratory (H_in -> H_out).
struct DimensionPair {
  int d_in = 1;
  int d_out = 1;

  DimensionPair() = default;
  DimensionPair(int in, int out) : d_in(in), d_out(out) {
    if (in < 1 || out < 1) throw DimensionError("dimensions must be positive");
  }
  int total() const { return d_in * d_out; }
  friend bool operator==(const DimensionPair&, const DimensionPair&) = default;
};

enum class Pauli { I, X, Y, Z };

inline constexpr Pauli kAllPaulis[] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
inline constexpr Pauli kNonIdentityPaulis[] = {Pauli::X, Pauli::Y, Pauli::Z};

/// '1', 'x', 'y', 'z'.
inline char pauli_char(Pauli p) { return "1xyz"[static_cast<int>(p)]; }

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case '1': case 'i': case 'I': return Pauli::I;
    case 'x': case 'X': return Pauli::X;
    case 'y': case 'Y': return Pauli::Y;
    case 'z': case 'Z': return Pauli::Z;
  }
  throw std::invalid_argument(std::string("unknown Pauli label '") + c + "'");
}

// ---------------------------------------------------------------------------
// products and traces

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::kroneckerProduct(a.derived().eval(), b.derived().eval());
  return out;
}

/// Kronecker product of a list of factors, left to right. Empty list gives 1x1 identity.
template <typename Real>
CMatrix<Real> kron_all(const std::vector<CMatrix<Real>>& factors) {
  CMatrix<Real> out = CMatrix<Real>::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

/// Reduced operator on the factors listed in `keep` (in increasing factor order).
template <typename Derived>
auto partial_trace(const Eigen::MatrixBase<Derived>& m, const std::vector<int>& dims,
                   std::vector<int> keep) {
  using Scalar = typename Derived::Scalar;
  using Out = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  const int nf = static_cast<int>(dims.size());
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionError("partial_trace: factor dimensions must be positive");
    total *= d;
  }
  if (m.rows() != total || m.cols() != total)
    throw DimensionError("partial_trace: product of dims " + std::to_string(total) +
                         " does not match matrix size " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int k : keep)
    if (k < 0 || k >= nf) throw DimensionError("partial_trace: keep index out of range");

  std::vector<bool> kept(nf, false);
  for (int k : keep) kept[k] = true;

  // strides of each factor in the full index
  std::vector<long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  long kept_dim = 1, traced_dim = 1;
  for (int f = 0; f < nf; ++f) (kept[f] ? kept_dim : traced_dim) *= dims[f];

  // map (kept multi-index, traced multi-index) -> full index
  auto full_index = [&](long kidx, long tidx) {
    long full = 0;
    for (int f = nf - 1; f >= 0; --f) {
      long& src = kept[f] ? kidx : tidx;
      full += (src % dims[f]) * stride[f];
      src /= dims[f];
    }
    return full;
  };

  std::vector<long> offsets(static_cast<std::size_t>(traced_dim));
  for (long t = 0; t < traced_dim; ++t) offsets[t] = full_index(0, t);
  std::vector<long> bases(static_cast<std::size_t>(kept_dim));
  for (long k = 0; k < kept_dim; ++k) bases[k] = full_index(k, 0);

  Out out = Out::Zero(kept_dim, kept_dim);
  for (long r = 0; r < kept_dim; ++r)
    for (long c = 0; c < kept_dim; ++c) {
      Scalar acc(0);
      for (long t = 0; t < traced_dim; ++t) acc += m(bases[r] + offsets[t], bases[c] + offsets[t]);
      out(r, c) = acc;
    }
  return out;
}

/// Tr(a^dagger b).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar hs_inner(const Eigen::MatrixBase<DerivedA>& a,
                                   const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("hs_inner: shape mismatch");
  return a.conjugate().cwiseProduct(b).sum();
}

/// |v><v|.
template <typename Derived>
auto projector(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out = v * v.adjoint();
  return out;
}

// ---------------------------------------------------------------------------
// Pauli basis

template <typename Real = double>
CMatrix<Real> pauli(Pauli p) {
  using C = std::complex<Real>;
  CMatrix<Real> m(2, 2);
  switch (p) {
    case Pauli::I: m << C(1), C(0), C(0), C(1); break;
    case Pauli::X: m << C(0), C(1), C(1), C(0); break;
    case Pauli::Y: m << C(0), C(0, -1), C(0, 1), C(0); break;
    case Pauli::Z: m << C(1), C(0), C(0), C(-1); break;
  }
  return m;
}

/// Tensor product of single-qubit Paulis, left factor most significant.
template <typename Real = double>
CMatrix<Real> pauli_word(const std::vector<Pauli>& word) {
  std::vector<CMatrix<Real>> factors;
  factors.reserve(word.size());
  for (Pauli p : word) factors.push_back(pauli<Real>(p));
  return kron_all(factors);
}

/// Unit eigenvector of sigma_p with eigenvalue (-1)^s; first nonzero amplitude real positive.
template <typename Real = double>
CVector<Real> pauli_eigenvector(Pauli p, int s) {
  using C = std::complex<Real>;
  if (s != 0 && s != 1) throw std::invalid_argument("pauli_eigenvector: outcome bit must be 0 or 1");
  const Real h = Real(1) / std::sqrt(Real(2));
  const Real sign = s == 0 ? Real(1) : Real(-1);
  CVector<Real> v(2);
  switch (p) {
    case Pauli::I: throw std::invalid_argument("pauli_eigenvector: identity has no eigenbasis choice");
    case Pauli::X: v << C(h), C(sign * h); break;
    case Pauli::Y: v << C(h), C(0, sign * h); break;
    case Pauli::Z:
      if (s == 0) v << C(1), C(0);
      else v << C(0), C(1);
      break;
  }
  return v;
}

/// Columns are pauli_eigenvector(p, 0) and pauli_eigenvector(p, 1).
template <typename Real = double>
CMatrix<Real> pauli_eigenbasis(Pauli p) {
  CMatrix<Real> u(2, 2);
  u.col(0) = pauli_eigenvector<Real>(p, 0);
  u.col(1) = pauli_eigenvector<Real>(p, 1);
  return u;
}

// ---------------------------------------------------------------------------
// Hermiticity and positivity

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Ascending eigenvalues of the Hermitian part of m.
template <typename Derived>
auto hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m, double tol = kDefaultTol) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols()) throw DimensionError("eigenvalues of a non-square matrix");
  if (!is_hermitian(m, tol)) throw NotHermitianError("matrix is not Hermitian within tolerance");
  Mat herm = (m + m.adjoint()) / 2;
  Eigen::SelfAdjointEigenSolver<Mat> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver did not converge");
  return solver.eigenvalues().eval();
}

template <typename Derived>
double min_eigenvalue(const Eigen::MatrixBase<Derived>& m, double tol = kDefaultTol) {
  return static_cast<double>(hermitian_eigenvalues(m, tol)(0));
}

template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& m, double tol = kDefaultTol) {
  return min_eigenvalue(m, tol) >= -tol;
}

/// Largest entry modulus; the max-norm used for CPTP residuals.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

/// Whether every entry is finite.
template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const auto z = m(i);
    if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z))) return false;
  }
  return true;
}

/// Transpose of the listed factors only.
template <typename Derived>
auto partial_transpose(const Eigen::MatrixBase<Derived>& m, const std::vector<int>& dims,
                       const std::vector<int>& factors) {
  using Scalar = typename Derived::Scalar;
  using Out = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int nf = static_cast<int>(dims.size());
  long total = 1;
  for (int d : dims) total *= d;
  if (m.rows() != total || m.cols() != total)
    throw DimensionError("partial_transpose: product of dims does not match matrix size");
  std::vector<bool> flip(nf, false);
  for (int f : factors) {
    if (f < 0 || f >= nf) throw DimensionError("partial_transpose: factor index out of range");
    flip[f] = true;
  }
  Out out(total, total);
  std::vector<int> ri(nf), ci(nf);
  for (long r = 0; r < total; ++r)
    for (long c = 0; c < total; ++c) {
      long rr = r, cc = c;
      for (int f = nf - 1; f >= 0; --f) {
        ri[f] = static_cast<int>(rr % dims[f]);
        ci[f] = static_cast<int>(cc % dims[f]);
        rr /= dims[f];
        cc /= dims[f];
      }
      long nr = 0, nc = 0;
      for (int f = 0; f < nf; ++f) {
        const int a = flip[f] ? ci[f] : ri[f];
        const int b = flip[f] ? ri[f] : ci[f];
        nr = nr * dims[f] + a;
        nc = nc * dims[f] + b;
      }
      out(nr, nc) = m(r, c);
    }
  return out;
}

/// Computational basis vector |k> in dimension d.
inline Vector basis_vector(int d, int k) {
  if (k < 0 || k >= d) throw DimensionError("basis_vector: index out of range");
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return v;
}

/// Generalized Gell-Mann basis: identity first, then d^2 - 1 traceless Hermitian
/// matrices with Tr(G^2) = 2. For d = 2 this is (I, X, Y, Z).
inline std::vector<Matrix> gell_mann_basis(int d) {
  if (d < 1) throw DimensionError("gell_mann_basis: dimension must be positive");
  std::vector<Matrix> out;
  out.push_back(Matrix::Identity(d, d));
  if (d == 2) {
    for (Pauli p : kNonIdentityPaulis) out.push_back(pauli(p));
    return out;
  }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = sym(k, j) = 1.0;
      out.push_back(sym);
      Matrix anti = Matrix::Zero(d, d);
      anti(j, k) = Complex(0, -1);
      anti(k, j) = Complex(0, 1);
      out.push_back(anti);
    }
  for (int l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) diag(j, j) = scale;
    diag(l, l) = -l * scale;
    out.push_back(diag);
  }
  return out;
}

}  // namespace procmat
