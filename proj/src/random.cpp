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

#include "procmat/random.hpp"

namespace procmat {

Matrix random_density(int d, std::uint64_t seed) {
  if (d < 1) throw DimensionError("random_density: dimension must be positive");
  ComplexGaussian gauss(seed);
  const Matrix g = gauss.matrix(d, d);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

Matrix random_hermitian(int d, std::uint64_t seed) {
  if (d < 1) throw DimensionError("random_hermitian: dimension must be positive");
  ComplexGaussian gauss(seed);
  const Matrix g = gauss.matrix(d, d);
  return (g + g.adjoint()) / 2.0;
}

Vector random_state(int d, std::uint64_t seed) {
  if (d < 1) throw DimensionError("random_state: dimension must be positive");
  ComplexGaussian gauss(seed);
  Vector v = gauss.matrix(d, 1);
  return v / v.norm();
}

}  // namespace procmat
