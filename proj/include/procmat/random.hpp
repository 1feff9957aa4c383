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

// Seeded generators for test inputs. All draws come from std::mt19937_64 seeded
// with the caller's seed, so outputs are deterministic for a given seed.

#pragma once

#include <cstdint>
#include <random>

#include "procmat/linalg.hpp"

namespace procmat {

/// Standard complex Gaussian (real and imaginary parts each N(0, 1/2)).
class ComplexGaussian {
 public:
  explicit ComplexGaussian(std::uint64_t seed) : engine_(seed) {}

  Complex operator()() { return {normal_(engine_), normal_(engine_)}; }

  Matrix matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int c = 0; c < cols; ++c)
      for (int r = 0; r < rows; ++r) m(r, c) = (*this)();
    return m;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, std::sqrt(0.5)};
};

/// Ginibre-ensemble density matrix G G^dagger / Tr(G G^dagger).
Matrix random_density(int d, std::uint64_t seed);

/// Hermitian matrix (G + G^dagger)/2 with standard complex Gaussian G.
Matrix random_hermitian(int d, std::uint64_t seed);

/// Haar-ish random unit vector (normalized complex Gaussian).
Vector random_state(int d, std::uint64_t seed);

}  // namespace procmat
