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

#include "procmat/ocbgame.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace procmat;
using namespace procmat::ocb;

namespace {

bool wins(int a, int b, int b_prime, int x, int y) { return b_prime == 0 ? x == b : y == a; }

// Best score (out of 8) when the first party sees only its own inputs and the
// second party sees every input bit. Any one-way strategy is dominated by this.
int full_information_bound(Order order) {
  int best = 0;
  if (order == Order::AliceFirst) {
    for (int xf = 0; xf < 4; ++xf)      // x = f(a)
      for (int yf = 0; yf < 256; ++yf) {  // y = g(a, b, b')
        int s = 0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp)
              s += wins(a, b, bp, (xf >> a) & 1, (yf >> (4 * a + 2 * b + bp)) & 1);
        best = std::max(best, s);
      }
  } else {
    for (int yf = 0; yf < 16; ++yf)     // y = g(b, b')
      for (int xf = 0; xf < 256; ++xf) {  // x = f(a, b, b')
        int s = 0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp)
              s += wins(a, b, bp, (xf >> (4 * a + 2 * b + bp)) & 1, (yf >> (2 * b + bp)) & 1);
        best = std::max(best, s);
      }
  }
  return best;
}

}  // namespace

TEST(WOcb, SpectrumAndTrace) {
  const ProcessMatrix w = build_w_ocb();
  EXPECT_EQ(w.spec(), party_spec());
  EXPECT_NEAR(w.matrix().trace().real(), 4.0, 1e-14);
  const Eigen::VectorXd ev = hermitian_eigenvalues(w.matrix());
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    EXPECT_TRUE(std::abs(ev(k)) < 1e-12 || std::abs(ev(k) - 0.5) < 1e-12) << ev(k);
  EXPECT_NEAR(ev.minCoeff(), 0.0, 1e-12);
}

TEST(WOcb, IsValid) {
  const ValidityReport r = validate(build_w_ocb(), 1e-10);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.constraints_checked, 169u);
}

TEST(WOcb, MatchesPauliDefinition) {
  const Matrix i2 = Matrix::Identity(2, 2);
  const Matrix x = pauli(Pauli::X), z = pauli(Pauli::Z);
  const Matrix expected =
      0.25 * (Matrix::Identity(16, 16) + (kron_all<double>({i2, z, z, i2}) + kron_all<double>({z, i2, x, z})) /
                                             std::sqrt(2.0));
  EXPECT_LT(max_abs(build_w_ocb().matrix() - expected), 1e-15);
}

TEST(Strategies, AliceCJ) {
  const Vector k0 = basis_vector(2, 0), k1 = basis_vector(2, 1);
  EXPECT_EQ(alice_cj(0, 1).matrix, kron(projector(k1), projector(k0)));
  EXPECT_EQ(alice_cj(1, 0).matrix, kron(projector(k0), projector(k1)));
  EXPECT_THROW(alice_cj(2, 0), std::invalid_argument);
}

TEST(Strategies, BobCJ) {
  const Vector eta = eta_state("iplus");
  const Vector k0 = basis_vector(2, 0), k1 = basis_vector(2, 1);
  EXPECT_LT(max_abs(bob_cj(0, 1, 1, eta).matrix - kron(projector(k1), projector(eta))), 1e-15);
  EXPECT_LT(max_abs(bob_cj(1, 0, 0, eta).matrix - kron(projector(pauli_eigenvector(Pauli::X, 0)), projector(k1))),
            1e-15);
  EXPECT_THROW(bob_cj(0, 1, 0, Vector::Ones(2)), std::invalid_argument);
  EXPECT_THROW(eta_state("minus"), std::invalid_argument);
}

TEST(Strategies, OutcomeSumsAreCptp) {
  for (const std::string_view name : {"0", "1", "plus", "iplus"}) {
    const Vector eta = eta_state(name);
    for (int a = 0; a < 2; ++a) {
      const Matrix sum = alice_cj(a, 0).matrix + alice_cj(a, 1).matrix;
      EXPECT_LT(max_abs(partial_trace(sum, {2, 2}, {0}) - Matrix::Identity(2, 2)), 1e-15);
    }
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp) {
        const Matrix sum = bob_cj(b, bp, 0, eta).matrix + bob_cj(b, bp, 1, eta).matrix;
        EXPECT_LT(max_abs(partial_trace(sum, {2, 2}, {0}) - Matrix::Identity(2, 2)), 1e-15);
      }
  }
}

TEST(Game, QuantumValue) {
  const GameResult r = evaluate_game(build_w_ocb(), eta_state("0"));
  EXPECT_NEAR(r.p_ocb, (2.0 + std::sqrt(2.0)) / 4.0, 1e-12);
  EXPECT_NEAR(r.p_ocb, 0.8535533905932738, 1e-12);
  EXPECT_NEAR(r.p_guess_a, r.p_ocb, 1e-12);
  EXPECT_NEAR(r.p_guess_b, r.p_ocb, 1e-12);
  EXPECT_DOUBLE_EQ(quantum_value(), (2.0 + std::sqrt(2.0)) / 4.0);
}

TEST(Game, IndependentOfPreparedState) {
  const double ref = evaluate_game(build_w_ocb(), eta_state("0")).p_ocb;
  for (const std::string_view name : {"1", "plus", "iplus"})
    EXPECT_NEAR(evaluate_game(build_w_ocb(), eta_state(name)).p_ocb, ref, 1e-12) << name;
}

TEST(Game, OutcomesNormalizePerInput) {
  const ProcessMatrix w = build_w_ocb();
  const Vector eta = eta_state("plus");
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp) {
        double sum = 0.0;
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y) {
            const double p = outcome_probability(w, {a, b, bp}, x, y, eta);
            EXPECT_GE(p, -1e-12);
            sum += p;
          }
        EXPECT_NEAR(sum, 1.0, 1e-12);
      }
}

TEST(Game, MaximallyMixedProcessGivesHalf) {
  const ProcessMatrix w(party_spec(), Matrix::Identity(16, 16) / 4.0);
  EXPECT_NEAR(evaluate_game(w, eta_state("0")).p_ocb, 0.5, 1e-14);
  EXPECT_THROW(evaluate_game(ProcessMatrix(PartySpec::single(2, 2), Matrix::Identity(4, 4)), eta_state("0")),
               DimensionError);
}

TEST(Causal, BoundIsThreeQuarters) {
  const CausalBound bound = causal_bound_bruteforce();
  EXPECT_EQ(bound.value, 0.75);
  EXPECT_EQ(bound.alice_first.best_successes, 6);
  EXPECT_EQ(bound.bob_first.best_successes, 6);
  EXPECT_EQ(bound.bob_first_wide.best_successes, 6);
  EXPECT_EQ(bound.alice_first.strategies, 4096u);
  EXPECT_EQ(bound.bob_first.strategies, 4096u);
  EXPECT_EQ(bound.bob_first_wide.strategies, 1048576u);
  EXPECT_EQ(bound.alice_first.best.successes(), 6);
  EXPECT_LT(bound.value, quantum_value());
}

TEST(Causal, AgreesWithFullInformationOracle) {
  EXPECT_EQ(full_information_bound(Order::AliceFirst), 6);
  EXPECT_EQ(full_information_bound(Order::BobFirst), 6);
  EXPECT_EQ(search_causal(Order::AliceFirst, 2).best_successes, full_information_bound(Order::AliceFirst));
  EXPECT_EQ(search_causal(Order::BobFirst, 4).best_successes, full_information_bound(Order::BobFirst));
}

TEST(Causal, ExampleStrategies) {
  // Alice forwards a and guesses x = 0.
  CausalStrategy forward;
  forward.order = Order::AliceFirst;
  forward.message_alphabet = 2;
  forward.first_output = {0, 0};
  forward.message = {0, 1};
  forward.second_output = {0, 1, 0, 1, 0, 1, 0, 1};
  EXPECT_EQ(forward.successes(), 6);
  EXPECT_EQ(forward.p_ocb(), 0.75);
  EXPECT_FALSE(forward.describe().empty());

  // No communication: constant guesses.
  CausalStrategy silent = forward;
  silent.message = {0, 0};
  silent.second_output = std::vector<int>(8, 0);
  EXPECT_EQ(silent.p_ocb(), 0.5);
  EXPECT_EQ(search_causal(Order::AliceFirst, 1).value, 0.5);
  EXPECT_EQ(search_causal(Order::BobFirst, 1).value, 0.5);
}

TEST(Causal, OrderNames) {
  EXPECT_EQ(order_name(Order::AliceFirst), "A_before_B");
  EXPECT_EQ(order_name(Order::BobFirst), "B_before_A");
}
