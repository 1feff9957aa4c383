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

// The two-party causal game: the W_OCB process matrix, the quantum strategy
// that beats the causal bound, and an exhaustive enumeration of classical
// causally ordered strategies.
//
// Success criterion on inputs (a, b, b'): x == b when b' = 0, y == a when b' = 1.
// p_ocb = (1/2)[p(x=b | b'=0) + p(y=a | b'=1)] under uniform a, b, b'.

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "procmat/process.hpp"

namespace procmat::ocb {

/// Two parties, each a qubit in and a qubit out: H_1^A H_2^A H_1^B H_2^B.
PartySpec party_spec();

/// (1/4)[I^4 + (I Z Z I + Z I X Z)/sqrt(2)].
ProcessMatrix build_w_ocb();

/// Alice measures Z with outcome x and sends |a>: P_x (x) P_a.
CJOperator alice_cj(int a, int x);

/// b' = 1: measure Z with outcome y, send eta: P_y (x) P_eta.
/// b' = 0: measure X with outcome y, send |b xor y>: P_{X,y} (x) P_{b xor y}.
CJOperator bob_cj(int b, int b_prime, int y, const Vector& eta);

/// Named eta states accepted by the CLI: "0", "1", "plus", "iplus".
Vector eta_state(std::string_view name);

struct GameInputs {
  int a = 0;
  int b = 0;
  int b_prime = 0;
};

/// P(x, y | a, b, b') under the strategy above.
double outcome_probability(const ProcessMatrix& w, const GameInputs& in, int x, int y, const Vector& eta);

struct GameResult {
  double p_guess_b = 0.0;  ///< p(x = b | b' = 0)
  double p_guess_a = 0.0;  ///< p(y = a | b' = 1)
  double p_ocb = 0.0;
};

GameResult evaluate_game(const ProcessMatrix& w, const Vector& eta);

/// (2 + sqrt 2)/4.
inline double quantum_value() { return (2.0 + std::sqrt(2.0)) / 4.0; }

// ---------------------------------------------------------------------------
// classical causal strategies

enum class Order { AliceFirst, BobFirst };

std::string_view order_name(Order o);

/// Deterministic one-way strategy. The first party maps its inputs to an output
/// and to a message in [0, message_alphabet); the second party maps its inputs
/// and the message to its output.
///
/// AliceFirst: first_output[a], message[a], second_output[(2b + b') * K + c].
/// BobFirst:   first_output[2b + b'], message[2b + b'], second_output[a * K + c].
struct CausalStrategy {
  Order order = Order::AliceFirst;
  int message_alphabet = 1;
  std::vector<int> first_output;
  std::vector<int> message;
  std::vector<int> second_output;

  /// Number of the 8 equally likely (a, b, b') on which the game is won.
  int successes() const;
  double p_ocb() const { return successes() / 8.0; }
  std::string describe() const;
};

struct CausalSearchResult {
  Order order = Order::AliceFirst;
  int message_alphabet = 1;
  int best_successes = 0;
  double value = 0.0;  ///< best_successes / 8, exact
  CausalStrategy best;
  std::size_t strategies = 0;
};

/// Exhaustive search over every deterministic strategy for one order.
CausalSearchResult search_causal(Order order, int message_alphabet);

struct CausalBound {
  double value = 0.0;
  CausalSearchResult alice_first;      ///< 1-bit message
  CausalSearchResult bob_first;        ///< 1-bit message
  CausalSearchResult bob_first_wide;   ///< 2-bit message, Bob holds two bits
};

/// Maximum over both orders; mixtures cannot exceed the deterministic maximum.
CausalBound causal_bound_bruteforce();

}  // namespace procmat::ocb
