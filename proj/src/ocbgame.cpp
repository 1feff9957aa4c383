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

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace procmat::ocb {

namespace {

void check_bit(int v, const char* name) {
  if (v != 0 && v != 1) throw std::invalid_argument(std::string(name) + " must be 0 or 1");
}

Matrix z_projector(int bit) { return projector(pauli_eigenvector(Pauli::Z, bit)); }

}  // namespace

PartySpec party_spec() { return PartySpec({DimensionPair(2, 2), DimensionPair(2, 2)}); }

ProcessMatrix build_w_ocb() {
  using enum Pauli;
  const Matrix identity = Matrix::Identity(16, 16);
  const Matrix bracket = (pauli_word({I, Z, Z, I}) + pauli_word({Z, I, X, Z})) / std::sqrt(2.0);
  return {party_spec(), (identity + bracket) / 4.0};
}

CJOperator alice_cj(int a, int x) {
  check_bit(a, "a");
  check_bit(x, "x");
  return {DimensionPair(2, 2), kron(z_projector(x), z_projector(a))};
}

CJOperator bob_cj(int b, int b_prime, int y, const Vector& eta) {
  check_bit(b, "b");
  check_bit(b_prime, "b'");
  check_bit(y, "y");
  if (eta.size() != 2 || std::abs(eta.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("bob_cj: eta must be a unit qubit state");
  if (b_prime == 1) return {DimensionPair(2, 2), kron(z_projector(y), projector(eta))};
  return {DimensionPair(2, 2), kron(projector(pauli_eigenvector(Pauli::X, y)), z_projector(b ^ y))};
}

Vector eta_state(std::string_view name) {
  if (name == "0") return pauli_eigenvector(Pauli::Z, 0);
  if (name == "1") return pauli_eigenvector(Pauli::Z, 1);
  if (name == "plus") return pauli_eigenvector(Pauli::X, 0);
  if (name == "iplus") return pauli_eigenvector(Pauli::Y, 0);
  throw std::invalid_argument("unknown eta state '" + std::string(name) + "' (expected 0, 1, plus, iplus)");
}

double outcome_probability(const ProcessMatrix& w, const GameInputs& in, int x, int y, const Vector& eta) {
  return probability(w, {alice_cj(in.a, x), bob_cj(in.b, in.b_prime, y, eta)});
}

GameResult evaluate_game(const ProcessMatrix& w, const Vector& eta) {
  if (!(w.spec() == party_spec()))
    throw DimensionError("evaluate_game: process matrix must have two qubit-in/qubit-out parties");
  GameResult r;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          if (x == b) r.p_guess_b += 0.25 * outcome_probability(w, {a, b, 0}, x, y, eta);
          if (y == a) r.p_guess_a += 0.25 * outcome_probability(w, {a, b, 1}, x, y, eta);
        }
  r.p_ocb = 0.5 * (r.p_guess_b + r.p_guess_a);
  return r;
}

// ---------------------------------------------------------------------------

std::string_view order_name(Order o) { return o == Order::AliceFirst ? "A_before_B" : "B_before_A"; }

int CausalStrategy::successes() const {
  const int k = message_alphabet;
  int wins = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp) {
        int x = 0, y = 0;
        if (order == Order::AliceFirst) {
          x = first_output[a];
          const int c = message[a];
          y = second_output[(2 * b + bp) * k + c];
        } else {
          y = first_output[2 * b + bp];
          const int c = message[2 * b + bp];
          x = second_output[a * k + c];
        }
        wins += bp == 0 ? (x == b) : (y == a);
      }
  return wins;
}

std::string CausalStrategy::describe() const {
  auto table = [](const std::vector<int>& t) {
    std::string s;
    for (int v : t) s += std::to_string(v);
    return s;
  };
  std::ostringstream os;
  os << order_name(order) << " K=" << message_alphabet << " first_output=" << table(first_output)
     << " message=" << table(message) << " second_output=" << table(second_output);
  return os.str();
}

namespace {

// Decode `code` as `len` digits in base `base`, least significant first.
void decode(std::size_t code, int base, std::vector<int>& out) {
  for (auto& v : out) {
    v = static_cast<int>(code % base);
    code /= base;
  }
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

CausalSearchResult search_causal(Order order, int message_alphabet) {
  if (message_alphabet < 1) throw std::invalid_argument("search_causal: message alphabet must be positive");
  const int k = message_alphabet;
  const std::size_t first_inputs = order == Order::AliceFirst ? 2 : 4;
  const std::size_t second_inputs = (order == Order::AliceFirst ? 4 : 2) * static_cast<std::size_t>(k);

  CausalStrategy s;
  s.order = order;
  s.message_alphabet = k;
  s.first_output.assign(first_inputs, 0);
  s.message.assign(first_inputs, 0);
  s.second_output.assign(second_inputs, 0);

  CausalSearchResult res;
  res.order = order;
  res.message_alphabet = k;
  res.best_successes = -1;

  const std::size_t n_first = ipow(2, first_inputs);
  const std::size_t n_msg = ipow(static_cast<std::size_t>(k), first_inputs);
  const std::size_t n_second = ipow(2, second_inputs);
  for (std::size_t f = 0; f < n_first; ++f) {
    decode(f, 2, s.first_output);
    for (std::size_t m = 0; m < n_msg; ++m) {
      decode(m, k, s.message);
      for (std::size_t g = 0; g < n_second; ++g) {
        decode(g, 2, s.second_output);
        ++res.strategies;
        const int wins = s.successes();
        if (wins > res.best_successes) {
          res.best_successes = wins;
          res.best = s;
        }
      }
    }
  }
  res.value = res.best_successes / 8.0;
  return res;
}

CausalBound causal_bound_bruteforce() {
  CausalBound cb;
  cb.alice_first = search_causal(Order::AliceFirst, 2);
  cb.bob_first = search_causal(Order::BobFirst, 2);
  cb.bob_first_wide = search_causal(Order::BobFirst, 4);
  cb.value = std::max({cb.alice_first.value, cb.bob_first.value, cb.bob_first_wide.value});
  return cb;
}

}  // namespace procmat::ocb
