// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "wsim/state.hpp"

namespace wsim {

// Counter-based deterministic stream: substream(seed, k) yields the same
// sequence no matter how many other substreams were drawn before it, so
// per-round streams can be consumed in any order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  static Rng substream(std::uint64_t seed, std::uint64_t counter);

  std::uint64_t next_u64();
  double uniform();                       // [0, 1)
  double normal();                        // standard normal
  cx normal_cx();                         // complex, independent re/im
  int uniform_int(int n);                 // {0, ..., n-1}

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar-random pure state over the given dims.
StateVector random_state(const std::vector<int>& dims, Rng& rng);

// Tensor product of independent random single-qubit states.
StateVector random_product_state(int n_qubits, Rng& rng);

// Normalized complex profile with zero component sum.
std::vector<cx> random_zsa_profile(int n, Rng& rng);

// Haar-ish random unitary (QR of a Gaussian matrix, phase-fixed).
Matrix random_unitary(int dim, Rng& rng);

}  // namespace wsim
