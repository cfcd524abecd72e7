// Copyright 2026 The aqss-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "aqss/linalg.hpp"

namespace aqss {

/**
 * A reproducible random stream keyed by (master_seed, stream_id).
 *
 * The pair is expanded through std::seed_seq into a 64-bit Mersenne Twister,
 * so the same pair always replays the same sequence and different stream ids
 * give independent streams. Monte Carlo trial t uses stream_id t, which makes
 * results independent of how trials are scheduled across threads.
 */
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// A fresh stream with the same master seed and a different id.
  RngStream fork(std::uint64_t stream_id) const {
    return RngStream(master_seed_, stream_id);
  }

  std::mt19937_64& engine() { return engine_; }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// d x d matrix of i.i.d. standard complex normals (E|z|^2 = 1).
ComplexMatrix ginibre_matrix(int d, RngStream& rng);

/// Haar-distributed unitary from QR of a Ginibre matrix with the phases of
/// diag(R) divided out.
Unitary haar_unitary(int d, RngStream& rng);

/// The d^2 operators X^a Z^b, indexed a * d + b, with X|k> = |k+1 mod d> and
/// Z|k> = exp(2 pi i k / d)|k>.
std::vector<Unitary> weyl_heisenberg_operators(int d);

/// |psi><psi| with psi the first column of a Haar unitary.
DensityMatrix random_pure_state(int d, RngStream& rng);

DensityMatrix random_product_pure_state(int dim_a, int dim_b, RngStream& rng);

/// Product of independent random pure states, one per subsystem.
DensityMatrix random_product_pure_state(std::span<const int> dims,
                                        RngStream& rng);

/// k_terms random product pure states with flat-Dirichlet weights.
SeparableDecomposition random_separable_decomposition(int dim_a, int dim_b,
                                                      int k_terms,
                                                      RngStream& rng);

DensityMatrix random_separable_state(int dim_a, int dim_b, int k_terms,
                                     RngStream& rng);

}  // namespace aqss
