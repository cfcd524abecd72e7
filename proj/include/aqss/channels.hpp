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
#include <span>
#include <vector>

#include "aqss/linalg.hpp"
#include "aqss/random.hpp"

namespace aqss {

/// Number of Haar unitaries that makes a random unitary channel
/// epsilon-randomizing on C^d: ceil(150 d / epsilon^2).
/// Requires d >= 2 and 0 < epsilon < 1.
std::uint64_t required_n(int d, double epsilon);

/**
 * rho -> sum_i p_i U_i rho U_i^dagger.
 *
 * Immutable after construction. All unitaries share one dimension d >= 2,
 * there is at least one of them, and the weights are nonnegative and sum to 1
 * within 1e-12.
 */
class RandomUnitaryChannel {
 public:
  RandomUnitaryChannel(std::vector<Unitary> unitaries, std::vector<double> probs);

  /// Equal weights 1/n.
  static RandomUnitaryChannel uniform(std::vector<Unitary> unitaries);

  int dim() const { return dim_; }
  std::size_t size() const { return unitaries_.size(); }
  const std::vector<Unitary>& unitaries() const { return unitaries_; }
  const std::vector<double>& probs() const { return probs_; }
  const Unitary& unitary(std::size_t key) const;

 private:
  int dim_;
  std::vector<Unitary> unitaries_;
  std::vector<double> probs_;
};

/// One channel per subsystem, first part most significant in the tensor order.
class ChannelFamily {
 public:
  explicit ChannelFamily(std::vector<RandomUnitaryChannel> parts);

  std::size_t size() const { return parts_.size(); }
  const RandomUnitaryChannel& part(std::size_t k) const { return parts_.at(k); }
  const std::vector<RandomUnitaryChannel>& parts() const { return parts_; }
  std::vector<int> dims() const;
  int total_dim() const;

 private:
  std::vector<RandomUnitaryChannel> parts_;
};

/// n i.i.d. Haar unitaries with uniform weights.
RandomUnitaryChannel sample_ruc(int d, std::uint64_t n, RngStream& rng);

/// Uniform channel over the d^2 Weyl-Heisenberg operators; maps every state
/// exactly to 1/d.
RandomUnitaryChannel perfect_pqc(int d);

/// The single-element channel {1}.
RandomUnitaryChannel identity_channel(int d);

/// (U on subsystem k) M (U on subsystem k)^dagger for a matrix over the
/// tensor product of `dims`, without forming the full Kronecker product.
ComplexMatrix conjugate_subsystem(const ComplexMatrix& m, const ComplexMatrix& u,
                                  std::span<const int> dims, std::size_t k);

DensityMatrix apply(const RandomUnitaryChannel& channel, const DensityMatrix& rho);

/// The channel acting on subsystem k, identity elsewhere.
DensityMatrix apply_to_subsystem(const RandomUnitaryChannel& channel,
                                 const DensityMatrix& rho,
                                 std::span<const int> dims, std::size_t k);

/// (N_1 (x) ... (x) N_m)(rho), applied one factor at a time so the cost is
/// sum_k n_k conjugations rather than prod_k n_k.
DensityMatrix apply_product(const ChannelFamily& family, const DensityMatrix& rho);

/// ||N(rho) - 1/d||_1.
double epsilon_randomizing_distance(const RandomUnitaryChannel& channel,
                                    const DensityMatrix& rho);

/// U_key rho U_key^dagger.
DensityMatrix encode_with_key(const RandomUnitaryChannel& channel,
                              std::size_t key_index, const DensityMatrix& state);

/// U_key^dagger state U_key, the inverse of encode_with_key.
DensityMatrix decode_with_key(const RandomUnitaryChannel& channel,
                              std::size_t key_index, const DensityMatrix& state);

}  // namespace aqss
