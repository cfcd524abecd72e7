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
#include <optional>
#include <vector>

#include "aqss/channels.hpp"

namespace aqss {

/// Largest joint dimension d^m a session may hold.
inline constexpr std::uint64_t kMaxJointDim = 1024;

/// Parameters shared by the sender and the m receivers.
struct ProtocolConfig {
  int d = 2;
  double epsilon = 0.5;
  int parties = 2;
  /// Channel size per receiver; required_n(d, epsilon) when unset.
  std::optional<std::uint64_t> n_per_channel;

  /// Throws ParameterError unless d >= 2, 0 < epsilon < 1, parties >= 2 and
  /// any explicit channel size is >= 1.
  void validate() const;
  std::uint64_t channel_size() const;
  /// d^parties, saturating at UINT64_MAX.
  std::uint64_t joint_dim() const;
};

/**
 * One run of the sharing protocol: the sender's plaintext, the channels shared
 * with each receiver, the key index each receiver holds, and the ciphertext
 * (U_{k_1} (x) ... (x) U_{k_m}) rho (.)^dagger that was distributed.
 */
class AqssSession {
 public:
  AqssSession(ProtocolConfig config, ChannelFamily channels,
              DensityMatrix plaintext, std::vector<std::size_t> key_indices);

  const ProtocolConfig& config() const { return config_; }
  const ChannelFamily& channels() const { return channels_; }
  const DensityMatrix& plaintext() const { return plaintext_; }
  const DensityMatrix& ciphertext() const { return ciphertext_; }
  const std::vector<std::size_t>& key_indices() const { return key_indices_; }
  std::size_t key_for(std::size_t receiver) const { return key_indices_.at(receiver); }
  int parties() const { return static_cast<int>(channels_.size()); }

 private:
  ProtocolConfig config_;
  ChannelFamily channels_;
  DensityMatrix plaintext_;
  std::vector<std::size_t> key_indices_;
  DensityMatrix ciphertext_;
};

/// Keys presented by the receivers at decode time; std::nullopt marks a
/// receiver who did not show up.
using PresentedKeys = std::vector<std::optional<std::size_t>>;

/// Applies the product of the keyed unitaries for the given indices.
DensityMatrix encode_product(const ChannelFamily& channels,
                             std::span<const std::size_t> keys,
                             const DensityMatrix& plaintext);

/// Samples `parties` Haar channels of size config.channel_size(), draws a key
/// per receiver and encrypts. Throws ResourceLimitError when d^m exceeds
/// kMaxJointDim and DimensionError when the plaintext is not d^m-dimensional.
AqssSession charlie_encode(const ProtocolConfig& config,
                           const DensityMatrix& plaintext, RngStream& rng);

/// As above with pre-built channels (for example perfect_pqc parts); only the
/// keys are drawn from rng.
AqssSession charlie_encode(const ProtocolConfig& config, ChannelFamily channels,
                           const DensityMatrix& plaintext, RngStream& rng);

/// All receivers in one place undo their unitaries with their own keys.
DensityMatrix cooperate_decode(const AqssSession& session);

/// Decoding with the keys actually presented. A missing key is refused with
/// KeyError; a wrong key decodes to some other state without complaint.
DensityMatrix cooperate_decode(const AqssSession& session,
                               const PresentedKeys& keys);

/// What an outsider holds: the key-averaged ciphertext, i.e. the product
/// channel applied to the plaintext.
DensityMatrix exterior_adversary_view(const ChannelFamily& channels,
                                      const DensityMatrix& plaintext);
DensityMatrix exterior_adversary_view(const AqssSession& session);

struct InteriorAttackResult {
  DensityMatrix bob_decoded_joint;  ///< (N_A (x) 1)(plaintext)
  DensityMatrix alice_marginal;     ///< tr_B of the joint, N_A(plaintext_A)
};

/// Bob undoes his own unitary on the ciphertext without Alice's key. His
/// description of the result averages over Alice's key. Two-party sessions
/// only.
InteriorAttackResult interior_attack_bob(const AqssSession& session);

struct CollusionResult {
  std::vector<int> colluders;
  std::vector<int> outsiders;
  /// Ciphertext with the colluders' unitaries undone, averaged over the
  /// outsiders' keys.
  DensityMatrix joint;
  /// The joint reduced to the outsiders' subsystems.
  DensityMatrix outsider_marginal;
};

/// A strict, non-empty subset of receivers pools its keys.
CollusionResult collusion_attack(const AqssSession& session,
                                 std::span<const int> colluders);

struct KeyCostReport {
  double perfect_bits;  ///< 2 m log2 d, one Weyl-Heisenberg index per party
  double approx_bits;   ///< sum_k ceil(log2 n_k)
  double ratio;         ///< approx_bits / perfect_bits
  std::uint64_t n_per_channel;
};

/// Secret-bit accounting only; no matrices are built, so d may be large.
KeyCostReport key_cost(const ProtocolConfig& config);

/// charlie_encode for m >= 3 receivers under the desk-scale guard
/// m log2 d <= 10.
AqssSession multiparty_session(const ProtocolConfig& config,
                               const DensityMatrix& plaintext, RngStream& rng);
AqssSession multiparty_session(const ProtocolConfig& config,
                               ChannelFamily channels,
                               const DensityMatrix& plaintext, RngStream& rng);

}  // namespace aqss
