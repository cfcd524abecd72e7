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

#include "aqss/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace aqss {

namespace {

void require_keys_in_range(const ChannelFamily& channels,
                           std::span<const std::size_t> keys) {
  if (keys.size() != channels.size()) {
    throw KeyError("expected " + std::to_string(channels.size()) +
                   " key indices, got " + std::to_string(keys.size()));
  }
  for (std::size_t k = 0; k < keys.size(); ++k) {
    channels.part(k).unitary(keys[k]);  // throws KeyError when out of range
  }
}

void require_plaintext_fits(const ChannelFamily& channels,
                            const DensityMatrix& plaintext) {
  if (channels.total_dim() != plaintext.dim()) {
    throw DimensionError("plaintext has dimension " +
                         std::to_string(plaintext.dim()) +
                         " but the channels act on dimension " +
                         std::to_string(channels.total_dim()));
  }
}

void require_resource_guard(const ProtocolConfig& config) {
  if (config.joint_dim() > kMaxJointDim) {
    throw ResourceLimitError(
        "joint dimension d^m = " + std::to_string(config.d) + "^" +
        std::to_string(config.parties) + " exceeds the limit " +
        std::to_string(kMaxJointDim));
  }
}

// Conjugates the listed subsystems by their keyed unitaries (or the adjoints).
ComplexMatrix conjugate_layers(const ChannelFamily& channels,
                               std::span<const std::size_t> keys,
                               std::span<const int> which, bool inverse,
                               ComplexMatrix m) {
  const auto dims = channels.dims();
  for (int k : which) {
    const auto& u = channels.part(k).unitary(keys[k]).matrix();
    m = inverse ? conjugate_subsystem(m, u.adjoint(), dims, k)
                : conjugate_subsystem(m, u, dims, k);
  }
  return m;
}

std::vector<int> all_parties(std::size_t m) {
  std::vector<int> parties(m);
  for (std::size_t k = 0; k < m; ++k) {
    parties[k] = static_cast<int>(k);
  }
  return parties;
}

ChannelFamily sample_family(const ProtocolConfig& config, RngStream& rng) {
  std::vector<RandomUnitaryChannel> parts;
  parts.reserve(config.parties);
  for (int k = 0; k < config.parties; ++k) {
    parts.push_back(sample_ruc(config.d, config.channel_size(), rng));
  }
  return ChannelFamily(std::move(parts));
}

void require_multiparty(const ProtocolConfig& config) {
  if (config.parties < 3) {
    throw ParameterError("multiparty_session requires at least 3 receivers");
  }
  const double qubits = config.parties * std::log2(static_cast<double>(config.d));
  if (qubits > 10.0 + 1e-12) {
    throw ResourceLimitError("multiparty_session: m log2 d = " +
                             std::to_string(qubits) + " exceeds 10");
  }
}

}  // namespace

void ProtocolConfig::validate() const {
  if (d < 2) {
    throw ParameterError("d must be >= 2, got " + std::to_string(d));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ParameterError("epsilon must lie in (0, 1), got " +
                         std::to_string(epsilon));
  }
  if (parties < 2) {
    throw ParameterError("at least 2 receivers are required, got " +
                         std::to_string(parties));
  }
  if (n_per_channel && *n_per_channel < 1) {
    throw ParameterError("channel size must be >= 1");
  }
}

std::uint64_t ProtocolConfig::channel_size() const {
  return n_per_channel ? *n_per_channel : required_n(d, epsilon);
}

std::uint64_t ProtocolConfig::joint_dim() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (int k = 0; k < parties; ++k) {
    if (total > kMax / static_cast<std::uint64_t>(d)) {
      return kMax;
    }
    total *= static_cast<std::uint64_t>(d);
  }
  return total;
}

AqssSession::AqssSession(ProtocolConfig config, ChannelFamily channels,
                         DensityMatrix plaintext,
                         std::vector<std::size_t> key_indices)
    : config_(std::move(config)),
      channels_(std::move(channels)),
      plaintext_(std::move(plaintext)),
      key_indices_(std::move(key_indices)),
      ciphertext_(plaintext_) {
  config_.validate();
  require_resource_guard(config_);
  if (static_cast<int>(channels_.size()) != config_.parties) {
    throw DimensionError("session has " + std::to_string(channels_.size()) +
                         " channels for " + std::to_string(config_.parties) +
                         " receivers");
  }
  for (const auto& part : channels_.parts()) {
    if (part.dim() != config_.d) {
      throw DimensionError("channel dimension differs from the configured d");
    }
  }
  require_plaintext_fits(channels_, plaintext_);
  ciphertext_ = encode_product(channels_, key_indices_, plaintext_);
}

DensityMatrix encode_product(const ChannelFamily& channels,
                             std::span<const std::size_t> keys,
                             const DensityMatrix& plaintext) {
  require_plaintext_fits(channels, plaintext);
  require_keys_in_range(channels, keys);
  return DensityMatrix::symmetrized(conjugate_layers(
      channels, keys, all_parties(channels.size()), false, plaintext.matrix()));
}

AqssSession charlie_encode(const ProtocolConfig& config,
                           const DensityMatrix& plaintext, RngStream& rng) {
  config.validate();
  require_resource_guard(config);
  auto channels = sample_family(config, rng);
  return charlie_encode(config, std::move(channels), plaintext, rng);
}

AqssSession charlie_encode(const ProtocolConfig& config, ChannelFamily channels,
                           const DensityMatrix& plaintext, RngStream& rng) {
  config.validate();
  require_resource_guard(config);
  require_plaintext_fits(channels, plaintext);
  std::vector<std::size_t> keys;
  keys.reserve(channels.size());
  for (const auto& part : channels.parts()) {
    keys.push_back(static_cast<std::size_t>(rng.uniform_index(part.size())));
  }
  return AqssSession(config, std::move(channels), plaintext, std::move(keys));
}

DensityMatrix cooperate_decode(const AqssSession& session) {
  PresentedKeys keys(session.key_indices().begin(), session.key_indices().end());
  return cooperate_decode(session, keys);
}

DensityMatrix cooperate_decode(const AqssSession& session,
                               const PresentedKeys& keys) {
  const auto& channels = session.channels();
  if (keys.size() != channels.size()) {
    throw KeyError("decode needs one key slot per receiver");
  }
  std::vector<std::size_t> resolved;
  resolved.reserve(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (!keys[k]) {
      throw KeyError("receiver " + std::to_string(k) +
                     " did not present a key; decoding requires every "
                     "receiver in one place");
    }
    resolved.push_back(*keys[k]);
  }
  require_keys_in_range(channels, resolved);
  // Undo in reverse order; the layers commute, but this mirrors encoding.
  auto order = all_parties(channels.size());
  std::reverse(order.begin(), order.end());
  return DensityMatrix::symmetrized(conjugate_layers(
      channels, resolved, order, true, session.ciphertext().matrix()));
}

DensityMatrix exterior_adversary_view(const ChannelFamily& channels,
                                      const DensityMatrix& plaintext) {
  require_plaintext_fits(channels, plaintext);
  return apply_product(channels, plaintext);
}

DensityMatrix exterior_adversary_view(const AqssSession& session) {
  return exterior_adversary_view(session.channels(), session.plaintext());
}

InteriorAttackResult interior_attack_bob(const AqssSession& session) {
  if (session.parties() != 2) {
    throw ParameterError("interior_attack_bob is defined for two receivers, got " +
                         std::to_string(session.parties()));
  }
  const int bob[] = {1};
  auto result = collusion_attack(session, bob);
  return {std::move(result.joint), std::move(result.outsider_marginal)};
}

CollusionResult collusion_attack(const AqssSession& session,
                                 std::span<const int> colluders) {
  const auto m = session.channels().size();
  std::vector<bool> in_coalition(m, false);
  for (int k : colluders) {
    if (k < 0 || static_cast<std::size_t>(k) >= m || in_coalition[k]) {
      throw ParameterError("collusion_attack: invalid or repeated receiver index");
    }
    in_coalition[k] = true;
  }
  CollusionResult out{.colluders = {},
                      .outsiders = {},
                      .joint = session.plaintext(),
                      .outsider_marginal = session.plaintext()};
  for (std::size_t k = 0; k < m; ++k) {
    (in_coalition[k] ? out.colluders : out.outsiders).push_back(static_cast<int>(k));
  }
  if (out.colluders.empty() || out.outsiders.empty()) {
    throw ParameterError(
        "collusion_attack: the coalition must be a strict, non-empty subset");
  }

  const auto& channels = session.channels();
  const auto& keys = session.key_indices();
  const auto dims = channels.dims();

  // The coalition's unitaries act on subsystems disjoint from the outsiders',
  // so undoing them commutes with the outsiders' layers: strip them first,
  // then average the remaining layers over the outsiders' unknown keys.
  ComplexMatrix stripped = conjugate_layers(channels, keys, out.colluders, false,
                                            session.plaintext().matrix());
  stripped = conjugate_layers(channels, keys, out.colluders, true, stripped);
  DensityMatrix joint = DensityMatrix::symmetrized(stripped);
  for (int k : out.outsiders) {
    joint = apply_to_subsystem(channels.part(k), joint, dims, k);
  }
  out.outsider_marginal = partial_trace(joint, dims, out.outsiders);
  out.joint = std::move(joint);
  return out;
}

KeyCostReport key_cost(const ProtocolConfig& config) {
  config.validate();
  const double log2_d = std::log2(static_cast<double>(config.d));
  const std::uint64_t n = config.channel_size();
  // ceil(log2 n) computed exactly on the integer.
  const auto bits_per_party = static_cast<double>(std::bit_width(n - 1));
  KeyCostReport report{};
  report.perfect_bits = 2.0 * config.parties * log2_d;
  report.approx_bits = config.parties * bits_per_party;
  report.ratio = report.approx_bits / report.perfect_bits;
  report.n_per_channel = n;
  return report;
}

AqssSession multiparty_session(const ProtocolConfig& config,
                               const DensityMatrix& plaintext, RngStream& rng) {
  config.validate();
  require_multiparty(config);
  return charlie_encode(config, plaintext, rng);
}

AqssSession multiparty_session(const ProtocolConfig& config,
                               ChannelFamily channels,
                               const DensityMatrix& plaintext, RngStream& rng) {
  config.validate();
  require_multiparty(config);
  return charlie_encode(config, std::move(channels), plaintext, rng);
}

}  // namespace aqss
