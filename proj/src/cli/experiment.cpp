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

#include "cli/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "aqss/protocol.hpp"

namespace aqss::cli {

namespace {

constexpr double kExactTolerance = 1e-10;
constexpr double kEntryTolerance = 1e-12;
constexpr int kSeparableTerms = 4;

// Stream ids within one run: channels and keys, then the plaintext, then any
// further test states.
constexpr std::uint64_t kChannelStream = 0;
constexpr std::uint64_t kPlaintextStream = 1;

Metric reported(std::string name, double value) {
  return Metric{.name = std::move(name),
                .value = value,
                .bound = std::nullopt,
                .satisfied = std::nullopt,
                .asserted = false};
}

Metric checked(std::string name, const BoundCheck& check, bool asserted = true) {
  return Metric{.name = std::move(name),
                .value = check.observed,
                .bound = check.bound,
                .satisfied = check.satisfied,
                .asserted = asserted};
}

std::uint64_t saturating_pow(std::uint64_t base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > kMaxJointDim * 1024) {
      return out;
    }
    out *= base;
  }
  return out;
}

int matrix_parties(const ExperimentConfig& c) {
  switch (c.command) {
    case Command::Randomize:
      return 1;
    case Command::Multiparty:
      return c.m;
    case Command::KeyCost:
      return 0;
    default:
      return 2;
  }
}

DensityMatrix bipartite_plaintext(int d, InputFamily family, RngStream& rng) {
  switch (family) {
    case InputFamily::ProductPure:
      return random_product_pure_state(d, d, rng);
    case InputFamily::Separable:
      return random_separable_state(d, d, kSeparableTerms, rng);
    case InputFamily::MaxEntangled:
      return maximally_entangled_state(d);
  }
  throw UsageError("unknown input family");
}

ChannelFamily perfect_family(int d, int parties) {
  std::vector<RandomUnitaryChannel> parts;
  for (int k = 0; k < parties; ++k) {
    parts.push_back(perfect_pqc(d));
  }
  return ChannelFamily(std::move(parts));
}

ProtocolConfig protocol_config(const ExperimentConfig& c, int parties) {
  return ProtocolConfig{.d = c.d,
                        .epsilon = c.epsilon,
                        .parties = parties,
                        .n_per_channel = resolved_channel_size(c)};
}

AqssSession open_session(const ExperimentConfig& c, int parties,
                         const DensityMatrix& plaintext) {
  RngStream rng(c.seed, kChannelStream);
  const auto pc = protocol_config(c, parties);
  if (c.perfect) {
    return charlie_encode(pc, perfect_family(c.d, parties), plaintext, rng);
  }
  return charlie_encode(pc, plaintext, rng);
}

void run_randomize(const ExperimentConfig& c, ResultRecord& r) {
  RngStream channel_rng(c.seed, kChannelStream);
  const auto channel =
      c.perfect ? perfect_pqc(c.d) : sample_ruc(c.d, r.n_a, channel_rng);

  std::vector<DensityMatrix> probes;
  RngStream state_rng(c.seed, kPlaintextStream);
  for (std::size_t t = 0; t < c.trials; ++t) {
    probes.push_back(random_pure_state(c.d, state_rng));
  }
  for (int k = 0; k < c.d; ++k) {
    probes.push_back(basis_state(c.d, k));
  }
  if (static_cast<std::uint64_t>(c.d) * c.d <= kMaxJointDim) {
    probes.push_back(partial_trace(maximally_entangled_state(c.d), c.d, c.d,
                                   Subsystem::A));
  }

  double worst = 0.0;
  double total = 0.0;
  for (const auto& rho : probes) {
    const double dist = epsilon_randomizing_distance(channel, rho);
    worst = std::max(worst, dist);
    total += dist;
  }
  const double bound = c.perfect ? kExactTolerance : c.epsilon;
  r.metrics.push_back(checked("max_randomizing_distance", BoundCheck::make(worst, bound)));
  r.metrics.push_back(
      reported("mean_randomizing_distance", total / static_cast<double>(probes.size())));
  r.metrics.push_back(reported("states_checked", static_cast<double>(probes.size())));
}

void run_aqss_demo(const ExperimentConfig& c, ResultRecord& r) {
  RngStream plain_rng(c.seed, kPlaintextStream);
  const auto plaintext = bipartite_plaintext(c.d, c.family, plain_rng);
  const auto session = open_session(c, 2, plaintext);
  const double log2_total = 2.0 * std::log2(static_cast<double>(c.d));

  const auto decoded = cooperate_decode(session);
  r.metrics.push_back(checked(
      "decode_max_entry_error",
      BoundCheck::make(max_abs(decoded.matrix() - plaintext.matrix()), kEntryTolerance)));
  r.metrics.push_back(checked("decode_distance",
                              BoundCheck::make(trace_distance(decoded, plaintext),
                                               kExactTolerance)));

  PresentedKeys wrong(session.key_indices().begin(), session.key_indices().end());
  wrong[0] = (*wrong[0] + 1) % session.channels().part(0).size();
  r.metrics.push_back(reported("wrong_key_decode_distance",
                               trace_distance(cooperate_decode(session, wrong), plaintext)));

  const auto view = exterior_adversary_view(session);
  const double exterior = trace_distance(view, maximally_mixed(c.d * c.d));
  if (c.perfect) {
    r.metrics.push_back(
        checked("exterior_distance", BoundCheck::make(exterior, kExactTolerance)));
  } else if (c.family != InputFamily::MaxEntangled) {
    r.metrics.push_back(
        checked("exterior_distance", BoundCheck::make(exterior, 2.0 * c.epsilon)));
  } else {
    r.metrics.push_back(reported("exterior_distance", exterior));
  }
  r.metrics.push_back(reported("exterior_entropy_bits", von_neumann_entropy(view)));
  r.metrics.push_back(reported("exterior_entropy_deficit_bits",
                               entropy_deficit(view, log2_total)));

  const auto attack = interior_attack_bob(session);
  const double alice =
      trace_distance(attack.alice_marginal, maximally_mixed(c.d));
  r.metrics.push_back(checked(
      "interior_alice_marginal_distance",
      BoundCheck::make(alice, c.perfect ? kExactTolerance : c.epsilon)));
  const auto bob_side =
      partial_trace(attack.bob_decoded_joint, c.d, c.d, Subsystem::B);
  const auto plain_b = partial_trace(plaintext, c.d, c.d, Subsystem::B);
  r.metrics.push_back(checked("interior_bob_marginal_error",
                              BoundCheck::make(trace_distance(bob_side, plain_b),
                                               kExactTolerance)));
}

void run_bound_sweep(const ExperimentConfig& c, ResultRecord& r, unsigned threads) {
  const McOptions options{
      .source = c.perfect ? ChannelSource::PerfectPqc : ChannelSource::Haar,
      .threads = threads};
  const auto result =
      mc_expected_trace_distance(c.d, r.n_a, r.n_b, c.family, c.trials, c.seed, options);
  r.metrics.push_back(checked("mean_trace_distance", result.check, result.asserted));
  r.metrics.push_back(reported("std_error", result.stats.std_error));
  r.metrics.push_back(reported(
      "max_trace_distance", *std::max_element(result.stats.per_trial_values.begin(),
                                              result.stats.per_trial_values.end())));
  r.metrics.push_back(checked("jensen_chain", jensen_chain_check(result.stats)));
  if (!c.perfect && !c.n_override) {
    // With n = required_n the bound is at most epsilon^2 / 150 < epsilon.
    r.metrics.push_back(checked(
        "bound_at_required_n",
        BoundCheck::make(expected_distance_bound(c.d, r.n_a, r.n_b), c.epsilon)));
  }
}

void run_purity_check(const ExperimentConfig& c, ResultRecord& r, unsigned threads) {
  const McOptions options{
      .source = c.perfect ? ChannelSource::PerfectPqc : ChannelSource::Haar,
      .threads = threads};
  const auto result = mc_purity(c.d, r.n_a, r.n_b, c.trials, c.seed, options);
  r.metrics.push_back(reported("mean_purity", result.stats.mean));
  r.metrics.push_back(reported("std_error", result.stats.std_error));
  r.metrics.push_back(
      reported("identity_value", purity_identity_value(c.d, r.n_a, r.n_b)));
  r.metrics.push_back(checked("identity_deviation", result.identity_check));
  r.metrics.push_back(reported("haar_exact_value", haar_purity_exact(c.d, r.n_a, r.n_b)));
  r.metrics.push_back(checked("haar_exact_deviation", result.exact_check, false));
}

void run_key_cost(const ExperimentConfig& c, ResultRecord& r) {
  const auto report = key_cost(protocol_config(c, c.m));
  r.metrics.push_back(reported("perfect_bits", report.perfect_bits));
  r.metrics.push_back(reported("approx_bits", report.approx_bits));
  r.metrics.push_back(reported("ratio", report.ratio));
  r.metrics.push_back(reported("n_per_channel", static_cast<double>(report.n_per_channel)));
  r.metrics.push_back(reported(
      "perfect_unitaries", std::pow(static_cast<double>(c.d), 2.0 * c.m)));
  r.metrics.push_back(reported(
      "approx_unitaries", std::pow(static_cast<double>(report.n_per_channel), c.m)));
}

void run_locc_test(const ExperimentConfig& c, ResultRecord& r) {
  RngStream plain_rng(c.seed, kPlaintextStream);
  const auto plaintext = bipartite_plaintext(c.d, c.family, plain_rng);
  RngStream channel_rng(c.seed, kChannelStream);
  const ChannelFamily channels =
      c.perfect ? perfect_family(c.d, 2)
                : ChannelFamily({sample_ruc(c.d, r.n_a, channel_rng),
                                 sample_ruc(c.d, r.n_b, channel_rng)});
  const auto view = exterior_adversary_view(channels, plaintext);
  const auto reference = maximally_mixed(c.d * c.d);
  // Measurement settings use their own seed space so they never coincide with
  // the channel or plaintext draws.
  const double locc = locc_distinguishability(view, reference, c.d, c.d, c.trials,
                                              c.seed ^ 0x9e3779b97f4a7c15ULL);
  const double full = trace_distance(view, reference);
  r.metrics.push_back(checked(
      "locc_distance", BoundCheck::make(locc, c.perfect ? kExactTolerance : c.epsilon)));
  r.metrics.push_back(checked("locc_below_trace_distance", BoundCheck::make(locc, full)));
  r.metrics.push_back(reported("settings", static_cast<double>(c.trials)));
}

void run_multiparty(const ExperimentConfig& c, ResultRecord& r) {
  RngStream plain_rng(c.seed, kPlaintextStream);
  const std::vector<int> dims(c.m, c.d);
  const auto plaintext = c.family == InputFamily::MaxEntangled
                             ? ghz_state(c.d, c.m)
                             : random_product_pure_state(dims, plain_rng);
  const auto pc = protocol_config(c, c.m);
  RngStream rng(c.seed, kChannelStream);
  const auto session = c.perfect
                           ? multiparty_session(pc, perfect_family(c.d, c.m), plaintext, rng)
                           : multiparty_session(pc, plaintext, rng);
  const auto total_dim = plaintext.dim();

  const auto decoded = cooperate_decode(session);
  r.metrics.push_back(checked(
      "decode_max_entry_error",
      BoundCheck::make(max_abs(decoded.matrix() - plaintext.matrix()), kEntryTolerance)));
  r.metrics.push_back(checked("decode_distance",
                              BoundCheck::make(trace_distance(decoded, plaintext),
                                               kExactTolerance)));

  const auto view = exterior_adversary_view(session);
  const double exterior = trace_distance(view, maximally_mixed(total_dim));
  if (c.perfect) {
    r.metrics.push_back(
        checked("exterior_distance", BoundCheck::make(exterior, kExactTolerance)));
  } else if (c.family == InputFamily::ProductPure) {
    r.metrics.push_back(checked("exterior_distance",
                                BoundCheck::make(exterior, c.m * c.epsilon)));
  } else {
    r.metrics.push_back(reported("exterior_distance", exterior));
  }
  r.metrics.push_back(reported(
      "exterior_entropy_deficit_bits",
      entropy_deficit(view, std::log2(static_cast<double>(total_dim)))));

  std::vector<int> coalition(c.m - 1);
  for (int k = 0; k < c.m - 1; ++k) {
    coalition[k] = k;
  }
  const auto collusion = collusion_attack(session, coalition);
  const double outsider = trace_distance(
      collusion.outsider_marginal, maximally_mixed(collusion.outsider_marginal.dim()));
  r.metrics.push_back(checked(
      "outsider_marginal_distance",
      BoundCheck::make(outsider, c.perfect ? kExactTolerance : c.epsilon)));
}

}  // namespace

std::vector<ExperimentConfig> ExperimentGrid::expand() const {
  const std::vector<int> d_values = ds.empty() ? std::vector<int>{base.d} : ds;
  const std::vector<double> eps_values =
      epsilons.empty() ? std::vector<double>{base.epsilon} : epsilons;
  std::vector<std::optional<std::uint64_t>> n_values;
  if (ns.empty()) {
    n_values.push_back(base.n_override);
  } else {
    n_values.assign(ns.begin(), ns.end());
  }
  const std::vector<std::size_t> trial_values =
      trials.empty() ? std::vector<std::size_t>{base.trials} : trials;

  std::vector<ExperimentConfig> out;
  for (int d : d_values) {
    for (double eps : eps_values) {
      for (const auto& n : n_values) {
        for (std::size_t t : trial_values) {
          ExperimentConfig c = base;
          c.d = d;
          c.epsilon = eps;
          c.n_override = n;
          c.trials = t;
          out.push_back(c);
        }
      }
    }
  }
  return out;
}

std::uint64_t resolved_channel_size(const ExperimentConfig& config) {
  if (config.n_override) {
    return *config.n_override;
  }
  if (config.perfect) {
    return static_cast<std::uint64_t>(config.d) * static_cast<std::uint64_t>(config.d);
  }
  return required_n(config.d, config.epsilon);
}

void validate(const ExperimentConfig& c) {
  const std::string cmd(to_string(c.command));
  if (c.d < 2) {
    throw UsageError(cmd + ": --d must be >= 2, got " + std::to_string(c.d));
  }
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) {
    throw UsageError(cmd + ": --epsilon must lie in (0, 1), got " +
                     format_double(c.epsilon));
  }
  if (c.n_override && *c.n_override < 1) {
    throw UsageError(cmd + ": --n must be >= 1");
  }
  if (c.perfect && c.n_override) {
    throw UsageError(cmd + ": --perfect fixes n = d^2 and cannot be combined with --n");
  }
  if (c.perfect && c.command == Command::KeyCost) {
    throw UsageError("key-cost: --perfect is not applicable; both schemes are reported");
  }

  switch (c.command) {
    case Command::KeyCost:
      if (c.m < 2) {
        throw UsageError("key-cost: --m must be >= 2");
      }
      break;
    case Command::Multiparty:
      if (c.m < 3) {
        throw UsageError("multiparty: --m must be >= 3 (use aqss-demo for two receivers)");
      }
      if (c.family == InputFamily::Separable) {
        throw UsageError(
            "multiparty: --family must be product-pure or max-entangled");
      }
      break;
    default:
      if (c.m != 2) {
        throw UsageError(cmd + ": --m applies only to key-cost and multiparty");
      }
  }

  switch (c.command) {
    case Command::BoundSweep:
      if (c.trials < 10) {
        throw UsageError("bound-sweep: --trials must be >= 10");
      }
      break;
    case Command::PurityCheck:
      if (c.trials < 30) {
        throw UsageError("purity-check: --trials must be >= 30");
      }
      if (c.family != InputFamily::ProductPure) {
        throw UsageError("purity-check: only --family product-pure is supported");
      }
      break;
    default:
      if (c.trials < 1) {
        throw UsageError(cmd + ": --trials must be >= 1");
      }
  }

  std::uint64_t n = 0;
  try {
    n = resolved_channel_size(c);
  } catch (const ParameterError& e) {
    throw UsageError(cmd + ": " + e.what());
  }

  const int parties = matrix_parties(c);
  if (parties == 0) {
    return;  // accounting only
  }
  const std::uint64_t joint = saturating_pow(static_cast<std::uint64_t>(c.d), parties);
  if (joint > kMaxJointDim) {
    throw ResourceLimitError(
        cmd + ": refusing joint dimension d^m = " + std::to_string(c.d) + "^" +
        std::to_string(parties) + " > " + std::to_string(kMaxJointDim) +
        " (limiting parameter: " + (parties > 2 ? "--m/--d" : "--d") + ")");
  }
  if (n > kMaxChannelSize) {
    throw ResourceLimitError(
        cmd + ": refusing channel size n = " + std::to_string(n) + " > " +
        std::to_string(kMaxChannelSize) + " (limiting parameter: " +
        (c.n_override ? "--n" : "--epsilon/--d via n = ceil(150 d / epsilon^2)") + ")");
  }
}

ResultRecord run(const ExperimentConfig& config, unsigned threads) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();

  ResultRecord r;
  r.command = std::string(to_string(config.command));
  r.config = config;
  r.seed = config.seed;
  r.n_a = r.n_b = resolved_channel_size(config);

  switch (config.command) {
    case Command::Randomize:
      run_randomize(config, r);
      break;
    case Command::AqssDemo:
      run_aqss_demo(config, r);
      break;
    case Command::BoundSweep:
      run_bound_sweep(config, r, threads);
      break;
    case Command::PurityCheck:
      run_purity_check(config, r, threads);
      break;
    case Command::KeyCost:
      run_key_cost(config, r);
      break;
    case Command::LoccTest:
      run_locc_test(config, r);
      break;
    case Command::Multiparty:
      run_multiparty(config, r);
      break;
  }

  const auto elapsed = std::chrono::steady_clock::now() - start;
  r.wall_time_ms = std::chrono::duration<double, std::milli>(elapsed).count();
  return r;
}

std::vector<ResultRecord> sweep(const ExperimentGrid& grid, unsigned threads) {
  const auto configs = grid.expand();
  for (const auto& c : configs) {
    validate(c);
  }
  std::vector<ResultRecord> out;
  out.reserve(configs.size());
  for (const auto& c : configs) {
    out.push_back(run(c, threads));
  }
  return out;
}

}  // namespace aqss::cli
