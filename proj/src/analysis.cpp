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

#include "aqss/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace aqss {

namespace {

constexpr double kBoundTolerance = 1e-12;
constexpr double kStandardErrors = 5.0;
constexpr int kSeparableTerms = 4;

struct TrialChannels {
  RandomUnitaryChannel a;
  RandomUnitaryChannel b;
};

TrialChannels draw_channels(int d, std::uint64_t n_a, std::uint64_t n_b,
                            ChannelSource source, RngStream& rng) {
  if (source == ChannelSource::PerfectPqc) {
    return {perfect_pqc(d), perfect_pqc(d)};
  }
  auto a = sample_ruc(d, n_a, rng);
  auto b = sample_ruc(d, n_b, rng);
  return {std::move(a), std::move(b)};
}

DensityMatrix draw_input(int d, InputFamily family, RngStream& rng) {
  switch (family) {
    case InputFamily::ProductPure:
      return random_product_pure_state(d, d, rng);
    case InputFamily::Separable:
      return random_separable_state(d, d, kSeparableTerms, rng);
    case InputFamily::MaxEntangled:
      return maximally_entangled_state(d);
  }
  throw ParameterError("unknown input family");
}

// Effective channel sizes, d^2 for the Weyl-Heisenberg channel.
std::pair<std::uint64_t, std::uint64_t> effective_sizes(int d, std::uint64_t n_a,
                                                        std::uint64_t n_b,
                                                        ChannelSource source) {
  if (source == ChannelSource::PerfectPqc) {
    const auto n = static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d);
    return {n, n};
  }
  return {n_a, n_b};
}

void require_mc_params(int d, std::uint64_t n_a, std::uint64_t n_b,
                       std::size_t trials, std::size_t min_trials,
                       const char* context) {
  if (d < 2) {
    throw ParameterError(std::string(context) + ": d must be >= 2");
  }
  if (n_a < 1 || n_b < 1) {
    throw ParameterError(std::string(context) + ": channel sizes must be >= 1");
  }
  if (trials < min_trials) {
    throw ParameterError(std::string(context) + ": needs at least " +
                         std::to_string(min_trials) + " trials");
  }
}

// Runs one value per trial with RngStream(seed, t) and reduces in order.
template <typename Trial>
McStats run_trials(std::size_t trials, std::uint64_t seed, unsigned threads,
                   Trial&& trial) {
  std::vector<double> values(trials, 0.0);
  parallel_for(trials, threads, [&](std::size_t t) {
    RngStream rng(seed, t);
    values[t] = trial(rng);
  });
  return McStats::from_values(std::move(values), seed);
}

}  // namespace

McStats McStats::from_values(std::vector<double> values, std::uint64_t seed) {
  McStats stats;
  stats.trials = values.size();
  stats.master_seed = seed;
  if (values.empty()) {
    stats.per_trial_values = std::move(values);
    return stats;
  }
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  stats.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) {
      ss += (v - stats.mean) * (v - stats.mean);
    }
    const double variance = ss / static_cast<double>(values.size() - 1);
    stats.std_error = std::sqrt(variance / static_cast<double>(values.size()));
  }
  stats.per_trial_values = std::move(values);
  return stats;
}

BoundCheck BoundCheck::make(double observed, double bound) {
  return {.observed = observed,
          .bound = bound,
          .satisfied = observed <= bound + kBoundTolerance,
          .slack = bound - observed};
}

std::string_view to_string(InputFamily family) {
  switch (family) {
    case InputFamily::ProductPure:
      return "product-pure";
    case InputFamily::Separable:
      return "separable";
    case InputFamily::MaxEntangled:
      return "max-entangled";
  }
  return "unknown";
}

InputFamily parse_input_family(std::string_view name) {
  if (name == "product-pure" || name == "product_pure") {
    return InputFamily::ProductPure;
  }
  if (name == "separable") {
    return InputFamily::Separable;
  }
  if (name == "max-entangled" || name == "max_entangled") {
    return InputFamily::MaxEntangled;
  }
  throw ParameterError("unknown input family '" + std::string(name) +
                       "' (expected product-pure, separable or max-entangled)");
}

double expected_distance_bound(int d, std::uint64_t n_a, std::uint64_t n_b) {
  const double dd = static_cast<double>(d);
  return std::sqrt(dd * dd /
                   (static_cast<double>(n_a) * static_cast<double>(n_b)));
}

McBoundResult mc_expected_trace_distance(int d, std::uint64_t n_a,
                                         std::uint64_t n_b, InputFamily family,
                                         std::size_t trials, std::uint64_t seed,
                                         const McOptions& options) {
  require_mc_params(d, n_a, n_b, trials, 10, "mc_expected_trace_distance");
  const auto target = maximally_mixed(d * d);
  auto stats = run_trials(trials, seed, options.threads, [&](RngStream& rng) {
    const auto channels = draw_channels(d, n_a, n_b, options.source, rng);
    const auto input = draw_input(d, family, rng);
    const ChannelFamily product({channels.a, channels.b});
    return trace_distance(apply_product(product, input), target);
  });
  const auto [eff_a, eff_b] = effective_sizes(d, n_a, n_b, options.source);
  McBoundResult result;
  result.check = BoundCheck::make(stats.mean, expected_distance_bound(d, eff_a, eff_b));
  result.stats = std::move(stats);
  result.asserted = family == InputFamily::ProductPure;
  return result;
}

double purity_identity_value(int d, std::uint64_t n_a, std::uint64_t n_b) {
  const double dd = static_cast<double>(d);
  return 1.0 / (static_cast<double>(n_a) * static_cast<double>(n_b)) +
         1.0 / (dd * dd);
}

double haar_purity_exact(int d, std::uint64_t n_a, std::uint64_t n_b) {
  const double dd = static_cast<double>(d);
  const double na = static_cast<double>(n_a);
  const double nb = static_cast<double>(n_b);
  return (1.0 + (na - 1.0) / dd) * (1.0 + (nb - 1.0) / dd) / (na * nb);
}

McPurityResult mc_purity(int d, std::uint64_t n_a, std::uint64_t n_b,
                         std::size_t trials, std::uint64_t seed,
                         const McOptions& options) {
  require_mc_params(d, n_a, n_b, trials, 30, "mc_purity");
  auto stats = run_trials(trials, seed, options.threads, [&](RngStream& rng) {
    const auto channels = draw_channels(d, n_a, n_b, options.source, rng);
    const auto input = random_product_pure_state(d, d, rng);
    const ChannelFamily product({channels.a, channels.b});
    return purity(apply_product(product, input));
  });
  const auto [eff_a, eff_b] = effective_sizes(d, n_a, n_b, options.source);
  const double tolerance = kStandardErrors * stats.std_error;
  McPurityResult result{
      .stats = {},
      .identity_check = BoundCheck::make(
          std::abs(stats.mean - purity_identity_value(d, eff_a, eff_b)), tolerance),
      .exact_check = BoundCheck::make(
          std::abs(stats.mean - haar_purity_exact(d, eff_a, eff_b)), tolerance)};
  result.stats = std::move(stats);
  return result;
}

SeparableBoundResult check_separable_2eps(const RandomUnitaryChannel& chan_a,
                                          const RandomUnitaryChannel& chan_b,
                                          const SeparableDecomposition& decomposition) {
  decomposition.validate();
  if (decomposition.a_states.front().dim() != chan_a.dim() ||
      decomposition.b_states.front().dim() != chan_b.dim()) {
    throw DimensionError("check_separable_2eps: decomposition does not match channels");
  }
  double eps_a = 0.0;
  double eps_b = 0.0;
  for (std::size_t i = 0; i < decomposition.weights.size(); ++i) {
    eps_a = std::max(eps_a,
                     epsilon_randomizing_distance(chan_a, decomposition.a_states[i]));
    eps_b = std::max(eps_b,
                     epsilon_randomizing_distance(chan_b, decomposition.b_states[i]));
  }
  const ChannelFamily product({chan_a, chan_b});
  const auto output = apply_product(product, decomposition.compose());
  const double observed =
      trace_distance(output, maximally_mixed(chan_a.dim() * chan_b.dim()));
  return {BoundCheck::make(observed, eps_a + eps_b), eps_a, eps_b};
}

double entropy_deficit(const DensityMatrix& state, double log2_total_dim) {
  return log2_total_dim - von_neumann_entropy(state);
}

double locc_distinguishability_for_setting(const DensityMatrix& state,
                                           const DensityMatrix& reference,
                                           int dim_a, int dim_b,
                                           const ComplexMatrix& basis_a,
                                           const ComplexMatrix& basis_b) {
  if (state.dim() != reference.dim() || state.dim() != dim_a * dim_b) {
    throw DimensionError("locc_distinguishability: state dimensions do not match");
  }
  if (basis_a.rows() != dim_a || basis_a.cols() != dim_a ||
      basis_b.rows() != dim_b || basis_b.cols() != dim_b) {
    throw DimensionError("locc_distinguishability: basis dimensions do not match");
  }
  const ComplexMatrix w = tensor_product(basis_a, basis_b);
  const Eigen::VectorXd p = (w.adjoint() * state.matrix() * w).diagonal().real();
  const Eigen::VectorXd q = (w.adjoint() * reference.matrix() * w).diagonal().real();
  return (p - q).cwiseAbs().sum();
}

double locc_distinguishability(const DensityMatrix& state,
                               const DensityMatrix& reference, int dim_a,
                               int dim_b, std::size_t num_settings,
                               std::uint64_t seed) {
  if (num_settings < 1) {
    throw ParameterError("locc_distinguishability: needs at least one setting");
  }
  double worst = 0.0;
  for (std::size_t s = 0; s < num_settings; ++s) {
    RngStream rng(seed, s);
    const auto basis_a = haar_unitary(dim_a, rng);
    const auto basis_b = haar_unitary(dim_b, rng);
    worst = std::max(worst, locc_distinguishability_for_setting(
                                state, reference, dim_a, dim_b,
                                basis_a.matrix(), basis_b.matrix()));
  }
  return worst;
}

BoundCheck check_norm_relation(const ComplexMatrix& x, int total_dim) {
  if (x.rows() != total_dim || x.cols() != total_dim || total_dim < 1) {
    throw DimensionError("check_norm_relation: matrix is not total_dim x total_dim");
  }
  if (hermiticity_defect(x) > kInvariantTolerance) {
    throw ParameterError("check_norm_relation: matrix is not Hermitian");
  }
  const double trace = x.trace().real();
  if (std::abs(trace - 1.0) > kInvariantTolerance) {
    throw ParameterError("check_norm_relation: requires unit trace, got " +
                         std::to_string(trace));
  }
  const double dim = static_cast<double>(total_dim);
  const ComplexMatrix centered =
      x - ComplexMatrix::Identity(total_dim, total_dim) / dim;
  const double left = std::pow(trace_norm(centered), 2);
  const double right = dim * std::pow(hs_norm(x), 2) - 1.0;
  return BoundCheck::make(left, right);
}

BoundCheck jensen_chain_check(const McStats& stats) {
  if (stats.per_trial_values.empty()) {
    throw ParameterError("jensen_chain_check: no per-trial values");
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : stats.per_trial_values) {
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(stats.per_trial_values.size());
  return BoundCheck::make(sum / n, std::sqrt(sum_sq / n));
}

}  // namespace aqss
