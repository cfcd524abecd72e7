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
#include <string_view>
#include <vector>

#include "aqss/channels.hpp"
#include "aqss/parallel.hpp"

namespace aqss {

/// Aggregate of independent Monte Carlo trials, reduced in trial order.
struct McStats {
  double mean = 0.0;
  double std_error = 0.0;  ///< sample standard deviation / sqrt(trials)
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<double> per_trial_values;

  static McStats from_values(std::vector<double> values, std::uint64_t seed);
};

/// observed <= bound, with satisfied = observed <= bound + 1e-12.
struct BoundCheck {
  double observed = 0.0;
  double bound = 0.0;
  bool satisfied = false;
  double slack = 0.0;  ///< bound - observed

  static BoundCheck make(double observed, double bound);
};

enum class InputFamily { ProductPure, Separable, MaxEntangled };

/// "product-pure", "separable", "max-entangled".
std::string_view to_string(InputFamily family);
/// Throws ParameterError on an unknown name.
InputFamily parse_input_family(std::string_view name);

/// Where the channels of each trial come from.
enum class ChannelSource { Haar, PerfectPqc };

struct McOptions {
  ChannelSource source = ChannelSource::Haar;
  unsigned threads = default_thread_count();
};

struct McBoundResult {
  McStats stats;
  BoundCheck check;
  /// Whether `check` is a claim (product pure inputs) or only reported.
  bool asserted = false;
};

/// sqrt(d^2 / (n_A n_B)).
double expected_distance_bound(int d, std::uint64_t n_a, std::uint64_t n_b);

/// Trace distance of (N_A (x) N_B)(phi) to 1/d^2 with fresh channels and a
/// fresh input each trial. The bound d / sqrt(n_A n_B) is asserted for product
/// pure inputs only. Requires trials >= 10.
McBoundResult mc_expected_trace_distance(int d, std::uint64_t n_a,
                                         std::uint64_t n_b, InputFamily family,
                                         std::size_t trials, std::uint64_t seed,
                                         const McOptions& options = {});

/// 1/(n_A n_B) + 1/d^2, the closed form the purity check compares against.
double purity_identity_value(int d, std::uint64_t n_a, std::uint64_t n_b);

/// E tr[(N_A (x) N_B)(phi)]^2 over Haar channels for a product pure phi,
/// keeping the terms where exactly one of the two channel indices coincides:
/// (1 + (n_A - 1)/d)(1 + (n_B - 1)/d) / (n_A n_B).
double haar_purity_exact(int d, std::uint64_t n_a, std::uint64_t n_b);

struct McPurityResult {
  McStats stats;
  /// |mean - purity_identity_value| against 5 standard errors.
  BoundCheck identity_check;
  /// |mean - haar_purity_exact| against 5 standard errors.
  BoundCheck exact_check;
};

/// Purity of the product-channel output on product pure inputs. Requires
/// trials >= 30.
McPurityResult mc_purity(int d, std::uint64_t n_a, std::uint64_t n_b,
                         std::size_t trials, std::uint64_t seed,
                         const McOptions& options = {});

struct SeparableBoundResult {
  BoundCheck check;  ///< observed = product-channel distance, bound = eps_A + eps_B
  double epsilon_a;
  double epsilon_b;
};

/// Convexity plus triangle inequality: the product-channel output of a
/// separable state is within eps_A + eps_B of 1/(d_A d_B), where eps_X is the
/// worst single-channel distance over the decomposition's factors.
SeparableBoundResult check_separable_2eps(const RandomUnitaryChannel& chan_a,
                                          const RandomUnitaryChannel& chan_b,
                                          const SeparableDecomposition& decomposition);

/// log2_total_dim - S(state), in bits.
double entropy_deficit(const DensityMatrix& state, double log2_total_dim);

/// Total variation sum_{ab} |p_ab - q_ab| for the product projective
/// measurement in the columns of basis_a (x) basis_b.
double locc_distinguishability_for_setting(const DensityMatrix& state,
                                           const DensityMatrix& reference,
                                           int dim_a, int dim_b,
                                           const ComplexMatrix& basis_a,
                                           const ComplexMatrix& basis_b);

/// Maximum of the above over num_settings pairs of independent Haar local
/// bases; setting s uses RngStream(seed, s).
double locc_distinguishability(const DensityMatrix& state,
                               const DensityMatrix& reference, int dim_a,
                               int dim_b, std::size_t num_settings,
                               std::uint64_t seed);

/// ||X - 1/D||_1^2 <= D ||X||_2^2 - 1 for Hermitian, unit-trace X of dimension
/// D. Throws ParameterError for non-unit trace and DimensionError when X is
/// not D x D.
BoundCheck check_norm_relation(const ComplexMatrix& x, int total_dim);

/// mean(values) <= sqrt(mean(values^2)).
BoundCheck jensen_chain_check(const McStats& stats);

}  // namespace aqss
