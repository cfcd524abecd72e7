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

#include <stdexcept>
#include <vector>

#include "cli/record.hpp"

namespace aqss::cli {

/// Upper limit on channel size for commands that build matrices.
inline constexpr std::uint64_t kMaxChannelSize = 100'000;

/// Bad flag combination or out-of-range parameter; exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exit status contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitBoundViolated = 1,
  kExitUsage = 2,
  kExitResourceGuard = 3,
};

/// A grid of configurations: every combination of the listed values, in the
/// order d, epsilon, n, trials (d varies slowest). Empty lists fall back to
/// the base value.
struct ExperimentGrid {
  ExperimentConfig base;
  std::vector<int> ds;
  std::vector<double> epsilons;
  std::vector<std::uint64_t> ns;
  std::vector<std::size_t> trials;

  std::vector<ExperimentConfig> expand() const;
};

/// Channel size the command will use: --n, else d^2 with --perfect, else
/// required_n(d, epsilon).
std::uint64_t resolved_channel_size(const ExperimentConfig& config);

/// Throws UsageError for invalid parameters or combinations and
/// ResourceLimitError when a guard (d^m <= 1024, n <= 1e5) is exceeded, naming
/// the limiting parameter. Runs before any computation.
void validate(const ExperimentConfig& config);

/// Validates, dispatches to the command and measures wall time.
ResultRecord run(const ExperimentConfig& config, unsigned threads = default_thread_count());

/// Validates every grid point first, then runs them in order.
std::vector<ResultRecord> sweep(const ExperimentGrid& grid,
                                unsigned threads = default_thread_count());

}  // namespace aqss::cli
