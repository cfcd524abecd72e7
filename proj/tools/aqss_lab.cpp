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

// Batch experiment runner for approximate quantum state sharing.
//
//   aqss_lab <command> --seed <u64> [options]
//
// Exit status: 0 when every asserted bound holds, 1 when one fails, 2 for
// usage errors, 3 when a resource guard refuses the request.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/experiment.hpp"

namespace {

using aqss::cli::Command;
using aqss::cli::ExperimentConfig;
using aqss::cli::ExperimentGrid;

struct RawOptions {
  std::vector<int> d;
  std::string d_log2;
  std::vector<double> epsilon;
  std::vector<std::uint64_t> n;
  std::vector<std::size_t> trials;
  std::string family = "product-pure";
  int m = 0;
  std::uint64_t seed = 0;
  bool perfect = false;
  std::string format = "json";
  std::string output;
  unsigned threads = aqss::default_thread_count();
};

void add_common_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--d", raw.d, "Qudit dimension per receiver (comma list for a sweep)")
      ->delimiter(',');
  sub->add_option("--d-log2", raw.d_log2,
                  "Sweep d = 2^k for k in LO:HI (inclusive), e.g. 1:30");
  sub->add_option("--epsilon", raw.epsilon, "Security parameter in (0, 1); default 0.5")
      ->delimiter(',');
  sub->add_option("--n", raw.n, "Channel size per receiver; default ceil(150 d / eps^2)")
      ->delimiter(',');
  sub->add_option("--trials", raw.trials, "Trials / sampled states / settings; default 100")
      ->delimiter(',');
  sub->add_option("--family", raw.family,
                  "Input family: product-pure, separable, max-entangled");
  sub->add_option("--m", raw.m, "Number of receivers");
  sub->add_option("--seed", raw.seed, "Master seed (required)")->required();
  sub->add_flag("--perfect", raw.perfect,
                "Use the exact Weyl-Heisenberg channel instead of Haar sampling");
  sub->add_option("--format", raw.format, "Output format: json (default) or csv");
  sub->add_option("--output", raw.output, "Write output here instead of stdout");
  sub->add_option("--threads", raw.threads, "Worker threads for Monte Carlo trials")
      ->check(CLI::PositiveNumber);
}

std::vector<int> parse_log2_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw aqss::cli::UsageError("--d-log2 expects LO:HI, got '" + text + "'");
  }
  int lo = 0;
  int hi = 0;
  try {
    lo = std::stoi(text.substr(0, colon));
    hi = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw aqss::cli::UsageError("--d-log2 expects integers LO:HI, got '" + text + "'");
  }
  if (lo < 1 || hi < lo || hi > 30) {
    throw aqss::cli::UsageError("--d-log2 range must satisfy 1 <= LO <= HI <= 30");
  }
  std::vector<int> ds;
  for (int k = lo; k <= hi; ++k) {
    ds.push_back(1 << k);
  }
  return ds;
}

ExperimentGrid build_grid(Command command, const RawOptions& raw) {
  ExperimentGrid grid;
  auto& base = grid.base;
  base.command = command;
  base.seed = raw.seed;
  base.perfect = raw.perfect;
  base.m = raw.m > 0 ? raw.m : (command == Command::Multiparty ? 3 : 2);
  try {
    base.family = aqss::parse_input_family(raw.family);
    base.format = aqss::cli::parse_output_format(raw.format);
  } catch (const aqss::ParameterError& e) {
    throw aqss::cli::UsageError(e.what());
  }
  if (!raw.output.empty()) {
    base.output_path = raw.output;
  }

  if (!raw.d.empty() && !raw.d_log2.empty()) {
    throw aqss::cli::UsageError("--d and --d-log2 are mutually exclusive");
  }
  grid.ds = raw.d_log2.empty() ? raw.d : parse_log2_range(raw.d_log2);
  if (grid.ds.empty()) {
    throw aqss::cli::UsageError("one of --d or --d-log2 is required");
  }
  grid.epsilons = raw.epsilon;
  grid.ns = raw.n;
  grid.trials = raw.trials;
  return grid;
}

int emit(const ExperimentConfig& base,
         const std::vector<aqss::cli::ResultRecord>& records) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (base.output_path) {
    file.open(*base.output_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << *base.output_path << " for writing\n";
      return aqss::cli::kExitUsage;
    }
    os = &file;
  }
  if (base.format == aqss::cli::OutputFormat::Csv) {
    aqss::cli::write_csv(*os, records);
  } else {
    aqss::cli::write_json(*os, records);
  }
  for (const auto& r : records) {
    if (!r.all_asserted_satisfied()) {
      return aqss::cli::kExitBoundViolated;
    }
  }
  return aqss::cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate quantum state sharing laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(aqss::cli::kLibraryVersion));

  RawOptions raw;
  const std::vector<std::pair<Command, std::string>> commands = {
      {Command::Randomize, "Epsilon-randomizing distance of one channel over probe states"},
      {Command::AqssDemo, "Two-receiver protocol run with exterior and interior attacks"},
      {Command::BoundSweep, "Monte Carlo expected trace distance against d/sqrt(n_A n_B)"},
      {Command::PurityCheck, "Monte Carlo purity of the product-channel output"},
      {Command::KeyCost, "Secret-bit cost of the perfect and approximate schemes"},
      {Command::LoccTest, "Product-measurement distinguishability from 1/d^2"},
      {Command::Multiparty, "Protocol run with m >= 3 receivers and a colluding coalition"},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [command, help] : commands) {
    auto* sub = app.add_subcommand(std::string(aqss::cli::to_string(command)), help);
    add_common_options(sub, raw);
    subs.emplace_back(command, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : aqss::cli::kExitUsage;
  }

  Command command = Command::KeyCost;
  for (const auto& [c, sub] : subs) {
    if (sub->parsed()) {
      command = c;
    }
  }

  try {
    const auto grid = build_grid(command, raw);
    const auto records = aqss::cli::sweep(grid, raw.threads);
    return emit(grid.base, records);
  } catch (const aqss::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return aqss::cli::kExitUsage;
  } catch (const aqss::ResourceLimitError& e) {
    std::cerr << "resource guard: " << e.what() << '\n';
    return aqss::cli::kExitResourceGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return aqss::cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
