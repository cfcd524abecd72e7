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
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aqss/analysis.hpp"

namespace aqss::cli {

inline constexpr std::string_view kLibraryVersion = "0.1.0";

enum class Command {
  Randomize,
  AqssDemo,
  BoundSweep,
  PurityCheck,
  KeyCost,
  LoccTest,
  Multiparty,
};

enum class OutputFormat { Json, Csv };

std::string_view to_string(Command command);
/// Throws ParameterError on an unknown name.
Command parse_command(std::string_view name);
std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view name);

/// A single experiment, fully resolved once validated.
struct ExperimentConfig {
  Command command = Command::KeyCost;
  int d = 4;
  double epsilon = 0.5;
  std::optional<std::uint64_t> n_override;
  std::size_t trials = 100;
  InputFamily family = InputFamily::ProductPure;
  int m = 2;
  std::uint64_t seed = 0;
  bool perfect = false;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::string> output_path;

  bool operator==(const ExperimentConfig&) const = default;
};

/// One reported quantity. `bound`/`satisfied` are present when the quantity
/// is compared against something; `asserted` marks comparisons that decide
/// the exit status.
struct Metric {
  std::string name;
  double value = 0.0;
  std::optional<double> bound;
  std::optional<bool> satisfied;
  bool asserted = false;

  bool operator==(const Metric&) const = default;
};

struct ResultRecord {
  std::string command;
  ExperimentConfig config;
  /// Channel sizes actually used (after defaults and --perfect).
  std::uint64_t n_a = 0;
  std::uint64_t n_b = 0;
  std::vector<Metric> metrics;
  double wall_time_ms = 0.0;
  std::string version{kLibraryVersion};
  std::uint64_t seed = 0;

  bool operator==(const ResultRecord&) const = default;

  /// True when every asserted metric is satisfied.
  bool all_asserted_satisfied() const;
  const Metric* find(std::string_view name) const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);
void to_json(nlohmann::json& j, const Metric& m);
void from_json(const nlohmann::json& j, Metric& m);
void to_json(nlohmann::json& j, const ResultRecord& r);
void from_json(const nlohmann::json& j, ResultRecord& r);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// One JSON object per run; a list of records is wrapped as
/// {"records": [...]}. Output ends with a newline.
void write_json(std::ostream& os, const std::vector<ResultRecord>& records);

/// Header plus one row per metric with the columns
/// command,d,epsilon,n_A,n_B,trials,seed,metric,value,bound,satisfied.
void write_csv(std::ostream& os, const std::vector<ResultRecord>& records);

/// RFC 4180 quoting: fields containing a comma, quote or line break are
/// wrapped in quotes with embedded quotes doubled.
std::string csv_escape(std::string_view field);

}  // namespace aqss::cli
