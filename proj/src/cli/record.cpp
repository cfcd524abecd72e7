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

#include "cli/record.hpp"

#include <array>
#include <charconv>
#include <utility>

namespace aqss::cli {

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 7> kCommandNames{{
    {Command::Randomize, "randomize"},
    {Command::AqssDemo, "aqss-demo"},
    {Command::BoundSweep, "bound-sweep"},
    {Command::PurityCheck, "purity-check"},
    {Command::KeyCost, "key-cost"},
    {Command::LoccTest, "locc-test"},
    {Command::Multiparty, "multiparty"},
}};

}  // namespace

std::string_view to_string(Command command) {
  for (const auto& [c, name] : kCommandNames) {
    if (c == command) {
      return name;
    }
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (const auto& [c, n] : kCommandNames) {
    if (n == name) {
      return c;
    }
  }
  throw ParameterError("unknown command '" + std::string(name) + "'");
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::Json ? "json" : "csv";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "json") {
    return OutputFormat::Json;
  }
  if (name == "csv") {
    return OutputFormat::Csv;
  }
  throw ParameterError("unknown output format '" + std::string(name) +
                       "' (expected json or csv)");
}

bool ResultRecord::all_asserted_satisfied() const {
  for (const auto& m : metrics) {
    if (m.asserted && !m.satisfied.value_or(false)) {
      return false;
    }
  }
  return true;
}

const Metric* ResultRecord::find(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.name == name) {
      return &m;
    }
  }
  return nullptr;
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{
      {"command", to_string(c.command)},
      {"d", c.d},
      {"epsilon", c.epsilon},
      {"n_override", c.n_override ? nlohmann::json(*c.n_override) : nlohmann::json()},
      {"trials", c.trials},
      {"input_family", to_string(c.family)},
      {"m", c.m},
      {"seed", c.seed},
      {"perfect", c.perfect},
      {"output_format", to_string(c.format)},
      {"output_path", c.output_path ? nlohmann::json(*c.output_path) : nlohmann::json()},
  };
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  c.command = parse_command(j.at("command").get<std::string>());
  c.d = j.at("d").get<int>();
  c.epsilon = j.at("epsilon").get<double>();
  const auto& n = j.at("n_override");
  c.n_override = n.is_null() ? std::nullopt
                             : std::optional<std::uint64_t>(n.get<std::uint64_t>());
  c.trials = j.at("trials").get<std::size_t>();
  c.family = parse_input_family(j.at("input_family").get<std::string>());
  c.m = j.at("m").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.perfect = j.at("perfect").get<bool>();
  c.format = parse_output_format(j.at("output_format").get<std::string>());
  const auto& path = j.at("output_path");
  c.output_path = path.is_null() ? std::nullopt
                                 : std::optional<std::string>(path.get<std::string>());
}

void to_json(nlohmann::json& j, const Metric& m) {
  j = nlohmann::json{
      {"name", m.name},
      {"value", m.value},
      {"bound", m.bound ? nlohmann::json(*m.bound) : nlohmann::json()},
      {"satisfied", m.satisfied ? nlohmann::json(*m.satisfied) : nlohmann::json()},
      {"asserted", m.asserted},
  };
}

void from_json(const nlohmann::json& j, Metric& m) {
  m.name = j.at("name").get<std::string>();
  m.value = j.at("value").get<double>();
  const auto& b = j.at("bound");
  m.bound = b.is_null() ? std::nullopt : std::optional<double>(b.get<double>());
  const auto& s = j.at("satisfied");
  m.satisfied = s.is_null() ? std::nullopt : std::optional<bool>(s.get<bool>());
  m.asserted = j.at("asserted").get<bool>();
}

void to_json(nlohmann::json& j, const ResultRecord& r) {
  j = nlohmann::json{
      {"command", r.command},   {"config", r.config},
      {"n_A", r.n_a},           {"n_B", r.n_b},
      {"metrics", r.metrics},   {"wall_time_ms", r.wall_time_ms},
      {"version", r.version},   {"seed", r.seed},
  };
}

void from_json(const nlohmann::json& j, ResultRecord& r) {
  r.command = j.at("command").get<std::string>();
  r.config = j.at("config").get<ExperimentConfig>();
  r.n_a = j.at("n_A").get<std::uint64_t>();
  r.n_b = j.at("n_B").get<std::uint64_t>();
  r.metrics = j.at("metrics").get<std::vector<Metric>>();
  r.wall_time_ms = j.at("wall_time_ms").get<double>();
  r.version = j.at("version").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) {
    return "nan";
  }
  return std::string(buf.data(), end);
}

void write_json(std::ostream& os, const std::vector<ResultRecord>& records) {
  nlohmann::json out;
  if (records.size() == 1) {
    out = records.front();
  } else {
    out = nlohmann::json{{"records", records}};
  }
  os << out.dump(2) << '\n';
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') {
      quoted += '"';
    }
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_csv(std::ostream& os, const std::vector<ResultRecord>& records) {
  // RFC 4180 line endings.
  constexpr std::string_view kEol = "\r\n";
  os << "command,d,epsilon,n_A,n_B,trials,seed,metric,value,bound,satisfied" << kEol;
  for (const auto& r : records) {
    for (const auto& m : r.metrics) {
      os << csv_escape(r.command) << ',' << r.config.d << ','
         << format_double(r.config.epsilon) << ',' << r.n_a << ',' << r.n_b << ','
         << r.config.trials << ',' << r.seed << ',' << csv_escape(m.name) << ','
         << format_double(m.value) << ','
         << (m.bound ? format_double(*m.bound) : std::string()) << ','
         << (m.satisfied ? (*m.satisfied ? "true" : "false") : "") << kEol;
    }
  }
}

}  // namespace aqss::cli
