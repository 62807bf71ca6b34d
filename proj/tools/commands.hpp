// Copyright 2026 The hsbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace hsbench::cli {

using Json = nlohmann::ordered_json;

/// Typed, schema-checked view of a run configuration. Every value read is
/// echoed (defaults included) into `effective()`, which identifies the run.
class Config {
  public:
    Config(Json document, std::string command);

    [[nodiscard]] double real(const std::string &key, std::optional<double> fallback = std::nullopt);
    [[nodiscard]] long long integer(const std::string &key, std::optional<long long> fallback = std::nullopt);
    [[nodiscard]] std::string text(const std::string &key, std::optional<std::string> fallback = std::nullopt);
    [[nodiscard]] std::vector<long long> integer_list(const std::string &key,
                                                      std::optional<std::vector<long long>> fallback = std::nullopt);
    [[nodiscard]] std::vector<double> real_list(const std::string &key,
                                                std::optional<std::vector<double>> fallback = std::nullopt);
    [[nodiscard]] std::vector<std::string> text_list(const std::string &key,
                                                     std::optional<std::vector<std::string>> fallback = std::nullopt);
    [[nodiscard]] bool has(const std::string &key) const { return document_.contains(key); }
    [[nodiscard]] std::uint64_t seed();

    /// Throws ConfigError naming any key outside `allowed`.
    void reject_unknown(std::initializer_list<std::string_view> allowed) const;

    [[nodiscard]] const Json &effective() const { return effective_; }
    [[nodiscard]] const std::string &command() const { return command_; }

  private:
    const Json &require(const std::string &key) const;

    Json document_;
    Json effective_;
    std::string command_;
};

[[nodiscard]] std::string sha256_hex(std::string_view data);

/// Collects artifacts and stage timings, then writes run_manifest.json.
class RunContext {
  public:
    RunContext(std::filesystem::path out, int threads, Config &config);

    [[nodiscard]] Config &config() { return config_; }
    [[nodiscard]] int threads() const { return threads_; }
    /// SHA-256 of the effective configuration; stamped into every artifact.
    [[nodiscard]] std::string config_digest() const;

    void write_artifact(const std::string &name, const std::string &text);
    void stage(const std::string &name);
    void finish();

  private:
    using Clock = std::chrono::steady_clock;
    std::filesystem::path out_;
    int threads_;
    Config &config_;
    Clock::time_point started_;
    Clock::time_point stage_started_;
    std::string stage_name_;
    Json stages_ = Json::array();
    Json artifacts_ = Json::array();
};

/// Names of all subcommands.
[[nodiscard]] const std::vector<std::string> &command_names();

/// Runs one subcommand; library errors propagate to the caller.
void run_command(const std::string &name, RunContext &ctx);

} // namespace hsbench::cli
