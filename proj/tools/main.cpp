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

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "hsbench/error.hpp"
#include "hsbench/io.hpp"

namespace {

int exit_code(hsbench::ErrorCode code) {
    using hsbench::ErrorCode;
    switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::MalformedSequence:
    case ErrorCode::DomainError:
    case ErrorCode::InvalidDimension:
    case ErrorCode::IoError:
    case ErrorCode::NotFound: return 2;
    case ErrorCode::CapacityError: return 3;
    case ErrorCode::ConvergenceFailure: return 4;
    default: return 1;
    }
}

int default_threads() {
    if (const char *env = std::getenv("HSBENCH_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) return v;
        } catch (const std::exception &) {
        }
        throw hsbench::Error(hsbench::ErrorCode::ConfigError, "HSBENCH_THREADS must be a positive integer");
    }
    return 1;
}

} // namespace

int main(int argc, char **argv) {
    using namespace hsbench;
    CLI::App app{"hsbench: mQSVT Hamiltonian-simulation benchmark toolkit"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    for (const auto &name : cli::command_names()) {
        CLI::App *sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--seed", seed, "overrides the configured seed");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--threads", threads, "worker threads (default HSBENCH_THREADS or 1)")
            ->check(CLI::PositiveNumber);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        cli::Json document;
        try {
            document = cli::Json::parse(read_text_file(config_path));
        } catch (const cli::Json::exception &e) {
            throw Error(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
        }
        if (seed && document.is_object()) document["seed"] = *seed;
        cli::Config config(std::move(document), command);
        cli::RunContext ctx(out_dir, threads ? *threads : default_threads(), config);
        cli::run_command(command, ctx);
        return 0;
    } catch (const Error &e) {
        std::cerr << "hsbench " << command << ": " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception &e) {
        std::cerr << "hsbench " << command << ": " << e.what() << "\n";
        return 1;
    }
}
