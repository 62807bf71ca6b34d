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

#include <stdexcept>
#include <string>
#include <string_view>

namespace hsbench {

enum class ErrorCode {
    InvalidDimension,
    NotUnitary,
    DomainError,
    InvalidArgument,
    MalformedSequence,
    ConvergenceFailure,
    CapacityError,
    InvalidInstance,
    IllConditioned,
    PrecisionLimit,
    NotFound,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure surfaced by the library carries one of the codes above so
/// the command-line front end can map it onto an exit status.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidDimension: return "invalid-dimension";
    case ErrorCode::NotUnitary: return "not-unitary";
    case ErrorCode::DomainError: return "domain-error";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::MalformedSequence: return "malformed-sequence";
    case ErrorCode::ConvergenceFailure: return "convergence-failure";
    case ErrorCode::CapacityError: return "capacity-error";
    case ErrorCode::InvalidInstance: return "invalid-instance";
    case ErrorCode::IllConditioned: return "ill-conditioned";
    case ErrorCode::PrecisionLimit: return "precision-limit";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::ConfigError: return "config-error";
    case ErrorCode::IoError: return "io-error";
    }
    return "unknown";
}

} // namespace hsbench
