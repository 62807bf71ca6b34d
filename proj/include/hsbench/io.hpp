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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "hsbench/qsp.hpp"

namespace hsbench {

/// Decimal form with 17 significant digits; round-trips any
/// finite double exactly.
[[nodiscard]] std::string format_real(double v);

/// Comma-separated `format_real` values inside brackets.
[[nodiscard]] std::string format_real_array(std::span<const double> values);

/// JSON string literal with escapes.
[[nodiscard]] std::string quote_json(std::string_view s);

[[nodiscard]] std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

namespace qsp {

/// {t, d, convention, shift_rule, phases, sup_error, solver_meta}. `d` is
/// the polynomial degree.
[[nodiscard]] std::string to_json(const PhaseFactorSequence &seq);

/// Parses and validates a phase file. Phases outside [-pi, pi) are reduced
/// first, so published tables can be pasted verbatim.
[[nodiscard]] PhaseFactorSequence phase_sequence_from_json(std::string_view text);

} // namespace qsp

} // namespace hsbench
