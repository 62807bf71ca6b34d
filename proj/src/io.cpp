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

#include "hsbench/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hsbench {

std::string format_real(double v) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "cannot serialize non-finite value");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    // Keep integral values recognizable as reals.
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::string format_real_array(std::span<const double> values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_real(values[i]);
    }
    return out + "]";
}

std::string quote_json(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out.write(text.data(), std::streamsize(text.size()));
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

namespace qsp {

std::string to_json(const PhaseFactorSequence &seq) {
    validate(seq);
    std::string out = "{\n";
    out += "  \"t\": " + format_real(seq.time) + ",\n";
    out += "  \"d\": " + std::to_string(seq.degree) + ",\n";
    out += "  \"convention\": " + quote_json(to_string(seq.convention)) + ",\n";
    out += "  \"shift_rule\": " + quote_json(to_string(seq.shift_rule)) + ",\n";
    out += "  \"phases\": " + format_real_array(seq.phases) + ",\n";
    out += "  \"sup_error\": " + format_real(seq.sup_error) + ",\n";
    out += "  \"solver_meta\": {\"seed\": " + std::to_string(seq.meta.seed) +
           ", \"iterations\": " + std::to_string(seq.meta.iterations) +
           ", \"restarts\": " + std::to_string(seq.meta.restarts) + "}\n";
    out += "}\n";
    return out;
}

PhaseFactorSequence phase_sequence_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::MalformedSequence, std::string("phase file is not JSON: ") + e.what());
    }
    try {
        PhaseFactorSequence seq;
        seq.time = j.at("t").get<double>();
        seq.degree = j.at("d").get<int>();
        seq.convention = convention_from_string(j.at("convention").get<std::string>());
        if (j.contains("shift_rule")) seq.shift_rule = shift_rule_from_string(j.at("shift_rule").get<std::string>());
        for (const auto &p : j.at("phases")) seq.phases.push_back(reduce_phase(p.get<double>()));
        seq.sup_error = j.value("sup_error", 0.0);
        if (j.contains("solver_meta")) {
            const auto &m = j.at("solver_meta");
            seq.meta.seed = m.value("seed", std::uint64_t{0});
            seq.meta.iterations = m.value("iterations", 0);
            seq.meta.restarts = m.value("restarts", 0);
        }
        validate(seq);
        return seq;
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::MalformedSequence, std::string("bad phase file field: ") + e.what());
    }
}

} // namespace qsp

} // namespace hsbench
