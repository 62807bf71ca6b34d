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

#include "commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "hsbench/benchmark.hpp"
#include "hsbench/error.hpp"
#include "hsbench/haar_analytics.hpp"
#include "hsbench/io.hpp"
#include "hsbench/metrics.hpp"
#include "hsbench/numerics.hpp"
#include "hsbench/parallel.hpp"
#include "hsbench/qsp.hpp"

namespace hsbench::cli {

namespace {

constexpr std::string_view kVersion = "0.1.0";

[[noreturn]] void config_error(const std::string &what) { throw Error(ErrorCode::ConfigError, what); }

std::string type_name(const Json &j) { return j.type_name(); }

} // namespace

// ---------------------------------------------------------------------------
// Config

Config::Config(Json document, std::string command) : document_(std::move(document)), command_(std::move(command)) {
    if (!document_.is_object()) config_error("config must be a JSON object");
    effective_ = Json::object();
}

const Json &Config::require(const std::string &key) const {
    if (!document_.contains(key)) config_error("missing required key '" + key + "'");
    return document_.at(key);
}

double Config::real(const std::string &key, std::optional<double> fallback) {
    double v;
    if (!document_.contains(key) && fallback) {
        v = *fallback;
    } else {
        const Json &j = require(key);
        if (!j.is_number()) config_error("'" + key + "' must be a number, got " + type_name(j));
        v = j.get<double>();
    }
    if (!std::isfinite(v)) config_error("'" + key + "' must be finite");
    effective_[key] = v;
    return v;
}

long long Config::integer(const std::string &key, std::optional<long long> fallback) {
    long long v;
    if (!document_.contains(key) && fallback) {
        v = *fallback;
    } else {
        const Json &j = require(key);
        if (!j.is_number_integer()) config_error("'" + key + "' must be an integer, got " + type_name(j));
        v = j.get<long long>();
    }
    effective_[key] = v;
    return v;
}

std::string Config::text(const std::string &key, std::optional<std::string> fallback) {
    std::string v;
    if (!document_.contains(key) && fallback) {
        v = *fallback;
    } else {
        const Json &j = require(key);
        if (!j.is_string()) config_error("'" + key + "' must be a string, got " + type_name(j));
        v = j.get<std::string>();
    }
    effective_[key] = v;
    return v;
}

std::vector<long long> Config::integer_list(const std::string &key, std::optional<std::vector<long long>> fallback) {
    std::vector<long long> v;
    if (!document_.contains(key) && fallback) {
        v = *fallback;
    } else {
        const Json &j = require(key);
        if (j.is_number_integer()) {
            v.push_back(j.get<long long>());
        } else if (j.is_array() && !j.empty()) {
            for (const auto &e : j) {
                if (!e.is_number_integer()) config_error("'" + key + "' must hold integers");
                v.push_back(e.get<long long>());
            }
        } else {
            config_error("'" + key + "' must be an integer or a non-empty integer list");
        }
    }
    effective_[key] = v;
    return v;
}

std::vector<double> Config::real_list(const std::string &key, std::optional<std::vector<double>> fallback) {
    std::vector<double> v;
    if (!document_.contains(key) && fallback) {
        v = *fallback;
    } else {
        const Json &j = require(key);
        if (j.is_number()) {
            v.push_back(j.get<double>());
        } else if (j.is_array() && !j.empty()) {
            for (const auto &e : j) {
                if (!e.is_number()) config_error("'" + key + "' must hold numbers");
                v.push_back(e.get<double>());
            }
        } else {
            config_error("'" + key + "' must be a number or a non-empty number list");
        }
    }
    effective_[key] = v;
    return v;
}

std::vector<std::string> Config::text_list(const std::string &key, std::optional<std::vector<std::string>> fallback) {
    std::vector<std::string> v;
    if (!document_.contains(key) && fallback) {
        v = *fallback;
    } else {
        const Json &j = require(key);
        if (j.is_string()) {
            v.push_back(j.get<std::string>());
        } else if (j.is_array() && !j.empty()) {
            for (const auto &e : j) {
                if (!e.is_string()) config_error("'" + key + "' must hold strings");
                v.push_back(e.get<std::string>());
            }
        } else {
            config_error("'" + key + "' must be a string or a non-empty string list");
        }
    }
    effective_[key] = v;
    return v;
}

std::uint64_t Config::seed() {
    const Json &j = require("seed");
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        config_error("'seed' must be a non-negative integer");
    const std::uint64_t v = j.get<std::uint64_t>();
    effective_["seed"] = v;
    return v;
}

void Config::reject_unknown(std::initializer_list<std::string_view> allowed) const {
    for (const auto &item : document_.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            config_error("unknown key '" + item.key() + "' for " + command_);
    }
}

// ---------------------------------------------------------------------------
// Manifest

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorCode::IoError, "SHA-256 failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[md[i] >> 4];
        out += kHex[md[i] & 15];
    }
    return out;
}

RunContext::RunContext(std::filesystem::path out, int threads, Config &config)
    : out_(std::move(out)), threads_(std::max(1, threads)), config_(config), started_(Clock::now()),
      stage_started_(started_) {}

std::string RunContext::config_digest() const {
    Json identity = {{"command", config_.command()}, {"config", config_.effective()}};
    return sha256_hex(identity.dump());
}

void RunContext::write_artifact(const std::string &name, const std::string &text) {
    write_text_file(out_ / name, text);
    artifacts_.push_back({{"path", name}, {"sha256", sha256_hex(text)}, {"bytes", text.size()}});
}

void RunContext::stage(const std::string &name) {
    const auto now = Clock::now();
    if (!stage_name_.empty())
        stages_.push_back(
            {{"name", stage_name_}, {"seconds", std::chrono::duration<double>(now - stage_started_).count()}});
    stage_name_ = name;
    stage_started_ = now;
}

void RunContext::finish() {
    stage("");
    Json manifest = {
        {"tool", "hsbench"},
        {"version", kVersion},
        {"command", config_.command()},
        {"config", config_.effective()},
        {"config_sha256", config_digest()},
        {"threads", threads_},
        {"wall_seconds", std::chrono::duration<double>(Clock::now() - started_).count()},
        {"stages", stages_},
        {"artifacts", artifacts_},
    };
    write_text_file(out_ / "run_manifest.json", manifest.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Shared helpers

namespace {

std::string csv_header(RunContext &ctx, const std::string &extra = "") {
    std::string h = "# hsbench " + ctx.config().command() + " config_sha256=" + ctx.config_digest();
    if (!extra.empty()) h += " " + extra;
    return h + "\n";
}

Json stamp(RunContext &ctx) {
    return {{"command", ctx.config().command()}, {"config_sha256", ctx.config_digest()}, {"config", ctx.config().effective()}};
}

int checked_int(long long v, long long lo, long long hi, const std::string &what) {
    if (v < lo || v > hi)
        config_error("'" + what + "' = " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
    return int(v);
}

NoiseMethod method_from_string(const std::string &s) {
    if (s == "auto") return NoiseMethod::Auto;
    if (s == "trajectory") return NoiseMethod::Trajectory;
    if (s == "density-matrix") return NoiseMethod::DensityMatrix;
    config_error("method must be auto, trajectory or density-matrix");
}

/// Phases for s_t at degree d: to `tol` when given, otherwise the best
/// sequence the solver reaches.
qsp::PhaseFactorSequence phases_for(double t, int d, std::optional<double> tol, std::uint64_t seed) {
    RandomSource rng = RandomSource(seed).split(std::uint64_t(d));
    if (tol) return qsp::solve_phases(t, d, *tol, rng);
    try {
        return qsp::solve_phases(t, d, 1e-15, rng);
    } catch (const qsp::ConvergenceError &e) {
        return e.best();
    }
}

Json ques_json(const QuesReport &r) {
    return {{"n", r.n},     {"d", r.d},         {"t", r.t},
            {"shots", r.shots}, {"seed", r.seed}, {"mean", r.mean},
            {"ci95", r.ci95}, {"standard_error", r.standard_error}, {"per_instance", r.per_instance}};
}

std::string fmt(double v) { return format_real(v); }

// ---------------------------------------------------------------------------
// Subcommands

void solve_phases_cmd(RunContext &ctx) {
    Config &c = ctx.config();
    c.reject_unknown({"t", "d", "tol", "seed", "convention", "shift_rule", "max_restarts"});
    const double t = c.real("t");
    const int d = checked_int(c.integer("d"), 2, 400, "d");
    if (d % 2) config_error("'d' must be even");
    const double tol = c.real("tol");
    if (!(tol > 0.0)) config_error("'tol' must be positive");
    const std::uint64_t seed = c.seed();
    const auto convention = c.text("convention", "circuit");
    const auto rule = c.text("shift_rule", "alternating");
    qsp::SolveOptions opts;
    opts.max_restarts = checked_int(c.integer("max_restarts", 8), 0, 1000, "max_restarts");
    qsp::Convention target;
    qsp::ShiftRule shift;
    try {
        target = qsp::convention_from_string(convention);
        shift = qsp::shift_rule_from_string(rule);
    } catch (const Error &e) {
        config_error(e.what());
    }

    ctx.stage("solve");
    RandomSource rng(seed);
    const auto write = [&](const qsp::PhaseFactorSequence &seq, const std::string &name) {
        const auto out = target == qsp::Convention::Circuit ? qsp::convert_convention(seq, target, shift) : seq;
        std::string text = qsp::to_json(out);
        text.insert(2, "  \"config_sha256\": " + quote_json(ctx.config_digest()) + ",\n");
        ctx.write_artifact(name, text);
        std::cout << "d=" << d << " t=" << fmt(t) << " sup_error=" << fmt(out.sup_error) << " -> " << name << "\n";
    };
    try {
        write(qsp::solve_phases(t, d, tol, rng, opts), "phases.json");
    } catch (const qsp::ConvergenceError &e) {
        write(e.best(), "phases_best.json");
        ctx.finish();
        throw;
    }
}

void verify_phases_cmd(RunContext &ctx) {
    Config &c = ctx.config();
    c.reject_unknown({"phase_file", "seed", "rel_tol"});
    const std::string file = c.text("phase_file");
    (void)c.seed();
    const double rel_tol = c.real("rel_tol", 0.05);
    ctx.stage("verify");
    const auto seq = qsp::phase_sequence_from_json(read_text_file(file));
    const double measured = qsp::measured_sup_error(seq);
    const double rel = seq.sup_error > 0.0 ? std::abs(measured - seq.sup_error) / seq.sup_error : 0.0;
    Json report = stamp(ctx);
    report["phase_file"] = file;
    report["t"] = seq.time;
    report["d"] = seq.degree;
    report["convention"] = std::string(qsp::to_string(seq.convention));
    report["shift_rule"] = std::string(qsp::to_string(seq.shift_rule));
    report["stored_sup_error"] = seq.sup_error;
    report["measured_sup_error"] = measured;
    report["relative_deviation"] = rel;
    report["within_tolerance"] = seq.sup_error <= 0.0 || rel <= rel_tol;
    ctx.write_artifact("verify.json", report.dump(2) + "\n");
    std::cout << "measured sup_error=" << fmt(measured) << " stored=" << fmt(seq.sup_error) << "\n";
}

int require_dense(int n) {
    if (n + 1 > kMaxDenseQubits)
        throw Error(ErrorCode::CapacityError, "n = " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                                                  " qubits; the dense limit is " + std::to_string(kMaxDenseQubits));
    return n;
}

struct CellShape {
    CouplingStyle style;
    std::string coupling;
    int depth;
    NoiseModel noise;
    std::uint64_t shots;
    int instances;
    NoiseMethod method;
};

BenchmarkCell run_cell(RunContext &ctx, const CellShape &shape, int n, const qsp::PhaseFactorSequence &phases,
                       std::uint64_t cell_seed, const haar::HMoments &analytics) {
    BenchmarkCellConfig cfg;
    cfg.n = n;
    try {
        cfg.coupling = coupling_from_string(shape.coupling, n + 1);
    } catch (const Error &e) {
        if (e.code() == ErrorCode::CapacityError) throw;
        config_error(e.what());
    }
    cfg.depth = shape.depth;
    cfg.phases = phases;
    cfg.noise = shape.noise;
    cfg.shots = shape.shots;
    cfg.instances = shape.instances;
    cfg.seed = cell_seed;
    cfg.method = shape.method;
    return run_benchmark_cell(cfg, analytics, ctx.threads());
}

CellShape read_shape(Config &c, double r2) {
    CellShape s;
    s.coupling = c.text("coupling", "linear");
    s.depth = checked_int(c.integer("depth"), 1, 100000, "depth");
    s.noise = NoiseModel::from_r2(r2);
    if (c.has("r1")) s.noise.r1 = c.real("r1");
    try {
        s.noise.validate();
    } catch (const Error &e) {
        config_error(e.what());
    }
    s.shots = std::uint64_t(checked_int(c.integer("shots", 1000), 1, 2000000000, "shots"));
    s.instances = checked_int(c.integer("instances", 50), 2, 1000000, "instances");
    s.method = method_from_string(c.text("method", "auto"));
    return s;
}

void ques_cmd(RunContext &ctx) {
    Config &c = ctx.config();
    c.reject_unknown({"n", "d", "t", "tol", "coupling", "depth", "r1", "r2", "shots", "instances", "seed", "method"});
    const auto ns = c.integer_list("n");
    const auto ds = c.integer_list("d");
    const double t = c.real("t", 1.0);
    std::optional<double> tol;
    if (c.has("tol")) tol = c.real("tol");
    const CellShape shape = read_shape(c, c.real("r2", 0.0));
    const std::uint64_t seed = c.seed();
    for (long long n : ns) require_dense(checked_int(n, 2, 62, "n"));
    for (long long d : ds)
        if (checked_int(d, 2, 400, "d") % 2) config_error("'d' values must be even");

    ctx.stage("phases");
    std::map<long long, qsp::PhaseFactorSequence> phases;
    for (long long d : ds) phases[d] = phases_for(t, int(d), tol, seed);

    ctx.stage("simulate");
    Json cells = Json::array();
    std::map<std::pair<long long, long long>, QuesReport> grid;
    const RandomSource base(seed);
    std::uint64_t index = 0;
    for (long long n : ns) {
        const auto analytics = haar::expected_bitstring_moments(t, 1LL << n);
        for (long long d : ds) {
            const auto cell = run_cell(ctx, shape, int(n), phases[d], base.split(index++).seed(), analytics);
            grid[{n, d}] = cell.ques;
            Json j = ques_json(cell.ques);
            j["sup_error"] = phases[d].sup_error;
            j["alpha_ques"] = alpha_from_ques(cell.ques.mean, phases[d].sup_error).alpha;
            cells.push_back(j);
        }
    }
    Json report = stamp(ctx);
    report["cells"] = cells;
    ctx.write_artifact("ques.json", report.dump(2) + "\n");

    std::ostringstream csv;
    csv << csv_header(ctx, "layout=rows:n,columns:d");
    csv << "n";
    for (long long d : ds) csv << ",d" << d << "_mean,d" << d << "_ci95";
    csv << "\n";
    for (long long n : ns) {
        csv << n;
        for (long long d : ds) csv << "," << fmt(grid[{n, d}].mean) << "," << fmt(grid[{n, d}].ci95);
        csv << "\n";
    }
    ctx.write_artifact("ques_heatmap.csv", csv.str());
    std::cout << "ques: " << grid.size() << " cells\n";
}

void benchmark_cmd(RunContext &ctx) {
    Config &c = ctx.config();
    c.reject_unknown({"n", "d", "t", "tol", "coupling", "depth", "r1", "r2", "shots", "instances", "seed", "method"});
    const int n = require_dense(checked_int(c.integer("n"), 2, 62, "n"));
    const auto ds = c.integer_list("d");
    const double t = c.real("t", 1.0);
    std::optional<double> tol;
    if (c.has("tol")) tol = c.real("tol");
    const auto r2s = c.real_list("r2");
    CellShape shape = read_shape(c, r2s.front());
    const std::uint64_t seed = c.seed();
    for (long long d : ds)
        if (checked_int(d, 2, 400, "d") % 2) config_error("'d' values must be even");
    for (double r2 : r2s)
        if (!(r2 >= 0.0 && r2 <= 1.0)) config_error("'r2' values must lie in [0, 1]");

    ctx.stage("analytics");
    const haar::HMoments analytics = haar::expected_bitstring_moments(t, 1LL << n);
    const SupremacyParams sup = supremacy_params(analytics.h1, analytics.h2, n);

    ctx.stage("phases");
    std::map<long long, qsp::PhaseFactorSequence> phases;
    for (long long d : ds) phases[d] = phases_for(t, int(d), tol, seed);

    ctx.stage("simulate");
    Json cells = Json::array();
    std::map<std::pair<std::size_t, long long>, FidelityEstimates> table;
    const RandomSource base(seed);
    std::uint64_t index = 0;
    for (std::size_t ri = 0; ri < r2s.size(); ++ri) {
        shape.noise.r2 = r2s[ri];
        if (!c.has("r1")) shape.noise.r1 = r2s[ri] / 10.0;
        for (long long d : ds) {
            const auto cell = run_cell(ctx, shape, n, phases[d], base.split(index++).seed(), analytics);
            const auto &f = cell.fidelity;
            table[{ri, d}] = f;
            const auto hard = hardness_check(cell.ques.mean, sup.alpha_star.value_or(1.0), sup.gamma,
                                             phases[d].sup_error);
            cells.push_back({
                {"r1", shape.noise.r1},
                {"r2", shape.noise.r2},
                {"d", d},
                {"ques_report", ques_json(cell.ques)},
                {"sxes", {{"mean", cell.sxes_mean}, {"standard_error", cell.sxes_standard_error}}},
                {"fidelity",
                 {{"ques", f.ques.alpha},
                  {"sxes", f.sxes.value},
                  {"sxes_raw", f.sxes.raw},
                  {"sxes_standard_error", f.sxes.standard_error},
                  {"sxes_empirical", f.sxes_empirical.value},
                  {"sxes_empirical_raw", f.sxes_empirical.raw},
                  {"ref", f.ref},
                  {"bounds", {{"lower", f.ques.lower}, {"upper", f.ques.upper}}}}},
                {"supremacy",
                 {{"t", t},
                  {"H1", sup.h1},
                  {"H2", sup.h2},
                  {"gamma", sup.gamma},
                  {"alpha_star", sup.alpha_star ? Json(*sup.alpha_star) : Json(nullptr)},
                  {"b_at_alpha", sup.b(f.ques.alpha)}}},
                {"hardness", {{"hard", hard.hard}, {"margin", hard.margin}, {"robust", hard.robust}}},
            });
            std::cout << "r2=" << fmt(shape.noise.r2) << " d=" << d << " ques=" << fmt(f.ques.alpha)
                      << " sxes=" << fmt(f.sxes.value) << " ref=" << fmt(f.ref) << "\n";
        }
    }
    Json report = stamp(ctx);
    report["analytics"] = {{"H1", analytics.h1},
                           {"H2", analytics.h2},
                           {"rest_mean", analytics.rest_mean},
                           {"rest_second", analytics.rest_second},
                           {"rest_second_closed_form", analytics.rest_second_closed_form}};
    report["cells"] = cells;
    ctx.write_artifact("benchmark.json", report.dump(2) + "\n");

    std::ostringstream csv;
    csv << csv_header(ctx, "n=" + std::to_string(n) + " coupling=" + shape.coupling);
    csv << "r2,estimate";
    for (long long d : ds) csv << ",d" << d;
    csv << "\n";
    for (std::size_t ri = 0; ri < r2s.size(); ++ri) {
        for (const char *row : {"sxes", "ref", "ques"}) {
            csv << fmt(r2s[ri]) << "," << row;
            for (long long d : ds) {
                const auto &f = table[{ri, d}];
                const double v = std::string_view(row) == "sxes" ? f.sxes.value
                                 : std::string_view(row) == "ref" ? f.ref
                                                                  : f.ques.alpha;
                csv << "," << fmt(v);
            }
            csv << "\n";
        }
    }
    ctx.write_artifact("benchmark_table.csv", csv.str());
}

void haar_convergence_cmd(RunContext &ctx) {
    Config &c = ctx.config();
    c.reject_unknown({"qubits", "couplings", "depths", "instances", "seed"});
    const int qubits = checked_int(c.integer("qubits"), 2, 62, "qubits");
    const auto couplings = c.text_list("couplings", std::vector<std::string>{"linear", "full"});
    const auto depths = c.integer_list("depths");
    const int instances = checked_int(c.integer("instances", 200), 2, 10000000, "instances");
    const std::uint64_t seed = c.seed();
    std::vector<CouplingMap> maps;
    for (const auto &s : couplings) {
        try {
            maps.push_back(coupling_from_string(s, qubits));
        } catch (const Error &e) {
            config_error(e.what());
        }
    }
    for (long long d : depths) checked_int(d, 1, 100000, "depths");

    ctx.stage("sample");
    std::ostringstream csv;
    csv << csv_header(ctx, "qubits=" + std::to_string(qubits) + " instances=" + std::to_string(instances));
    csv << "coupling,depth,entropy,entropy_se";
    for (int k = 1; k <= 5; ++k) csv << ",M" << k << ",M" << k << "_se";
    csv << ",deviation\n";
    const RandomSource base(seed);
    std::uint64_t index = 0;
    for (const auto &map : maps) {
        for (long long depth : depths) {
            const auto p = haar_convergence(map, int(depth), instances, base.split(index++).seed(), ctx.threads());
            csv << map.name() << "," << depth << "," << fmt(p.entropy) << "," << fmt(p.entropy_se);
            for (int k = 0; k < 5; ++k) csv << "," << fmt(p.moments[std::size_t(k)]) << "," << fmt(p.moments_se[std::size_t(k)]);
            csv << "," << fmt(p.deviation()) << "\n";
        }
    }
    ctx.write_artifact("haar_convergence.csv", csv.str());
}

Json optional_json(const std::optional<double> &v) { return v ? Json(*v) : Json(nullptr); }

void supremacy_cmd(RunContext &ctx) {
    Config &c = ctx.config();
    c.reject_unknown({"n", "t_min", "t_max", "step", "seed"});
    const int n = checked_int(c.integer("n"), 2, 62, "n");
    const double lo = c.real("t_min", 0.5);
    const double hi = c.real("t_max", 8.0);
    const double step = c.real("step", 0.02);
    (void)c.seed();
    if (!(step > 0.0 && hi > lo)) config_error("need t_max > t_min and step > 0");

    ctx.stage("curves");
    const auto grid = haar::uniform_grid(lo, hi, step);
    const auto ct = haar::critical_times(n, grid, ctx.threads());
    const int dmax = haar::legendre_coeffs(hi).cutoff;

    std::ostringstream csv;
    csv << csv_header(ctx, "n=" + std::to_string(n) + " D_max=" + std::to_string(dmax) + " legendre_tol=1e-13");
    csv << "t,H1,H2,gamma,alpha_star\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv << fmt(ct.t[i]) << "," << fmt(ct.h1[i]) << "," << fmt(ct.h2[i]) << "," << fmt(ct.gamma[i]) << ","
            << fmt(ct.alpha_star[i]) << "\n";
    ctx.write_artifact("supremacy.csv", csv.str());

    Json report = stamp(ctx);
    report["n"] = n;
    report["t_thr"] = optional_json(ct.t_thr);
    report["t_opt"] = optional_json(ct.t_opt);
    if (!ct.t_thr) report["t_thr_status"] = "not-found";
    if (!ct.t_opt) report["t_opt_status"] = "not-found";
    report["alpha_star_at_opt"] = ct.t_opt ? Json(ct.alpha_star_at_opt) : Json(nullptr);
    report["gamma_at_opt"] = ct.t_opt ? Json(ct.gamma_at_opt) : Json(nullptr);
    report["t_opt_large_n"] = ct.t_opt_large_n;
    ctx.write_artifact("supremacy.json", report.dump(2) + "\n");
    std::cout << "t_thr=" << (ct.t_thr ? fmt(*ct.t_thr) : "not-found")
              << " t_opt=" << (ct.t_opt ? fmt(*ct.t_opt) : "not-found") << "\n";
}

void topt_mc_cmd(RunContext &ctx) {
    Config &c = ctx.config();
    c.reject_unknown({"n", "instances", "t_min", "t_max", "step", "seed"});
    const int n = checked_int(c.integer("n"), 1, 62, "n");
    if (n > 11) throw Error(ErrorCode::CapacityError, "topt-mc supports n <= 11, got n = " + std::to_string(n));
    const int instances = checked_int(c.integer("instances", 100), 2, 1000000, "instances");
    const double lo = c.real("t_min", 0.0);
    const double hi = c.real("t_max", 20.0);
    const double step = c.real("step", 0.05);
    const std::uint64_t seed = c.seed();
    if (!(step > 0.0 && hi > lo && lo >= 0.0 && hi <= 24.0)) config_error("need 0 <= t_min < t_max <= 24, step > 0");
    const auto grid = haar::uniform_grid(lo, hi, step);
    const Eigen::Index dim = Eigen::Index(1) << n;

    ctx.stage("sample");
    // Per instance: |V|^2 and the spectrum give every diagonal amplitude
    // <j|e^{-itH}|j> = sum_k |V_jk|^2 e^{-it lambda_k} for all t at once.
    std::vector<std::vector<double>> diag(static_cast<std::size_t>(instances)), p0(static_cast<std::size_t>(instances));
    const RandomSource base(seed);
    parallel_for(std::size_t(instances), ctx.threads(), [&](std::size_t i) {
        RandomSource rng = base.split(i);
        const ComplexMatrix u = haar_unitary<double>(2 * dim, rng);
        const ComplexMatrix a = u.topLeftCorner(dim, dim);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a.adjoint() * a);
        const Eigen::MatrixXd w = eig.eigenvectors().cwiseAbs2();
        diag[i].resize(grid.size());
        p0[i].resize(grid.size());
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const ComplexVector phase = eig.eigenvalues().unaryExpr([&](double l) { return std::polar(1.0, -grid[g] * l); });
            const ComplexVector amp = w.cast<Complex>() * phase;
            diag[i][g] = amp.cwiseAbs2().mean();
            p0[i][g] = std::norm(amp(0));
        }
    });

    std::ostringstream csv;
    csv << csv_header(ctx, "n=" + std::to_string(n) + " instances=" + std::to_string(instances));
    csv << "t,diag_prob_mean,diag_prob_se,p0_mean,p0_se,bessel_bound\n";
    std::vector<double> p0_mean(grid.size());
    const double m = instances;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double sd = 0, sd2 = 0, sp = 0, sp2 = 0;
        for (int i = 0; i < instances; ++i) {
            sd += diag[std::size_t(i)][g];
            sd2 += diag[std::size_t(i)][g] * diag[std::size_t(i)][g];
            sp += p0[std::size_t(i)][g];
            sp2 += p0[std::size_t(i)][g] * p0[std::size_t(i)][g];
        }
        const double md = sd / m, mp = sp / m;
        p0_mean[g] = mp;
        const double sed = std::sqrt(std::max(0.0, sd2 / m - md * md) / (m - 1));
        const double sep = std::sqrt(std::max(0.0, sp2 / m - mp * mp) / (m - 1));
        csv << fmt(grid[g]) << "," << fmt(md) << "," << fmt(sed) << "," << fmt(mp) << "," << fmt(sep) << ","
            << fmt(std::norm(haar::mean_diag_evolution(grid[g]))) << "\n";
    }
    ctx.write_artifact("topt_mc.csv", csv.str());

    // Local minima of the mean all-zero probability against the zeros
    // 2 j_{0,k} of J_0(t/2) inside the grid.
    Json minima = Json::array(), zeros = Json::array();
    for (std::size_t g = 1; g + 1 < grid.size(); ++g)
        if (p0_mean[g] < p0_mean[g - 1] && p0_mean[g] <= p0_mean[g + 1]) minima.push_back(grid[g]);
    for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
        double a = grid[g] / 2, b = grid[g + 1] / 2;
        if (haar::bessel_j0(a) * haar::bessel_j0(b) > 0.0 || haar::bessel_j0(a) == 0.0) continue;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (a + b);
            (haar::bessel_j0(a) * haar::bessel_j0(mid) <= 0.0 ? b : a) = mid;
        }
        zeros.push_back(a + b);
    }
    Json report = stamp(ctx);
    report["p0_minima"] = minima;
    report["bessel_zeros_t"] = zeros;
    ctx.write_artifact("topt_mc.json", report.dump(2) + "\n");
}

const std::map<std::string, std::function<void(RunContext &)>> &commands() {
    static const std::map<std::string, std::function<void(RunContext &)>> table = {
        {"solve-phases", solve_phases_cmd}, {"verify-phases", verify_phases_cmd}, {"ques", ques_cmd},
        {"benchmark", benchmark_cmd},       {"haar-convergence", haar_convergence_cmd},
        {"supremacy", supremacy_cmd},       {"topt-mc", topt_mc_cmd},
    };
    return table;
}

} // namespace

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names = {"solve-phases", "verify-phases", "ques",   "benchmark",
                                                   "haar-convergence", "supremacy",  "topt-mc"};
    return names;
}

void run_command(const std::string &name, RunContext &ctx) {
    const auto it = commands().find(name);
    if (it == commands().end()) config_error("unknown subcommand " + name);
    it->second(ctx);
    ctx.finish();
}

} // namespace hsbench::cli
