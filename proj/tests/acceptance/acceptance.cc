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
// Acceptance checks. `acceptance --criterion N` runs one check and prints a
// single PASS or FAIL line for it; without arguments every check runs.
// Detail lines are indented.

#include <array>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "hsbench/benchmark.hpp"
#include "hsbench/circuit.hpp"
#include "hsbench/haar_analytics.hpp"
#include "hsbench/io.hpp"
#include "hsbench/metrics.hpp"
#include "hsbench/mqsvt.hpp"
#include "hsbench/noise.hpp"
#include "hsbench/qsp.hpp"
#include "oracles.hpp"

namespace hsbench::acceptance {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Accumulates sub-checks; the criterion passes when all of them do.
class Report {
  public:
    void check(bool ok, const char *format, ...) __attribute__((format(printf, 3, 4))) {
        char buf[512];
        va_list args;
        va_start(args, format);
        std::vsnprintf(buf, sizeof buf, format, args);
        va_end(args);
        std::printf("  [%s] %s\n", ok ? "ok" : "FAILED", buf);
        std::fflush(stdout);
        ok_ = ok_ && ok;
    }
    [[nodiscard]] bool ok() const { return ok_; }

  private:
    bool ok_ = true;
};

double op_norm(const ComplexMatrix &m) { return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0); }

qsp::PhaseFactorSequence solve_best(double t, int degree, double tol, std::uint64_t seed) {
    RandomSource rng(seed);
    try {
        return qsp::solve_phases(t, degree, tol, rng);
    } catch (const qsp::ConvergenceError &e) {
        return e.best();
    }
}

int env_threads() {
    const char *s = std::getenv("HSBENCH_THREADS");
    const int v = s ? std::atoi(s) : 1;
    return v > 0 ? v : 1;
}

// Phase solver accuracy at t = 1 against three times the published errors.
bool criterion_1(int) {
    Report r;
    const std::array<std::pair<int, double>, 5> published = {
        {{6, 5.543e-3}, {8, 5.805e-4}, {10, 5.230e-6}, {14, 3.332e-6}, {20, 1.107e-8}}};
    for (const auto &[d, err] : published) {
        const auto start = Clock::now();
        const auto seq = solve_best(1.0, d, 3.0 * err, 100 + std::uint64_t(d));
        const double secs = seconds_since(start);
        r.check(seq.sup_error <= 3.0 * err && secs <= 60.0, "d=%d sup_error=%.3e (limit %.3e) in %.2f s", d,
                seq.sup_error, 3.0 * err, secs);
    }
    return r.ok();
}

// Published phase factors at t_opt reproduce their stated errors.
bool criterion_2(int) {
    Report r;
    const auto start = Clock::now();
    const std::array<std::pair<const char *, double>, 3> files = {
        {{"phases_topt_d10.json", 3.027e-2}, {"phases_topt_d18.json", 9.406e-5}, {"phases_topt_d26.json", 1.644e-6}}};
    for (const auto &[name, err] : files) {
        const auto seq = qsp::phase_sequence_from_json(read_text_file(std::string(HSBENCH_DATA_DIR) + "/" + name));
        const double measured = qsp::measured_sup_error(seq);
        const double rel = std::abs(measured - err) / err;
        r.check(rel <= 0.05, "%s: measured %.4e vs published %.4e (rel %.2e)", name, measured, err, rel);
    }
    const double secs = seconds_since(start);
    r.check(secs <= 5.0, "total %.2f s", secs);
    return r.ok();
}

// Block-encoding identity and the success-probability bound.
bool criterion_3(int) {
    Report r;
    const auto start = Clock::now();
    const double t = 1.0;
    const auto seq = solve_best(t, 10, 1e-14, 3);
    const double eps = seq.sup_error;
    RandomSource rng(33);
    double worst_gap = -1.0, min_pu = 1.0, max_pu = 0.0;
    int bad = 0, count = 0;
    for (int i = 0; i < 60; ++i) {
        const int n = 2 + i % 3;
        const ComplexMatrix ua = haar_unitary(Eigen::Index(2) << n, rng);
        const auto inst = make_instance(n, ua, seq);
        const auto spec = block_and_spectrum(ua, n).spectrum;
        const double err = op_norm(encoded_block(inst) - exact_evolution(spec, t));
        const double pu = output_distribution(inst).success;
        worst_gap = std::max(worst_gap, err - eps);
        min_pu = std::min(min_pu, pu);
        max_pu = std::max(max_pu, pu);
        bad += err > eps + 1e-9 || pu < 1.0 - 2.0 * eps || pu > 1.0 + 1e-12;
        ++count;
    }
    r.check(bad == 0, "%d instances, eps=%.3e, max(block error - eps)=%.2e, P(U) in [%.8f, %.8f]", count, eps,
            worst_gap, min_pu, max_pu);
    const double secs = seconds_since(start);
    r.check(secs <= 120.0, "total %.2f s", secs);
    return r.ok();
}

// Concatenation bound and long-time dynamics from concatenated phases.
bool criterion_4(int) {
    Report r;
    const auto start = Clock::now();
    const auto base = solve_best(1.0, 14, 1e-14, 4);
    for (int k = 2; k <= 10; ++k) {
        const auto cat = qsp::concatenate(base, k);
        r.check(cat.sup_error <= k * k * base.sup_error, "r=%d sup_error=%.3e <= r^2 eps=%.3e", k, cat.sup_error,
                k * k * base.sup_error);
    }
    RandomSource rng(44);
    const int n = 2;
    const ComplexMatrix ua = haar_unitary(8, rng);
    const auto spec = block_and_spectrum(ua, n).spectrum;
    for (int t = 1; t <= 10; ++t) {
        const auto seq = t == 1 ? base : qsp::concatenate(base, t);
        const auto d = output_distribution(make_instance(n, ua, seq));
        const ComplexMatrix exact = exact_evolution(spec, double(t));
        const double want = 1.0 - std::norm(exact(0, 0));
        const double got = d.success - d.p(0);
        r.check(std::abs(got - want) <= 2.0 * seq.sup_error, "t=%d leakage %.6f vs exact %.6f (|diff| %.2e <= %.2e)",
                t, got, want, std::abs(got - want), 2.0 * seq.sup_error);
    }
    const double secs = seconds_since(start);
    r.check(secs <= 120.0, "total %.2f s", secs);
    return r.ok();
}

// Critical times at n = 12 and the large-N Bessel prediction.
bool criterion_5(int threads) {
    Report r;
    const auto start = Clock::now();
    const auto ct = haar::critical_times(12, haar::uniform_grid(0.5, 8.0, 0.02), threads);
    r.check(ct.t_thr && *ct.t_thr >= 2.2 && *ct.t_thr <= 2.35, "t_thr=%.4f in [2.2, 2.35]",
            ct.t_thr ? *ct.t_thr : std::nan(""));
    r.check(ct.t_opt && *ct.t_opt >= 4.7 && *ct.t_opt <= 4.9, "t_opt=%.4f in [4.7, 4.9]",
            ct.t_opt ? *ct.t_opt : std::nan(""));
    r.check(ct.gamma_at_opt >= 1.8 && ct.gamma_at_opt <= 2.2, "gamma(t_opt)=%.4f in [1.8, 2.2]", ct.gamma_at_opt);
    r.check(ct.alpha_star_at_opt <= 0.02, "alpha*(t_opt)=%.5f <= 0.02", ct.alpha_star_at_opt);
    r.check(std::abs(ct.t_opt_large_n - 4.8097) <= 1e-3, "large-N t_opt=%.5f (4.8097 +- 1e-3)", ct.t_opt_large_n);
    const double secs = seconds_since(start);
    r.check(secs <= 1800.0, "total %.1f s", secs);
    return r.ok();
}

// Kernel contraction against Monte-Carlo and against the literal sums.
bool criterion_6(int) {
    Report r;
    const auto start = Clock::now();
    RandomSource rng(66);
    for (int l : {1, 2})
        for (int n : {3, 4, 5})
            for (double t : {1.0, 2.0, 4.81}) {
                const double exact = haar::h_moment(l, t, 1LL << n);
                const auto mc = haar::mc_h_oracle(l, t, n, 1000, rng);
                const double z = std::abs(mc.estimate - exact) / mc.standard_error;
                r.check(z <= 3.0, "H%d n=%d t=%.2f: contraction %.6f, MC %.6f +- %.6f (%.2f s.e.)", l, n, t, exact,
                        mc.estimate, mc.standard_error, z);
            }
    for (double t : {1.0, 2.0, 4.81}) {
        const auto coeffs = haar::legendre_coeffs(t);
        double worst = 0.0;
        for (int size : {4, 8, 16, 32, 64}) {
            const auto k = haar::kernel_matrix(coeffs, size);
            const Eigen::MatrixXcd g(k.g);
            worst = std::max({worst, std::abs(haar::h_moment(1, k) - oracle::literal_h1(g)),
                              std::abs(haar::h_moment(2, k) - oracle::literal_h2(g))});
        }
        r.check(worst <= 1e-10, "t=%.2f literal vs contraction, N<=64: max diff %.2e", t, worst);
    }
    const double secs = seconds_since(start);
    r.check(secs <= 600.0, "total %.1f s", secs);
    return r.ok();
}

constexpr int kFidelityInstances = 400;
constexpr int kFullScaleInstances = 50;

BenchmarkCell fidelity_cell(int n, int depth, int degree, double r2, int instances, std::uint64_t seed,
                            int threads) {
    BenchmarkCellConfig c;
    c.n = n;
    c.coupling = make_coupling(CouplingStyle::Linear, n + 1);
    c.depth = depth;
    c.phases = solve_best(1.0, degree, 1e-14, 7);
    c.noise = NoiseModel::from_r2(r2);
    c.shots = 100000;
    c.instances = instances;
    c.seed = seed;
    c.method = NoiseMethod::DensityMatrix;
    return run_benchmark_cell(c, haar::expected_bitstring_moments(1.0, 1LL << n), threads);
}

// Fidelity estimators against the reference value under depolarizing noise.
bool criterion_7(int threads) {
    Report r;
    const auto start = Clock::now();
    const int depth = 140;
    std::uint64_t seed = 700;
    for (double r2 : {4e-5, 2.2e-4, 4e-4})
        for (int degree : {6, 10, 20}) {
            const auto cell = fidelity_cell(5, depth, degree, r2, kFidelityInstances, ++seed, threads);
            const auto &f = cell.fidelity;
            const double dq = std::abs(f.ques.alpha - f.ref), ds = std::abs(f.sxes.raw - f.ref);
            r.check(dq <= 0.05 && ds <= 0.05,
                    "n=5 r2=%.2e 2d=%d: sXES %.4f (+- %.4f), ref %.4f, QUES %.4f (+- %.4f)", r2, degree, f.sxes.raw,
                    f.sxes.standard_error, f.ref, f.ques.alpha, 2.0 * cell.ques.standard_error);
        }
    const auto cell = fidelity_cell(7, depth, 6, 4e-5, kFullScaleInstances, 777, threads);
    const auto &f = cell.fidelity;
    const bool band = std::abs(f.sxes.raw - 0.92) <= 0.03 && std::abs(f.ref - 0.92) <= 0.03 &&
                      std::abs(f.ques.alpha - 0.93) <= 0.03;
    r.check(band, "n=7 r2=4e-5 2d=6: sXES %.4f (+- %.4f), ref %.4f, QUES %.4f vs 0.92/0.92/0.93 +- 0.03", f.sxes.raw,
            f.sxes.standard_error, f.ref, f.ques.alpha);
    const double secs = seconds_since(start);
    r.check(secs <= 7200.0, "total %.1f s", secs);
    return r.ok();
}

// Convergence of random circuits to Haar column statistics.
bool criterion_8(int threads) {
    Report r;
    const auto start = Clock::now();
    const auto p = haar_convergence(make_coupling(CouplingStyle::Full, 5), 60, 200000, 88, threads);
    r.check(p.deviation() <= 0.01,
            "5 qubits, full, depth 60, 200000 instances: S=%.5f M1..M5=%.5f %.5f %.5f %.5f %.5f (max dev %.5f)",
            p.entropy, p.moments[0], p.moments[1], p.moments[2], p.moments[3], p.moments[4], p.deviation());
    const auto lin = make_coupling(CouplingStyle::Linear, 6);
    const auto grid = make_coupling(CouplingStyle::Grid, 6, 2, 3);
    const auto full = make_coupling(CouplingStyle::Full, 6);
    for (int depth : {8, 12, 20}) {
        const double dl = haar_convergence(lin, depth, 2000, 81, threads).deviation();
        const double dg = haar_convergence(grid, depth, 2000, 82, threads).deviation();
        const double df = haar_convergence(full, depth, 2000, 83, threads).deviation();
        r.check(df <= dg && dg <= dl, "6 qubits depth %d deviation: full %.4f <= grid %.4f <= linear %.4f", depth,
                df, dg, dl);
    }
    const double secs = seconds_since(start);
    r.check(secs <= 1200.0, "total %.1f s", secs);
    return r.ok();
}

// Random-matrix statistics against sampling.
bool criterion_9(int) {
    Report r;
    const auto start = Clock::now();
    RandomSource rng(99);
    for (int dim : {4, 16}) {
        const int samples = 20000;
        std::vector<std::vector<double>> m(5, std::vector<double>(std::size_t(samples)));
        std::vector<double> s(static_cast<std::size_t>(samples));
        for (int i = 0; i < samples; ++i) {
            const auto st = column_stats(ComplexMatrix(haar_unitary(dim, rng)));
            for (std::size_t k = 0; k < 5; ++k) m[k][std::size_t(i)] = st.moments[k];
            s[std::size_t(i)] = st.entropy;
        }
        for (int k = 2; k <= 5; ++k) {
            const auto st = oracle::stat(m[std::size_t(k - 1)]);
            const double ref = haar_reference(k, dim).moment;
            r.check(std::abs(st.mean - ref) <= 3.0 * st.se, "N=%d M%d: MC %.6f +- %.6f vs %.6f", dim, k, st.mean,
                    st.se, ref);
        }
        const auto se = oracle::stat(s);
        const double ref = haar_reference(1, dim).entropy;
        r.check(std::abs(se.mean - ref) <= 3.0 * se.se, "N=%d entropy: MC %.6f +- %.6f vs %.6f", dim, se.mean, se.se,
                ref);
    }
    for (int dim : {4, 16}) {
        std::vector<double> v(10000);
        for (auto &x : v) x = std::norm(haar_unitary(dim, rng)(0, 0));
        const double ks = oracle::ks_distance(v, [dim](double x) { return 1.0 - std::pow(1.0 - x, dim - 1); });
        r.check(ks <= 0.03, "N=%d |U00|^2 vs Beta(1, N-1): KS %.4f", dim, ks);
    }
    const auto level = haar::level_density_check(8, 100, rng);
    r.check(level.ks <= 0.02, "n=8 level density vs arcsine: KS %.4f over %zu eigenvalues", level.ks, level.count);
    double worst = 0.0;
    for (double t : {0.0, 1.0, 2.26, 4.81, 8.0})
        for (long long size : {4LL, 16LL, 256LL, 4096LL}) {
            const auto h = haar::expected_bitstring_moments(t, size);
            worst = std::max(worst, std::abs(h.p0_mean + h.rest_mean - 1.0));
        }
    r.check(worst <= 1e-12, "E[p(0)] + E[sum p] = 1: max deviation %.1e", worst);
    const double secs = seconds_since(start);
    r.check(secs <= 600.0, "total %.1f s", secs);
    return r.ok();
}

const std::array<std::function<bool(int)>, 9> kCriteria = {criterion_1, criterion_2, criterion_3,
                                                           criterion_4, criterion_5, criterion_6,
                                                           criterion_7, criterion_8, criterion_9};

const std::array<const char *, 9> kNames = {
    "phase solver accuracy at t=1",       "published phase factors",
    "block-encoding identity",            "concatenation bound and dynamics",
    "critical times",                     "H-moment oracle equivalence",
    "fidelity table under depolarizing noise", "Haar convergence of random circuits",
    "random-matrix statistics"};

} // namespace
} // namespace hsbench::acceptance

int main(int argc, char **argv) {
    using namespace hsbench::acceptance;
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            which.push_back(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]...\n");
            return 2;
        }
    }
    if (which.empty())
        for (int c = 1; c <= 9; ++c) which.push_back(c);
    const int threads = env_threads();
    bool all = true;
    for (int c : which) {
        if (c < 1 || c > 9) {
            std::fprintf(stderr, "unknown criterion %d\n", c);
            return 2;
        }
        const auto start = Clock::now();
        bool ok = false;
        try {
            ok = kCriteria[std::size_t(c - 1)](threads);
        } catch (const std::exception &e) {
            std::printf("  [FAILED] exception: %s\n", e.what());
        }
        std::printf("%s criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", c, kNames[std::size_t(c - 1)],
                    seconds_since(start));
        std::fflush(stdout);
        all = all && ok;
    }
    return all ? 0 : 1;
}
