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

#include "hsbench/benchmark.hpp"

#include <algorithm>
#include <cmath>

#include "hsbench/mqsvt.hpp"
#include "hsbench/parallel.hpp"

namespace hsbench {

namespace {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

template <typename Fn>
MeanSe mean_se(std::size_t count, Fn &&value) {
    MeanSe out;
    for (std::size_t i = 0; i < count; ++i) out.mean += value(i);
    out.mean /= double(count);
    if (count < 2) return out;
    double ss = 0.0;
    for (std::size_t i = 0; i < count; ++i) ss += (value(i) - out.mean) * (value(i) - out.mean);
    out.se = std::sqrt(ss / double(count - 1) / double(count));
    return out;
}

} // namespace

InstanceRecord run_instance(const BenchmarkCellConfig &config, RandomSource rng) {
    if (config.coupling.n != config.n + 1)
        throw Error(ErrorCode::InvalidArgument, "coupling must cover the n + 1 qubits of U_A");
    RandomSource circuit_rng = rng.split(0);
    RandomSource shot_rng = rng.split(1);

    QuantumCircuit ua = generate_rqc_depth(config.coupling, config.depth, circuit_rng);
    InstanceRecord rec;
    rec.g1 = ua.one_qubit_count();
    rec.g2 = ua.two_qubit_count();
    const MqsvtInstance inst = make_instance(std::move(ua), config.phases);

    const OutputDistribution dist = output_distribution(inst);
    rec.success = dist.success;
    rec.p0 = dist.p(0);
    const Eigen::Index half = dist.p.size();
    rec.sum_p = dist.p.tail(half - 1).sum();
    rec.sum_p2 = dist.p.tail(half - 1).squaredNorm();
    rec.alpha_ref = alpha_ref(rec.g1, rec.g2, inst.phases.degree, config.noise);

    // The first rotation acts on |0> as a global phase; dropping it leaves
    // exactly one noisy rotation per query.
    const QuantumCircuit noisy = expand(inst, false);
    const Histogram h = simulate_noisy(noisy, config.noise, config.shots, shot_rng, {config.method, 1});
    rec.success_exp = ancilla_zero_fraction(h);
    rec.sxes = sxes(dist, h.frequencies());
    return rec;
}

BenchmarkCell run_benchmark_cell(const BenchmarkCellConfig &config, const haar::HMoments &analytics, int threads) {
    if (config.instances < 2) throw Error(ErrorCode::InvalidArgument, "a cell needs at least 2 instances");
    if (config.shots < 1) throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
    config.noise.validate();
    BenchmarkCell cell;
    cell.records.resize(std::size_t(config.instances));
    const RandomSource base(config.seed);
    parallel_for(cell.records.size(), threads,
                 [&](std::size_t i) { cell.records[i] = run_instance(config, base.split(i)); });

    const auto &r = cell.records;
    const std::size_t m = r.size();
    std::vector<double> success(m);
    for (std::size_t i = 0; i < m; ++i) success[i] = r[i].success_exp;
    cell.ques = ques(success);
    cell.ques.n = config.n;
    cell.ques.d = config.phases.degree;
    cell.ques.t = config.phases.time;
    cell.ques.shots = config.shots;
    cell.ques.seed = config.seed;

    const MeanSe sx = mean_se(m, [&](std::size_t i) { return r[i].sxes; });
    cell.sxes_mean = sx.mean;
    cell.sxes_standard_error = sx.se;
    const MeanSe sum_p = mean_se(m, [&](std::size_t i) { return r[i].sum_p; });
    const MeanSe sum_p2 = mean_se(m, [&](std::size_t i) { return r[i].sum_p2; });
    cell.fidelity.ques = alpha_from_ques(cell.ques.mean, config.phases.sup_error);
    cell.fidelity.sxes = alpha_from_sxes(sx.mean, config.n, analytics, sx.se);
    cell.fidelity.sxes_empirical = alpha_from_sxes_empirical(sx.mean, config.n, sum_p.mean, sum_p2.mean, sx.se);
    cell.fidelity.ref = mean_se(m, [&](std::size_t i) { return r[i].alpha_ref; }).mean;
    return cell;
}

double ConvergencePoint::deviation() const {
    double dev = std::abs(entropy - 1.0);
    for (double v : moments) dev = std::max(dev, std::abs(v - 1.0));
    return dev;
}

ConvergencePoint haar_convergence(const CouplingMap &coupling, int depth, int instances, std::uint64_t seed,
                                  int threads) {
    if (instances < 2) throw Error(ErrorCode::InvalidArgument, "haar_convergence needs at least 2 instances");
    if (coupling.n > 24) throw Error(ErrorCode::CapacityError, "haar_convergence supports at most 24 qubits");
    const long long dim = 1LL << coupling.n;
    std::array<HaarReference, 5> ref;
    for (int k = 1; k <= 5; ++k) ref[std::size_t(k - 1)] = haar_reference(k, dim);

    std::vector<ColumnStats> stats(static_cast<std::size_t>(instances));
    const RandomSource base(seed);
    parallel_for(stats.size(), threads, [&](std::size_t i) {
        RandomSource rng = base.split(i);
        const QuantumCircuit c = generate_rqc_depth(coupling, depth, rng);
        ComplexVector state = ComplexVector::Zero(dim);
        state(0) = 1.0;
        for (const Gate &g : c.gates) apply_gate(state, c.n, g);
        stats[i] = column_stats(state);
    });

    ConvergencePoint p;
    p.depth = depth;
    for (std::size_t k = 0; k < 5; ++k) {
        const MeanSe v = mean_se(stats.size(), [&](std::size_t i) { return stats[i].moments[k] / ref[k].moment; });
        p.moments[k] = v.mean;
        p.moments_se[k] = v.se;
    }
    const MeanSe s = mean_se(stats.size(), [&](std::size_t i) { return stats[i].entropy / ref[0].entropy; });
    p.entropy = s.mean;
    p.entropy_se = s.se;
    return p;
}

} // namespace hsbench
