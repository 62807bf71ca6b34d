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

#include "hsbench/noise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hsbench/io.hpp"
#include "hsbench/parallel.hpp"
#include "hsbench/statevector.hpp"

namespace hsbench {

namespace {

constexpr std::uint64_t kShotsPerChunk = 4096;

void check_register(const QuantumCircuit &c, int limit) {
    if (c.n < 1 || c.n > limit)
        throw Error(ErrorCode::CapacityError, "noisy simulation of " + std::to_string(c.n) +
                                                  " qubits exceeds limit " + std::to_string(limit));
}

// Average over the Pauli group on qubit q: zeroes coherences across q's
// bit and replaces the two diagonal sub-blocks by their mean.
void pauli_twirl(ComplexMatrix &rho, int num_qubits, int q) {
    const Eigen::Index s = qubit_stride(num_qubits, q);
    const Eigen::Index dim = rho.rows();
    for (Eigen::Index j = 0; j < dim; ++j) {
        if (j & s) continue;
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (i & s) continue;
            const Complex mean = 0.5 * (rho(i, j) + rho(i + s, j + s));
            rho(i, j) = rho(i + s, j + s) = mean;
            rho(i, j + s) = rho(i + s, j) = 0.0;
        }
    }
}

void depolarize(ComplexMatrix &rho, int num_qubits, const Gate &g, double r) {
    if (r <= 0.0) return;
    const int k = g.arity();
    const double four_k = std::pow(4.0, k);
    const double lambda = r * four_k / (four_k - 1.0);
    ComplexMatrix twirled = rho;
    for (int q : g.operands) pauli_twirl(twirled, num_qubits, q);
    rho = (1.0 - lambda) * rho + lambda * twirled;
}

void sample_pauli(ComplexVector &state, int num_qubits, const Gate &g, RandomSource &rng) {
    if (g.arity() == 1) {
        apply_pauli(state, num_qubits, g.operands[0], int(1 + rng.index(3)));
    } else {
        const int code = int(1 + rng.index(15));
        apply_pauli(state, num_qubits, g.operands[0], code / 4);
        apply_pauli(state, num_qubits, g.operands[1], code % 4);
    }
}

std::size_t sample_index(const std::vector<double> &cumulative, RandomSource &rng) {
    const double u = rng.uniform() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min<std::size_t>(std::size_t(it - cumulative.begin()), cumulative.size() - 1);
}

std::vector<double> cumulative_of(const ComplexVector &state) {
    std::vector<double> c(std::size_t(state.size()));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < state.size(); ++i) c[std::size_t(i)] = acc += std::norm(state(i));
    return c;
}

struct ErrorEvent {
    std::size_t gate;
};

Histogram run_trajectories(const QuantumCircuit &circuit, const NoiseModel &noise, std::uint64_t shots,
                           RandomSource &rng, int threads) {
    const int n = circuit.n;
    const std::size_t g_count = circuit.gates.size();
    const Eigen::Index dim = Eigen::Index(1) << n;

    std::vector<double> rates(g_count);
    double rmax = 0.0;
    for (std::size_t i = 0; i < g_count; ++i) rmax = std::max(rmax, rates[i] = noise.rate(circuit.gates[i]));

    // Noiseless checkpoints every `stride` gates; a trajectory restarts from
    // the last checkpoint before its first error.
    const std::size_t stride = std::max<std::size_t>(1, std::size_t(std::ceil(std::sqrt(double(g_count)))));
    std::vector<ComplexVector> checkpoints;
    ComplexVector state = ComplexVector::Zero(dim);
    state(0) = 1.0;
    for (std::size_t i = 0; i < g_count; ++i) {
        if (i % stride == 0) checkpoints.push_back(state);
        apply_gate(state, n, circuit.gates[i]);
    }
    const std::vector<double> clean = cumulative_of(state);

    const RandomSource base(rng.next_u64());
    const std::size_t chunks = std::size_t((shots + kShotsPerChunk - 1) / kShotsPerChunk);
    std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(std::size_t(dim), 0));
    parallel_for(chunks, threads, [&](std::size_t chunk) {
        RandomSource local = base.split(chunk);
        auto &counts = partial[chunk];
        const std::uint64_t begin = chunk * kShotsPerChunk;
        const std::uint64_t end = std::min<std::uint64_t>(shots, begin + kShotsPerChunk);
        std::vector<ErrorEvent> events;
        ComplexVector psi(dim);
        for (std::uint64_t shot = begin; shot < end; ++shot) {
            events.clear();
            if (rmax > 0.0) {
                // Geometric skipping at the largest rate, thinned per gate.
                std::size_t pos = 0;
                for (;;) {
                    const std::uint64_t skip = local.geometric(rmax);
                    if (skip >= g_count - pos) break;
                    pos += std::size_t(skip);
                    if (rates[pos] >= rmax || local.uniform() * rmax < rates[pos]) events.push_back({pos});
                    if (++pos >= g_count) break;
                }
            }
            if (events.empty()) {
                ++counts[sample_index(clean, local)];
                continue;
            }
            const std::size_t start = (events.front().gate / stride) * stride;
            psi = checkpoints[start / stride];
            std::size_t next = 0;
            for (std::size_t i = start; i < g_count; ++i) {
                apply_gate(psi, n, circuit.gates[i]);
                if (next < events.size() && events[next].gate == i) {
                    sample_pauli(psi, n, circuit.gates[i], local);
                    ++next;
                }
            }
            ++counts[sample_index(cumulative_of(psi), local)];
        }
    });

    Histogram h;
    h.num_qubits = n;
    h.shots = shots;
    h.counts.assign(std::size_t(dim), 0);
    for (const auto &part : partial)
        for (std::size_t i = 0; i < part.size(); ++i) h.counts[i] += part[i];
    return h;
}

} // namespace

void NoiseModel::validate() const {
    if (!(r1 >= 0.0 && r1 <= 1.0) || !(r2 >= 0.0 && r2 <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "depolarizing rates must lie in [0, 1]");
}

double NoiseModel::rate(const Gate &g) const {
    if (g.is_one_qubit()) return r1;
    if (g.is_two_qubit()) return r2;
    return 0.0;
}

RealVector Histogram::frequencies() const {
    RealVector f(Eigen::Index(counts.size()));
    for (std::size_t i = 0; i < counts.size(); ++i) f(Eigen::Index(i)) = double(counts[i]) / double(shots);
    return f;
}

ComplexMatrix noisy_density_matrix(const QuantumCircuit &circuit, const NoiseModel &noise) {
    noise.validate();
    check_register(circuit, kMaxDenseQubits);
    const Eigen::Index dim = Eigen::Index(1) << circuit.n;
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    rho(0, 0) = 1.0;
    for (const Gate &g : circuit.gates) {
        // G rho G^dagger: left-multiply, take the adjoint, left-multiply again.
        apply_gate(rho, circuit.n, g);
        rho.adjointInPlace();
        apply_gate(rho, circuit.n, g);
        depolarize(rho, circuit.n, g, noise.rate(g));
    }
    return rho;
}

Histogram sample_histogram(const RealVector &probabilities, int num_qubits, std::uint64_t shots, RandomSource &rng) {
    if (probabilities.size() != (Eigen::Index(1) << num_qubits))
        throw Error(ErrorCode::InvalidDimension, "probability vector must have 2^n entries");
    std::vector<double> cumulative(std::size_t(probabilities.size()));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < probabilities.size(); ++i)
        cumulative[std::size_t(i)] = acc += std::max(0.0, probabilities(i));
    if (!(acc > 0.0)) throw Error(ErrorCode::InvalidArgument, "probabilities sum to zero");
    Histogram h;
    h.num_qubits = num_qubits;
    h.shots = shots;
    h.counts.assign(cumulative.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) ++h.counts[sample_index(cumulative, rng)];
    return h;
}

Histogram simulate_noisy(const QuantumCircuit &circuit, const NoiseModel &noise, std::uint64_t shots,
                         RandomSource &rng, const NoisySimOptions &options) {
    noise.validate();
    if (shots < 1) throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
    NoiseMethod method = options.method;
    if (method == NoiseMethod::Auto)
        method = circuit.n <= kMaxDensityQubits ? NoiseMethod::DensityMatrix : NoiseMethod::Trajectory;
    if (method == NoiseMethod::DensityMatrix) {
        check_register(circuit, kMaxDenseQubits);
        const RealVector probs = noisy_density_matrix(circuit, noise).diagonal().real();
        return sample_histogram(probs, circuit.n, shots, rng);
    }
    check_register(circuit, 24);
    return run_trajectories(circuit, noise, shots, rng, options.threads);
}

double alpha_ref(long long g1, long long g2, int total_queries, const NoiseModel &noise) {
    noise.validate();
    if (g1 < 0 || g2 < 0 || total_queries < 0) throw Error(ErrorCode::InvalidArgument, "counts must be >= 0");
    const double d = total_queries;
    return std::pow(1.0 - noise.r1, d * double(g1 + 1)) * std::pow(1.0 - noise.r2, d * double(g2));
}

RealVector global_depolarize(const OutputDistribution &dist, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");
    const RealVector p = dist.full();
    return (alpha * p.array() + (1.0 - alpha) / double(p.size())).matrix();
}

std::string histogram_csv(const Histogram &h, std::uint64_t seed, const NoiseModel &noise) {
    std::ostringstream out;
    out << "# shots=" << h.shots << " seed=" << seed << " r1=" << format_real(noise.r1)
        << " r2=" << format_real(noise.r2) << " qubits=" << h.num_qubits << "\n";
    out << "bitstring,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        if (h.counts[i] == 0) continue;
        std::string bits(std::size_t(h.num_qubits), '0');
        for (int q = 0; q < h.num_qubits; ++q)
            if (i >> (h.num_qubits - 1 - q) & 1) bits[std::size_t(q)] = '1';
        out << bits << ',' << h.counts[i] << '\n';
    }
    return out.str();
}

} // namespace hsbench
