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

#include <cstdint>
#include <string>
#include <vector>

#include "hsbench/circuit.hpp"
#include "hsbench/mqsvt.hpp"

namespace hsbench {

/// Per-gate depolarizing rates: after a k-qubit gate, with probability r_k a
/// uniformly random non-identity Pauli hits its operands.
struct NoiseModel {
    double r1 = 0.0;
    double r2 = 0.0;

    /// r1 = r2 / 10.
    [[nodiscard]] static NoiseModel from_r2(double r2) { return {r2 / 10.0, r2}; }
    void validate() const;
    /// Rate attached to a gate; dense register unitaries are noiseless.
    [[nodiscard]] double rate(const Gate &g) const;
};

struct Histogram {
    int num_qubits = 0;
    std::uint64_t shots = 0;
    std::vector<std::uint64_t> counts; ///< indexed by basis state, qubit 0 most significant

    [[nodiscard]] RealVector frequencies() const;
};

enum class NoiseMethod {
    Auto,          ///< density matrix up to kMaxDensityQubits, else trajectories
    Trajectory,    ///< stochastic Pauli injection on state vectors
    DensityMatrix, ///< exact channel evolution, then multinomial shots
};

/// Largest register for which Auto picks the density-matrix method.
inline constexpr int kMaxDensityQubits = 8;

struct NoisySimOptions {
    NoiseMethod method = NoiseMethod::Auto;
    int threads = 1;
};

/// Shot histogram of the circuit run from |0...0> under the noise model.
[[nodiscard]] Histogram simulate_noisy(const QuantumCircuit &circuit, const NoiseModel &noise, std::uint64_t shots,
                                       RandomSource &rng, const NoisySimOptions &options = {});

/// Exact density matrix of the same channel.
[[nodiscard]] ComplexMatrix noisy_density_matrix(const QuantumCircuit &circuit, const NoiseModel &noise);

/// Multinomial sample of `shots` outcomes from a probability vector.
[[nodiscard]] Histogram sample_histogram(const RealVector &probabilities, int num_qubits, std::uint64_t shots,
                                         RandomSource &rng);

/// (1 - r1)^{D (g1 + 1)} (1 - r2)^{D g2}, where D = 2d is the total number of
/// U_A and U_A^dagger queries and (g1, g2) count the gates of U_A alone.
[[nodiscard]] double alpha_ref(long long g1, long long g2, int total_queries, const NoiseModel &noise);

/// alpha p + (1 - alpha) / 2^{n+1} for all 2^{n+1} strings, ancilla bit most
/// significant; ancilla-1 strings use their noiseless probabilities as p.
[[nodiscard]] RealVector global_depolarize(const OutputDistribution &dist, double alpha);

/// Rows "bitstring,count" under a commented header with shots, seed and rates.
[[nodiscard]] std::string histogram_csv(const Histogram &h, std::uint64_t seed, const NoiseModel &noise);

} // namespace hsbench
