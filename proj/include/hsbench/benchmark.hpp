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

#include <array>
#include <cstdint>
#include <vector>

#include "hsbench/circuit.hpp"
#include "hsbench/haar_analytics.hpp"
#include "hsbench/metrics.hpp"
#include "hsbench/noise.hpp"
#include "hsbench/qsp.hpp"

namespace hsbench {

/// One cell of the benchmark: random U_A instances of a fixed shape, each
/// run through the noisy mQSVT circuit.
struct BenchmarkCellConfig {
    int n = 0;                 ///< system qubits; U_A acts on n + 1
    CouplingMap coupling;      ///< over n + 1 qubits
    int depth = 0;             ///< random-circuit depth of U_A
    qsp::PhaseFactorSequence phases;
    NoiseModel noise;
    std::uint64_t shots = 0;
    int instances = 0;
    std::uint64_t seed = 0;
    NoiseMethod method = NoiseMethod::Auto;
};

struct InstanceRecord {
    double success = 0.0;     ///< noiseless P(U)
    double success_exp = 0.0; ///< measured P_exp(U)
    double sxes = 0.0;
    double sum_p = 0.0;       ///< sum_{x != 0^n} p(U, x)
    double sum_p2 = 0.0;      ///< sum_{x != 0^n} p(U, x)^2
    double p0 = 0.0;          ///< p(U, 0^n)
    long long g1 = 0;
    long long g2 = 0;
    double alpha_ref = 0.0;
};

struct BenchmarkCell {
    std::vector<InstanceRecord> records; ///< by instance index
    QuesReport ques;
    double sxes_mean = 0.0;
    double sxes_standard_error = 0.0;
    FidelityEstimates fidelity;
};

/// One instance; `rng` drives both the circuit draw and the shots.
[[nodiscard]] InstanceRecord run_instance(const BenchmarkCellConfig &config, RandomSource rng);

/// All instances of a cell, instance i seeded by split(i) of the cell seed.
/// Results do not depend on `threads`.
[[nodiscard]] BenchmarkCell run_benchmark_cell(const BenchmarkCellConfig &config, const haar::HMoments &analytics,
                                               int threads = 1);

/// Normalized column statistics of random circuits at one depth: means of
/// M_k / M_k^Haar and S / S_Haar over instances, with standard errors.
struct ConvergencePoint {
    int depth = 0;
    std::array<double, 5> moments{};
    std::array<double, 5> moments_se{};
    double entropy = 0.0;
    double entropy_se = 0.0;

    /// max over k of |M_k / M_k^Haar - 1| and |S / S_Haar - 1|.
    [[nodiscard]] double deviation() const;
};

[[nodiscard]] ConvergencePoint haar_convergence(const CouplingMap &coupling, int depth, int instances,
                                                std::uint64_t seed, int threads = 1);

} // namespace hsbench
