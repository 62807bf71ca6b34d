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

#include <memory>
#include <optional>

#include "hsbench/circuit.hpp"
#include "hsbench/numerics.hpp"
#include "hsbench/qsp.hpp"

namespace hsbench {

/// One random block encoding U_A on n+1 qubits (ancilla = qubit 0) with
/// circuit-convention phases.
struct MqsvtInstance {
    int n = 0;
    std::shared_ptr<const ComplexMatrix> ua;
    qsp::PhaseFactorSequence phases;
    /// Gate list of U_A when it came from a random circuit; needed to
    /// expand the circuit gate by gate for noise simulation.
    std::optional<QuantumCircuit> ua_circuit;

    [[nodiscard]] int queries() const noexcept { return phases.queries(); }
    [[nodiscard]] double sup_error() const noexcept { return phases.sup_error; }
};

/// Checks dimensions and converts QSP phases to the circuit convention
/// (alternating rule) when needed.
[[nodiscard]] MqsvtInstance make_instance(int n, ComplexMatrix ua, qsp::PhaseFactorSequence phases);
[[nodiscard]] MqsvtInstance make_instance(QuantumCircuit ua_circuit, qsp::PhaseFactorSequence phases);

/// The mQSVT circuit: ancilla rotations e^{i phi_j Z} interleaved with U_A
/// and U_A^dagger, in application order
///   phi_{2d}, U_A, phi_{2d-1}, U_A^dagger, ..., U_A, phi_1, U_A^dagger, phi_0.
/// Its matrix is e^{i phi_0 Z} U_A^dagger e^{i phi_1 Z} U_A ... U_A e^{i phi_{2d} Z},
/// whose top-left block is P applied to the singular values of A.
/// `include_first_rotation = false` drops phi_{2d}, which acts on |0> as a
/// global phase only.
[[nodiscard]] QuantumCircuit assemble(const MqsvtInstance &inst, bool include_first_rotation = true);

/// The same circuit with every U_A query replaced by its gate list (and
/// U_A^dagger by the inverse list). Requires `ua_circuit`.
[[nodiscard]] QuantumCircuit expand(const MqsvtInstance &inst, bool include_first_rotation = true);

/// Noiseless output state from |0^{n+1}>.
[[nodiscard]] ComplexVector output_state(const MqsvtInstance &inst);

struct OutputDistribution {
    int n = 0;
    RealVector p;         ///< p(U, x), ancilla 0, indexed by the n-bit string x
    RealVector ancilla1;  ///< probabilities with ancilla 1
    double success = 0.0; ///< P(U) = sum_x p(U, x)

    /// p(U, x) / P(U).
    [[nodiscard]] RealVector conditional() const;
    /// All 2^{n+1} probabilities, ancilla bit most significant.
    [[nodiscard]] RealVector full() const;
};

[[nodiscard]] OutputDistribution distribution_from_state(const ComplexVector &state, int n);
[[nodiscard]] OutputDistribution output_distribution(const MqsvtInstance &inst);

/// Top-left 2^n block of the assembled unitary.
[[nodiscard]] ComplexMatrix encoded_block(const MqsvtInstance &inst);

/// V e^{-it Lambda} V^dagger.
[[nodiscard]] ComplexMatrix exact_evolution(const SpectralDecomposition<double> &spec, double t);

/// V P(sqrt(Lambda)) V^dagger for QSP phases: the block the circuit should
/// encode under the alternating rule.
[[nodiscard]] ComplexMatrix polynomial_block(const SpectralDecomposition<double> &spec,
                                             std::span<const double> qsp_phases);

} // namespace hsbench
