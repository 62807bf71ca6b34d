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
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsbench/numerics.hpp"

namespace hsbench {

/// Largest register assembled as a dense matrix.
inline constexpr int kMaxDenseQubits = 13;

enum class GateKind {
    U1,      ///< params (lambda)
    U2,      ///< params (phi, lambda)
    U3,      ///< params (theta, phi, lambda)
    CNOT,    ///< operands (control, target)
    SU4,     ///< 4x4 matrix on (q_a, q_b)
    ZPhase,  ///< e^{i phi Z}, params (phi)
    Unitary, ///< dense matrix on the whole register
};

[[nodiscard]] std::string_view to_string(GateKind kind);
[[nodiscard]] GateKind gate_kind_from_string(std::string_view s);

struct Gate {
    GateKind kind = GateKind::U1;
    std::vector<double> params;
    std::vector<int> operands;
    /// SU4 and Unitary payload; shared so repeated queries cost no copies.
    std::shared_ptr<const ComplexMatrix> matrix;
    /// Apply the conjugate transpose instead.
    bool adjoint = false;

    [[nodiscard]] int arity() const noexcept { return int(operands.size()); }
    /// Counted as a one-qubit gate (U1/U2/U3/ZPhase).
    [[nodiscard]] bool is_one_qubit() const noexcept;
    /// Counted as a two-qubit gate (CNOT/SU4).
    [[nodiscard]] bool is_two_qubit() const noexcept;
};

[[nodiscard]] Gate make_u1(int q, double lambda);
[[nodiscard]] Gate make_u2(int q, double phi, double lambda);
[[nodiscard]] Gate make_u3(int q, double theta, double phi, double lambda);
[[nodiscard]] Gate make_cnot(int control, int target);
[[nodiscard]] Gate make_su4(int qa, int qb, std::shared_ptr<const ComplexMatrix> m);
[[nodiscard]] Gate make_zphase(int q, double phi);
[[nodiscard]] Gate make_unitary(int num_qubits, std::shared_ptr<const ComplexMatrix> m, bool adjoint = false);

/// The gate's matrix on its own operands (2x2, 4x4, or full register).
[[nodiscard]] ComplexMatrix gate_matrix(const Gate &g);

enum class CouplingStyle { Linear, Grid, Full };

struct CouplingMap {
    int n = 0;
    CouplingStyle style = CouplingStyle::Linear;
    int rows = 0;
    int cols = 0;
    std::vector<std::pair<int, int>> edges; ///< unordered pairs stored with first < second

    [[nodiscard]] std::string name() const;
};

[[nodiscard]] CouplingMap make_coupling(CouplingStyle style, int n, int rows = 0, int cols = 0);
/// "linear", "full", or "grid:RxC".
[[nodiscard]] CouplingMap coupling_from_string(std::string_view spec, int n);

struct QuantumCircuit {
    int n = 0;
    std::vector<Gate> gates;
    std::string coupling;

    [[nodiscard]] int one_qubit_count() const;
    [[nodiscard]] int two_qubit_count() const;
};

/// Random circuit on a coupling map with exactly g1 one-qubit gates and
/// ceil((1-p1)/(2 p1) g1) CNOTs, built layer by layer.
[[nodiscard]] QuantumCircuit generate_rqc(const CouplingMap &coupling, int g1, double p1, RandomSource &rng);

/// Depth-ell circuit at density 1/2: g1 = ceil(ell * n / 2).
[[nodiscard]] QuantumCircuit generate_rqc_depth(const CouplingMap &coupling, int depth, RandomSource &rng);

/// Each layer permutes the qubit labels and applies a Haar SU4 to each
/// adjacent pair; with odd n the last label idles.
[[nodiscard]] QuantumCircuit generate_qv(int n, int layers, RandomSource &rng);

/// Apply a gate to a block of states (see statevector.hpp).
void apply_gate(ComplexMatrix &block, int num_qubits, const Gate &g);
void apply_gate(ComplexVector &state, int num_qubits, const Gate &g);

/// Product of gate embeddings in declared order.
[[nodiscard]] ComplexMatrix circuit_unitary(const QuantumCircuit &c);

/// The inverse circuit: reversed order, each gate adjoint.
[[nodiscard]] QuantumCircuit inverse(const QuantumCircuit &c);

struct ColumnStats {
    std::array<double, 5> moments{}; ///< M_1 .. M_5
    double entropy = 0.0;
};

/// Moments and entropy of p_i = |U_{i,0}|^2.
[[nodiscard]] ColumnStats column_stats(const ComplexMatrix &u);
/// Same, for a column already extracted.
[[nodiscard]] ColumnStats column_stats(const ComplexVector &column);

struct HaarReference {
    double moment = 0.0;   ///< M_k
    double variance = 0.0; ///< V_k, relative variance of M_k
    double entropy = 0.0;  ///< S
};

/// Closed forms of the Haar column statistics, evaluated in exact rational
/// arithmetic; 1 <= k <= 8.
[[nodiscard]] HaarReference haar_reference(int k, long long dim);

/// Circuit file: {n, coupling, gates: [{kind, params, operands}]}.
[[nodiscard]] std::string to_json(const QuantumCircuit &c);
[[nodiscard]] QuantumCircuit circuit_from_json(std::string_view text);

} // namespace hsbench
