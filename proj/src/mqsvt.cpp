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

#include "hsbench/mqsvt.hpp"

#include <cmath>

namespace hsbench {

namespace {

void check_instance(const MqsvtInstance &inst) {
    if (inst.n < 1 || inst.n + 1 > kMaxDenseQubits)
        throw Error(ErrorCode::CapacityError, "mQSVT register of " + std::to_string(inst.n + 1) +
                                                  " qubits exceeds dense limit " + std::to_string(kMaxDenseQubits));
    const Eigen::Index dim = Eigen::Index(1) << (inst.n + 1);
    if (!inst.ua || inst.ua->rows() != dim || inst.ua->cols() != dim)
        throw Error(ErrorCode::InvalidInstance, "U_A must be 2^(n+1) square");
    if (inst.phases.convention != qsp::Convention::Circuit)
        throw Error(ErrorCode::InvalidInstance, "instance phases must use the circuit convention");
    qsp::validate(inst.phases);
}

template <typename Query>
QuantumCircuit build(const MqsvtInstance &inst, bool include_first_rotation, Query &&query) {
    QuantumCircuit c;
    c.n = inst.n + 1;
    c.coupling = inst.ua_circuit ? inst.ua_circuit->coupling : std::string();
    const auto &phi = inst.phases.phases;
    const int last = int(phi.size()) - 1;
    if (include_first_rotation) c.gates.push_back(make_zphase(0, phi[std::size_t(last)]));
    for (int j = last - 1; j >= 0; --j) {
        // Counting from the first applied query, odd queries are U_A.
        query(c, (last - 1 - j) % 2 == 0);
        c.gates.push_back(make_zphase(0, phi[std::size_t(j)]));
    }
    return c;
}

} // namespace

MqsvtInstance make_instance(int n, ComplexMatrix ua, qsp::PhaseFactorSequence phases) {
    MqsvtInstance inst;
    inst.n = n;
    if (unitarity_error(ua) > kUnitarityTolerance) throw Error(ErrorCode::NotUnitary, "U_A is not unitary");
    inst.ua = std::make_shared<const ComplexMatrix>(std::move(ua));
    if (phases.convention == qsp::Convention::Qsp)
        phases = qsp::convert_convention(phases, qsp::Convention::Circuit, qsp::ShiftRule::Alternating);
    inst.phases = std::move(phases);
    check_instance(inst);
    return inst;
}

MqsvtInstance make_instance(QuantumCircuit ua_circuit, qsp::PhaseFactorSequence phases) {
    const int n = ua_circuit.n - 1;
    if (n < 1) throw Error(ErrorCode::InvalidInstance, "U_A circuit needs at least 2 qubits");
    ComplexMatrix ua = circuit_unitary(ua_circuit);
    MqsvtInstance inst = make_instance(n, std::move(ua), std::move(phases));
    inst.ua_circuit = std::move(ua_circuit);
    return inst;
}

QuantumCircuit assemble(const MqsvtInstance &inst, bool include_first_rotation) {
    check_instance(inst);
    return build(inst, include_first_rotation, [&](QuantumCircuit &c, bool forward) {
        c.gates.push_back(make_unitary(c.n, inst.ua, !forward));
    });
}

QuantumCircuit expand(const MqsvtInstance &inst, bool include_first_rotation) {
    check_instance(inst);
    if (!inst.ua_circuit) throw Error(ErrorCode::InvalidInstance, "expansion needs the gate list of U_A");
    const QuantumCircuit inv = inverse(*inst.ua_circuit);
    return build(inst, include_first_rotation, [&](QuantumCircuit &c, bool forward) {
        const auto &src = forward ? inst.ua_circuit->gates : inv.gates;
        c.gates.insert(c.gates.end(), src.begin(), src.end());
    });
}

ComplexVector output_state(const MqsvtInstance &inst) {
    const QuantumCircuit c = assemble(inst);
    ComplexVector state = ComplexVector::Zero(Eigen::Index(1) << c.n);
    state(0) = 1.0;
    for (const Gate &g : c.gates) apply_gate(state, c.n, g);
    return state;
}

RealVector OutputDistribution::conditional() const {
    if (!(success > 0.0)) throw Error(ErrorCode::IllConditioned, "P(U) = 0; conditional distribution undefined");
    return p / success;
}

RealVector OutputDistribution::full() const {
    RealVector out(p.size() + ancilla1.size());
    out << p, ancilla1;
    return out;
}

OutputDistribution distribution_from_state(const ComplexVector &state, int n) {
    const Eigen::Index half = Eigen::Index(1) << n;
    if (state.size() != 2 * half) throw Error(ErrorCode::InvalidDimension, "state size must be 2^(n+1)");
    OutputDistribution d;
    d.n = n;
    d.p = state.head(half).cwiseAbs2();
    d.ancilla1 = state.tail(half).cwiseAbs2();
    d.success = d.p.sum();
    return d;
}

OutputDistribution output_distribution(const MqsvtInstance &inst) {
    return distribution_from_state(output_state(inst), inst.n);
}

ComplexMatrix encoded_block(const MqsvtInstance &inst) {
    const Eigen::Index half = Eigen::Index(1) << inst.n;
    return circuit_unitary(assemble(inst)).topLeftCorner(half, half);
}

ComplexMatrix exact_evolution(const SpectralDecomposition<double> &spec, double t) {
    return spectral_apply(spec, [t](double lambda) { return std::polar(1.0, -t * lambda); });
}

ComplexMatrix polynomial_block(const SpectralDecomposition<double> &spec, std::span<const double> qsp_phases) {
    return spectral_apply(spec, [&](double lambda) { return qsp::qsp_poly(std::sqrt(lambda), qsp_phases); });
}

} // namespace hsbench
