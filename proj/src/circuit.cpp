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

#include "hsbench/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "hsbench/io.hpp"
#include "hsbench/statevector.hpp"
#include "json.hpp"

namespace hsbench {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Matrix2cd u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Eigen::Matrix2cd m;
    m << c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda);
    return m;
}

void check_qubit(int q, int n) {
    if (q < 0 || q >= n) throw Error(ErrorCode::InvalidArgument, "qubit index " + std::to_string(q) + " out of range");
}

void validate_gate(const Gate &g, int n) {
    for (int q : g.operands) check_qubit(q, n);
    auto need = [&](std::size_t params, int arity) {
        if (g.params.size() != params || g.arity() != arity)
            throw Error(ErrorCode::InvalidArgument, std::string("malformed ") + std::string(to_string(g.kind)) + " gate");
    };
    switch (g.kind) {
    case GateKind::U1: need(1, 1); break;
    case GateKind::U2: need(2, 1); break;
    case GateKind::U3: need(3, 1); break;
    case GateKind::ZPhase: need(1, 1); break;
    case GateKind::CNOT: need(0, 2); break;
    case GateKind::SU4:
        need(0, 2);
        if (!g.matrix || g.matrix->rows() != 4 || g.matrix->cols() != 4)
            throw Error(ErrorCode::InvalidArgument, "SU4 gate needs a 4x4 matrix");
        break;
    case GateKind::Unitary:
        if (!g.matrix || g.matrix->rows() != (Eigen::Index(1) << n) || g.matrix->cols() != g.matrix->rows())
            throw Error(ErrorCode::InvalidArgument, "register unitary has the wrong dimension");
        break;
    }
    if (g.arity() == 2 && g.operands[0] == g.operands[1])
        throw Error(ErrorCode::InvalidArgument, "two-qubit gate operands must differ");
}

Gate random_one_qubit(int q, RandomSource &rng) {
    switch (rng.index(3)) {
    case 0: return make_u1(q, rng.uniform(0.0, kTwoPi));
    case 1: {
        const double phi = rng.uniform(0.0, kTwoPi);
        return make_u2(q, phi, rng.uniform(0.0, kTwoPi));
    }
    default: {
        const double theta = rng.uniform(0.0, kTwoPi);
        const double phi = rng.uniform(0.0, kTwoPi);
        return make_u3(q, theta, phi, rng.uniform(0.0, kTwoPi));
    }
    }
}

Gate random_cnot(std::pair<int, int> edge, RandomSource &rng) {
    return rng.index(2) ? make_cnot(edge.first, edge.second) : make_cnot(edge.second, edge.first);
}

// ceil(x) that ignores round-off just above an integer.
long long robust_ceil(double x) { return (long long)std::ceil(x - 1e-9); }

} // namespace

std::string_view to_string(GateKind kind) {
    switch (kind) {
    case GateKind::U1: return "U1";
    case GateKind::U2: return "U2";
    case GateKind::U3: return "U3";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SU4: return "SU4";
    case GateKind::ZPhase: return "ZPHASE";
    case GateKind::Unitary: return "UNITARY";
    }
    return "?";
}

GateKind gate_kind_from_string(std::string_view s) {
    for (GateKind k : {GateKind::U1, GateKind::U2, GateKind::U3, GateKind::CNOT, GateKind::SU4, GateKind::ZPhase,
                       GateKind::Unitary})
        if (to_string(k) == s) return k;
    throw Error(ErrorCode::InvalidArgument, "unknown gate kind '" + std::string(s) + "'");
}

bool Gate::is_one_qubit() const noexcept {
    return kind == GateKind::U1 || kind == GateKind::U2 || kind == GateKind::U3 || kind == GateKind::ZPhase;
}

bool Gate::is_two_qubit() const noexcept { return kind == GateKind::CNOT || kind == GateKind::SU4; }

Gate make_u1(int q, double lambda) { return {GateKind::U1, {lambda}, {q}, nullptr, false}; }
Gate make_u2(int q, double phi, double lambda) { return {GateKind::U2, {phi, lambda}, {q}, nullptr, false}; }
Gate make_u3(int q, double theta, double phi, double lambda) {
    return {GateKind::U3, {theta, phi, lambda}, {q}, nullptr, false};
}
Gate make_cnot(int control, int target) { return {GateKind::CNOT, {}, {control, target}, nullptr, false}; }
Gate make_su4(int qa, int qb, std::shared_ptr<const ComplexMatrix> m) {
    return {GateKind::SU4, {}, {qa, qb}, std::move(m), false};
}
Gate make_zphase(int q, double phi) { return {GateKind::ZPhase, {phi}, {q}, nullptr, false}; }
Gate make_unitary(int num_qubits, std::shared_ptr<const ComplexMatrix> m, bool adjoint) {
    std::vector<int> ops(static_cast<std::size_t>(num_qubits));
    std::iota(ops.begin(), ops.end(), 0);
    return {GateKind::Unitary, {}, std::move(ops), std::move(m), adjoint};
}

ComplexMatrix gate_matrix(const Gate &g) {
    ComplexMatrix m;
    switch (g.kind) {
    case GateKind::U1: m = u3_matrix(0.0, 0.0, g.params[0]); break;
    case GateKind::U2: m = u3_matrix(std::numbers::pi / 2, g.params[0], g.params[1]); break;
    case GateKind::U3: m = u3_matrix(g.params[0], g.params[1], g.params[2]); break;
    case GateKind::ZPhase:
        m = ComplexMatrix::Zero(2, 2);
        m(0, 0) = std::polar(1.0, g.params[0]);
        m(1, 1) = std::polar(1.0, -g.params[0]);
        break;
    case GateKind::CNOT:
        m = ComplexMatrix::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
        break;
    case GateKind::SU4:
    case GateKind::Unitary: m = *g.matrix; break;
    }
    if (g.adjoint) m.adjointInPlace();
    return m;
}

std::string CouplingMap::name() const {
    switch (style) {
    case CouplingStyle::Linear: return "linear";
    case CouplingStyle::Full: return "full";
    case CouplingStyle::Grid: return "grid:" + std::to_string(rows) + "x" + std::to_string(cols);
    }
    return "?";
}

CouplingMap make_coupling(CouplingStyle style, int n, int rows, int cols) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "coupling map needs n >= 2");
    CouplingMap c;
    c.n = n;
    c.style = style;
    switch (style) {
    case CouplingStyle::Linear:
        for (int q = 0; q + 1 < n; ++q) c.edges.emplace_back(q, q + 1);
        break;
    case CouplingStyle::Full:
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) c.edges.emplace_back(a, b);
        break;
    case CouplingStyle::Grid:
        if (rows < 1 || cols < 1 || rows * cols != n)
            throw Error(ErrorCode::InvalidArgument, "grid dimensions must multiply to n");
        c.rows = rows;
        c.cols = cols;
        for (int r = 0; r < rows; ++r)
            for (int k = 0; k < cols; ++k) {
                const int q = r * cols + k;
                if (k + 1 < cols) c.edges.emplace_back(q, q + 1);
                if (r + 1 < rows) c.edges.emplace_back(q, q + cols);
            }
        std::sort(c.edges.begin(), c.edges.end());
        break;
    }
    return c;
}

CouplingMap coupling_from_string(std::string_view spec, int n) {
    if (spec == "linear") return make_coupling(CouplingStyle::Linear, n);
    if (spec == "full") return make_coupling(CouplingStyle::Full, n);
    if (spec.starts_with("grid:")) {
        const std::string dims(spec.substr(5));
        const auto x = dims.find('x');
        if (x == std::string::npos) throw Error(ErrorCode::InvalidArgument, "grid coupling must be grid:RxC");
        try {
            return make_coupling(CouplingStyle::Grid, n, std::stoi(dims.substr(0, x)), std::stoi(dims.substr(x + 1)));
        } catch (const std::logic_error &) {
            throw Error(ErrorCode::InvalidArgument, "grid coupling must be grid:RxC");
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown coupling '" + std::string(spec) + "'");
}

int QuantumCircuit::one_qubit_count() const {
    return int(std::count_if(gates.begin(), gates.end(), [](const Gate &g) { return g.is_one_qubit(); }));
}

int QuantumCircuit::two_qubit_count() const {
    return int(std::count_if(gates.begin(), gates.end(), [](const Gate &g) { return g.is_two_qubit(); }));
}

QuantumCircuit generate_rqc(const CouplingMap &coupling, int g1, double p1, RandomSource &rng) {
    if (coupling.edges.empty()) throw Error(ErrorCode::InvalidArgument, "coupling map has no edges");
    if (!(p1 > 0.0 && p1 < 1.0)) throw Error(ErrorCode::InvalidArgument, "p1 must lie in (0, 1)");
    if (g1 < 0) throw Error(ErrorCode::InvalidArgument, "g1 must be >= 0");
    const int n = coupling.n;
    const long long g2 = robust_ceil((1.0 - p1) / (2.0 * p1) * g1);
    const long long y2 = robust_ceil((1.0 - p1) / 2.0 * n);

    QuantumCircuit c;
    c.n = n;
    c.coupling = coupling.name();
    long long m1 = 0, m2 = 0;
    std::set<std::pair<int, int>> previous;
    std::vector<std::size_t> order(coupling.edges.size());
    std::vector<int> qubits(static_cast<std::size_t>(n));
    while (m1 < g1 && m2 < g2) {
        const long long cap = std::min(y2, g2 - m2);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(std::span(order));
        std::vector<bool> busy(static_cast<std::size_t>(n), false);
        std::set<std::pair<int, int>> layer;
        for (std::size_t e : order) {
            if ((long long)layer.size() >= cap) break;
            const auto edge = coupling.edges[e];
            if (busy[edge.first] || busy[edge.second] || previous.count(edge)) continue;
            busy[edge.first] = busy[edge.second] = true;
            layer.insert(edge);
            c.gates.push_back(random_cnot(edge, rng));
        }
        const long long x2 = (long long)layer.size();
        const long long x1 = std::min<long long>(n - 2 * x2, g1 - m1);
        qubits.clear();
        for (int q = 0; q < n; ++q)
            if (!busy[q]) qubits.push_back(q);
        rng.shuffle(std::span(qubits));
        for (long long k = 0; k < x1; ++k) c.gates.push_back(random_one_qubit(qubits[std::size_t(k)], rng));
        m1 += x1;
        m2 += x2;
        previous = std::move(layer);
    }
    if (m1 < g1) {
        while (m1 < g1) {
            qubits.resize(std::size_t(n));
            std::iota(qubits.begin(), qubits.end(), 0);
            rng.shuffle(std::span(qubits));
            const long long x1 = std::min<long long>(n, g1 - m1);
            for (long long k = 0; k < x1; ++k) c.gates.push_back(random_one_qubit(qubits[std::size_t(k)], rng));
            m1 += x1;
        }
    } else {
        for (; m2 < g2; ++m2) c.gates.push_back(random_cnot(coupling.edges[rng.index(coupling.edges.size())], rng));
    }
    return c;
}

QuantumCircuit generate_rqc_depth(const CouplingMap &coupling, int depth, RandomSource &rng) {
    if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 0");
    const int g1 = int(robust_ceil(depth * coupling.n / 2.0));
    return generate_rqc(coupling, g1, 0.5, rng);
}

QuantumCircuit generate_qv(int n, int layers, RandomSource &rng) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "quantum-volume circuit needs n >= 2");
    if (layers < 1) throw Error(ErrorCode::InvalidArgument, "layers must be >= 1");
    QuantumCircuit c;
    c.n = n;
    c.coupling = "full";
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int l = 0; l < layers; ++l) {
        std::iota(labels.begin(), labels.end(), 0);
        rng.shuffle(std::span(labels));
        for (int k = 0; k + 1 < n; k += 2)
            c.gates.push_back(make_su4(labels[std::size_t(k)], labels[std::size_t(k) + 1],
                                       std::make_shared<const ComplexMatrix>(haar_unitary(4, rng))));
    }
    return c;
}

void apply_gate(ComplexMatrix &block, int num_qubits, const Gate &g) {
    switch (g.kind) {
    case GateKind::CNOT: apply_cnot(block, num_qubits, g.operands[0], g.operands[1]); return;
    case GateKind::ZPhase: {
        const double s = g.adjoint ? -1.0 : 1.0;
        apply_diag_1q(block, num_qubits, g.operands[0], std::polar(1.0, s * g.params[0]),
                      std::polar(1.0, -s * g.params[0]));
        return;
    }
    case GateKind::U1:
    case GateKind::U2:
    case GateKind::U3: apply_1q(block, num_qubits, g.operands[0], Eigen::Matrix2cd(gate_matrix(g))); return;
    case GateKind::SU4:
        apply_2q(block, num_qubits, g.operands[0], g.operands[1], Eigen::Matrix4cd(gate_matrix(g)));
        return;
    case GateKind::Unitary:
        if (g.adjoint)
            block = g.matrix->adjoint() * block;
        else
            block = *g.matrix * block;
        return;
    }
}

void apply_gate(ComplexVector &state, int num_qubits, const Gate &g) {
    if (g.kind == GateKind::Unitary) {
        state = g.adjoint ? ComplexVector(g.matrix->adjoint() * state) : ComplexVector(*g.matrix * state);
        return;
    }
    switch (g.kind) {
    case GateKind::CNOT: apply_cnot(state, num_qubits, g.operands[0], g.operands[1]); return;
    case GateKind::ZPhase: {
        const double s = g.adjoint ? -1.0 : 1.0;
        apply_diag_1q(state, num_qubits, g.operands[0], std::polar(1.0, s * g.params[0]),
                      std::polar(1.0, -s * g.params[0]));
        return;
    }
    case GateKind::SU4:
        apply_2q(state, num_qubits, g.operands[0], g.operands[1], Eigen::Matrix4cd(gate_matrix(g)));
        return;
    default: apply_1q(state, num_qubits, g.operands[0], Eigen::Matrix2cd(gate_matrix(g))); return;
    }
}

ComplexMatrix circuit_unitary(const QuantumCircuit &c) {
    if (c.n < 1 || c.n > kMaxDenseQubits)
        throw Error(ErrorCode::CapacityError,
                    "dense assembly supports 1.." + std::to_string(kMaxDenseQubits) + " qubits, got " + std::to_string(c.n));
    const Eigen::Index dim = Eigen::Index(1) << c.n;
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    for (const Gate &g : c.gates) {
        validate_gate(g, c.n);
        apply_gate(u, c.n, g);
    }
    return u;
}

QuantumCircuit inverse(const QuantumCircuit &c) {
    QuantumCircuit out;
    out.n = c.n;
    out.coupling = c.coupling;
    out.gates.reserve(c.gates.size());
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        Gate g = *it;
        switch (g.kind) {
        // Closed-form inverses keep the gate set; U3(t,p,l)^-1 = U3(-t,-l,-p).
        case GateKind::U1: g.params[0] = -g.params[0]; break;
        case GateKind::U2:
            g = make_u3(g.operands[0], -std::numbers::pi / 2, -g.params[1], -g.params[0]);
            break;
        case GateKind::U3: g.params = {-g.params[0], -g.params[2], -g.params[1]}; break;
        case GateKind::ZPhase: g.params[0] = -g.params[0]; break;
        case GateKind::CNOT: break;
        case GateKind::SU4:
        case GateKind::Unitary: g.adjoint = !g.adjoint; break;
        }
        out.gates.push_back(std::move(g));
    }
    return out;
}

ColumnStats column_stats(const ComplexVector &column) {
    ColumnStats s;
    for (Eigen::Index i = 0; i < column.size(); ++i) {
        const double p = std::norm(column(i));
        double pk = p;
        for (int k = 0; k < 5; ++k, pk *= p) s.moments[std::size_t(k)] += pk;
        if (p > 0.0) s.entropy -= p * std::log(p);
    }
    return s;
}

ColumnStats column_stats(const ComplexMatrix &u) {
    if (unitarity_error(u) > kUnitarityTolerance) throw Error(ErrorCode::NotUnitary, "column_stats needs a unitary");
    return column_stats(ComplexVector(u.col(0)));
}

HaarReference haar_reference(int k, long long dim) {
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    if (k < 1 || k > 8) throw Error(ErrorCode::InvalidArgument, "haar_reference supports 1 <= k <= 8");
    if (dim < 1) throw Error(ErrorCode::InvalidDimension, "haar_reference needs N >= 1");
    const cpp_int n = dim;

    cpp_rational moment = 1;
    for (int i = 1; i <= k - 1; ++i) moment *= cpp_rational(1 + i, n + i);

    cpp_int binom = 1;
    for (int i = 1; i <= k; ++i) binom = binom * (k + i) / i;
    cpp_rational prod = 1;
    for (int i = k; i <= 2 * k - 1; ++i) prod *= cpp_rational(n - k + i, n + i);
    const cpp_rational variance = (cpp_rational(binom, n) + cpp_rational(n - 1, n)) * prod - 1;

    // Pairwise summation keeps operand sizes balanced.
    std::vector<cpp_rational> terms;
    terms.reserve(std::size_t(std::max<long long>(dim - 1, 0)));
    for (long long i = 2; i <= dim; ++i) terms.emplace_back(1, i);
    while (terms.size() > 1) {
        std::vector<cpp_rational> next;
        next.reserve((terms.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
        if (terms.size() % 2) next.push_back(terms.back());
        terms.swap(next);
    }
    const cpp_rational entropy = terms.empty() ? cpp_rational(0) : terms.front();

    HaarReference out;
    out.moment = moment.convert_to<double>();
    out.variance = variance.convert_to<double>();
    out.entropy = entropy.convert_to<double>();
    return out;
}

std::string to_json(const QuantumCircuit &c) {
    std::string out = "{\n  \"n\": " + std::to_string(c.n) + ",\n  \"coupling\": " + quote_json(c.coupling) +
                      ",\n  \"counts\": {\"g1\": " + std::to_string(c.one_qubit_count()) +
                      ", \"g2\": " + std::to_string(c.two_qubit_count()) + "},\n  \"gates\": [";
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate &g = c.gates[i];
        validate_gate(g, c.n);
        out += i ? ",\n    " : "\n    ";
        out += "{\"kind\": " + quote_json(to_string(g.kind));
        out += ", \"params\": " + format_real_array(g.params);
        out += ", \"operands\": [";
        for (std::size_t k = 0; k < g.operands.size(); ++k) out += (k ? ", " : "") + std::to_string(g.operands[k]);
        out += "]";
        if (g.matrix) {
            const ComplexMatrix m = gate_matrix(g);
            std::vector<double> flat;
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                for (Eigen::Index k = 0; k < m.cols(); ++k) {
                    flat.push_back(m(r, k).real());
                    flat.push_back(m(r, k).imag());
                }
            out += ", \"matrix\": " + format_real_array(flat);
        }
        out += "}";
    }
    out += c.gates.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

QuantumCircuit circuit_from_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        QuantumCircuit c;
        c.n = j.at("n").get<int>();
        if (c.n < 1 || c.n > 30) throw Error(ErrorCode::InvalidArgument, "circuit qubit count out of range");
        c.coupling = j.value("coupling", std::string());
        for (const auto &jg : j.at("gates")) {
            Gate g;
            g.kind = gate_kind_from_string(jg.at("kind").get<std::string>());
            g.params = jg.value("params", std::vector<double>{});
            g.operands = jg.at("operands").get<std::vector<int>>();
            if (jg.contains("matrix")) {
                const auto flat = jg.at("matrix").get<std::vector<double>>();
                const auto dim = Eigen::Index(std::llround(std::sqrt(double(flat.size() / 2))));
                if (std::size_t(2 * dim * dim) != flat.size())
                    throw Error(ErrorCode::InvalidArgument, "gate matrix must be square");
                ComplexMatrix m(dim, dim);
                for (Eigen::Index r = 0; r < dim; ++r)
                    for (Eigen::Index k = 0; k < dim; ++k) {
                        const std::size_t at = std::size_t(2 * (r * dim + k));
                        m(r, k) = Complex(flat[at], flat[at + 1]);
                    }
                if (unitarity_error(m) > kUnitarityTolerance)
                    throw Error(ErrorCode::NotUnitary, "gate matrix is not unitary");
                g.matrix = std::make_shared<const ComplexMatrix>(std::move(m));
            }
            validate_gate(g, c.n);
            c.gates.push_back(std::move(g));
        }
        if (j.contains("counts")) {
            const auto &counts = j.at("counts");
            if (counts.value("g1", c.one_qubit_count()) != c.one_qubit_count() ||
                counts.value("g2", c.two_qubit_count()) != c.two_qubit_count())
                throw Error(ErrorCode::InvalidArgument, "gate counts do not match the gate list");
        }
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::InvalidArgument, std::string("bad circuit file: ") + e.what());
    }
}

} // namespace hsbench
