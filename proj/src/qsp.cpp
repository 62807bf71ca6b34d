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

#include "hsbench/qsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hsbench/optimize.hpp"

namespace hsbench::qsp {

namespace {

constexpr double kPi = std::numbers::pi;

// Rows of e^{i phi Z} act diagonally: (e^{i phi}, e^{-i phi}).
inline Complex phase(double phi) { return std::polar(1.0, phi); }

double shift_at(std::size_t i, std::size_t last, ShiftRule rule) {
    if (i == 0 || i == last) return kPi / 4;
    if (rule == ShiftRule::Uniform || i % 2 == 0) return kPi / 2;
    return -kPi / 2;
}

} // namespace

std::string_view to_string(Convention c) { return c == Convention::Qsp ? "qsp" : "circuit"; }

std::string_view to_string(ShiftRule r) { return r == ShiftRule::Alternating ? "alternating" : "uniform"; }

Convention convention_from_string(std::string_view s) {
    if (s == "qsp" || s == "QSP") return Convention::Qsp;
    if (s == "circuit" || s == "CIRCUIT") return Convention::Circuit;
    throw Error(ErrorCode::MalformedSequence, "unknown convention '" + std::string(s) + "'");
}

ShiftRule shift_rule_from_string(std::string_view s) {
    if (s == "alternating") return ShiftRule::Alternating;
    if (s == "uniform") return ShiftRule::Uniform;
    throw Error(ErrorCode::MalformedSequence, "unknown shift rule '" + std::string(s) + "'");
}

double reduce_phase(double phi) {
    double r = phi - 2 * kPi * std::floor((phi + kPi) / (2 * kPi));
    if (r >= kPi) r -= 2 * kPi;
    if (r < -kPi) r += 2 * kPi;
    return r;
}

void validate(const PhaseFactorSequence &seq) {
    if (seq.degree < 0) throw Error(ErrorCode::MalformedSequence, "negative degree");
    if (seq.phases.size() != std::size_t(seq.degree) + 1)
        throw Error(ErrorCode::MalformedSequence, "expected degree+1 phases, got " + std::to_string(seq.phases.size()));
    if (seq.convention == Convention::Circuit && seq.degree % 2 != 0)
        throw Error(ErrorCode::MalformedSequence, "circuit convention needs an even polynomial degree");
    if (!(seq.sup_error >= 0.0)) throw Error(ErrorCode::MalformedSequence, "sup_error must be >= 0");
    for (double p : seq.phases)
        if (!std::isfinite(p) || p < -kPi || p >= kPi)
            throw Error(ErrorCode::MalformedSequence, "phase outside [-pi, pi)");
}

QspPointValue qsp_eval(double x, std::span<const double> phases) {
    if (!(std::abs(x) <= 1.0)) throw Error(ErrorCode::DomainError, "qsp_eval needs |x| <= 1");
    if (phases.empty()) throw Error(ErrorCode::MalformedSequence, "empty phase sequence");
    const double s = std::sqrt(1.0 - x * x);
    Eigen::Matrix2cd w;
    w << x, Complex(0, s), Complex(0, s), x;

    Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
    u(0, 0) = phase(phases[0]);
    u(1, 1) = phase(-phases[0]);
    for (std::size_t j = 1; j < phases.size(); ++j) {
        u = u * w;
        u.col(0) *= phase(phases[j]);
        u.col(1) *= phase(-phases[j]);
    }
    QspPointValue out;
    out.unitary = u;
    out.p = u(0, 0);
    // U_01 = i Q sqrt(1 - x^2); at |x| = 1 the off-diagonal vanishes and Q is
    // taken from the derivative-free limit via a neighboring point.
    if (s > 1e-8) {
        out.q = u(0, 1) / Complex(0, s);
    } else {
        const double xn = std::copysign(1.0 - 1e-7, x);
        out.q = qsp_eval(xn, phases).q;
    }
    return out;
}

Complex qsp_poly(double x, std::span<const double> phases) {
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    // Propagate row 0 of the product.
    Complex a = phase(phases[0]);
    Complex b = 0.0;
    for (std::size_t j = 1; j < phases.size(); ++j) {
        const Complex na = a * x + b * Complex(0, s);
        const Complex nb = a * Complex(0, s) + b * x;
        a = na * phase(phases[j]);
        b = nb * phase(-phases[j]);
    }
    return a;
}

std::vector<double> objective_nodes(int degree) {
    const int m = (degree + 2) / 2;
    std::vector<double> x(m);
    for (int k = 1; k <= m; ++k) x[k - 1] = std::cos((2.0 * k - 1.0) * kPi / (4.0 * m));
    return x;
}

ResidualJacobian residual_jacobian(std::span<const double> phases, double t) {
    const std::size_t n = phases.size();
    if (n == 0) throw Error(ErrorCode::MalformedSequence, "empty phase sequence");
    const auto nodes = objective_nodes(int(n) - 1);
    const Eigen::Index m = Eigen::Index(nodes.size());
    const double scale = 1.0 / std::sqrt(double(m));

    ResidualJacobian out;
    out.residual.resize(2 * m);
    out.jacobian.resize(2 * m, Eigen::Index(n));
    std::vector<Complex> e(n), row0(n), row1(n), col0(n), col1(n);
    for (std::size_t j = 0; j < n; ++j) e[j] = phase(phases[j]);

    for (Eigen::Index k = 0; k < m; ++k) {
        const double x = nodes[std::size_t(k)];
        const Complex is(0, std::sqrt(1.0 - x * x));
        // row_j = row 0 of L_j = e^{i phi_0 Z} W ... W e^{i phi_j Z}.
        row0[0] = e[0];
        row1[0] = 0.0;
        for (std::size_t j = 1; j < n; ++j) {
            const Complex a = row0[j - 1] * x + row1[j - 1] * is;
            const Complex b = row0[j - 1] * is + row1[j - 1] * x;
            row0[j] = a * e[j];
            row1[j] = b * std::conj(e[j]);
        }
        // col_j = column 0 of R_j = W e^{i phi_{j+1} Z} ... W e^{i phi_d Z}.
        col0[n - 1] = 1.0;
        col1[n - 1] = 0.0;
        for (std::size_t j = n - 1; j > 0; --j) {
            const Complex a = e[j] * col0[j];
            const Complex b = std::conj(e[j]) * col1[j];
            col0[j - 1] = x * a + is * b;
            col1[j - 1] = is * a + x * b;
        }
        const Complex r = row0[n - 1] - target_value(x, t);
        out.residual(2 * k) = scale * r.real();
        out.residual(2 * k + 1) = scale * r.imag();
        for (std::size_t j = 0; j < n; ++j) {
            // d/dphi_j inserts iZ next to e^{i phi_j Z}.
            const Complex dp = Complex(0, 1) * (row0[j] * col0[j] - row1[j] * col1[j]);
            out.jacobian(2 * k, Eigen::Index(j)) = scale * dp.real();
            out.jacobian(2 * k + 1, Eigen::Index(j)) = scale * dp.imag();
        }
    }
    return out;
}

ObjectiveValue objective(std::span<const double> phases, double t) {
    const auto rj = residual_jacobian(phases, t);
    return {rj.residual.squaredNorm(), 2.0 * rj.jacobian.transpose() * rj.residual};
}

std::vector<double> certification_grid(int degree) {
    const int m = std::max(10 * degree + 1, 2001);
    std::vector<double> x(m);
    for (int k = 0; k < m; ++k) x[k] = std::cos(kPi * k / (2.0 * (m - 1)));
    x.back() = 0.0;
    return x;
}

double measured_sup_error(std::span<const double> qsp_phases, double t) {
    double worst = 0.0;
    for (double x : certification_grid(int(qsp_phases.size()) - 1))
        worst = std::max(worst, std::abs(qsp_poly(x, qsp_phases) - target_value(x, t)));
    return worst;
}

double measured_sup_error(const PhaseFactorSequence &seq) {
    if (seq.convention == Convention::Qsp) return measured_sup_error(seq.phases, seq.time);
    const auto q = convert_convention(seq, Convention::Qsp);
    return measured_sup_error(q.phases, q.time);
}

namespace {

// Free coordinates of the reduced search: the two ends and the odd interior
// angles. Holding even interior angles at zero makes every pair W e^{0} W a
// single W(T_2(x)), so P(x) = P~(2x^2 - 1) is parity-free QSP in T_2(x).
std::vector<Eigen::Index> reduced_coordinates(Eigen::Index n) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
        if (j == 0 || j == n - 1 || j % 2 == 1) idx.push_back(j);
    return idx;
}

std::vector<double> to_phases(const Eigen::VectorXd &x) {
    std::vector<double> phases(static_cast<std::size_t>(x.size()));
    for (Eigen::Index j = 0; j < x.size(); ++j) phases[std::size_t(j)] = reduce_phase(x(j));
    return phases;
}

} // namespace

PhaseFactorSequence solve_phases(double t, int degree, double tol, RandomSource &rng, const SolveOptions &options) {
    if (degree < 0 || degree % 2 != 0) throw Error(ErrorCode::InvalidArgument, "degree must be even and >= 0");
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
    if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "t must be finite");

    const Eigen::Index n = degree + 1;
    const auto free = reduced_coordinates(n);
    const Eigen::Index nf = Eigen::Index(free.size());

    GradientObjective full = [t](const Eigen::VectorXd &x, Eigen::VectorXd &g) {
        auto v = objective(std::span<const double>(x.data(), std::size_t(x.size())), t);
        g = std::move(v.gradient);
        return v.value;
    };
    auto expand = [&](const Eigen::VectorXd &y) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (Eigen::Index k = 0; k < nf; ++k) x(free[std::size_t(k)]) = y(k);
        return x;
    };
    GradientObjective reduced = [&](const Eigen::VectorXd &y, Eigen::VectorXd &g) {
        Eigen::VectorXd gx;
        const double f = full(expand(y), gx);
        g.resize(nf);
        for (Eigen::Index k = 0; k < nf; ++k) g(k) = gx(free[std::size_t(k)]);
        return f;
    };
    LbfgsOptions lopts;
    lopts.max_iterations = options.max_iterations;

    PhaseFactorSequence best;
    best.sup_error = std::numeric_limits<double>::infinity();
    int total_iterations = 0;
    auto consider = [&](const Eigen::VectorXd &x, int attempt) {
        auto phases = to_phases(x);
        const double err = measured_sup_error(phases, t);
        if (err < best.sup_error) {
            best.phases = std::move(phases);
            best.sup_error = err;
            best.meta.restarts = attempt;
        }
    };
    for (int attempt = 0; attempt <= options.max_restarts && best.sup_error > tol; ++attempt) {
        Eigen::VectorXd y0 = Eigen::VectorXd::Zero(nf);
        y0(0) += kPi / 4;
        y0(nf - 1) += kPi / 4;
        // Perturbations start small and widen once nearby basins are spent.
        const double amp = std::min(kPi, options.perturbation * std::exp2(std::max(0, attempt - 2)));
        if (attempt > 0)
            for (Eigen::Index k = 0; k < nf; ++k) y0(k) += rng.uniform(-amp, amp);
        const auto stage1 = lbfgs_minimize(reduced, y0, lopts);
        const Eigen::VectorXd x1 = expand(stage1.x);
        consider(x1, attempt);
        // Release the even angles for a final descent in the full space.
        const auto stage2 = lbfgs_minimize(full, x1, lopts);
        consider(stage2.x, attempt);
        total_iterations += stage1.iterations + stage2.iterations;
    }
    best.convention = Convention::Qsp;
    best.degree = degree;
    best.time = t;
    best.meta.seed = rng.seed();
    best.meta.iterations = total_iterations;
    if (best.sup_error > tol)
        throw ConvergenceError("sup-error " + std::to_string(best.sup_error) + " above tolerance after " +
                                   std::to_string(options.max_restarts) + " restarts",
                               best);
    return best;
}

PhaseFactorSequence convert_convention(const PhaseFactorSequence &seq, Convention target, ShiftRule rule) {
    validate(seq);
    if (seq.convention == target) throw Error(ErrorCode::InvalidArgument, "sequence already in target convention");
    if (seq.degree % 2 != 0) throw Error(ErrorCode::MalformedSequence, "conversion needs an even degree");
    PhaseFactorSequence out = seq;
    out.convention = target;
    const std::size_t last = seq.phases.size() - 1;
    const bool to_circuit = target == Convention::Circuit;
    const ShiftRule used = to_circuit ? rule : seq.shift_rule;
    out.shift_rule = to_circuit ? rule : ShiftRule::Alternating;
    for (std::size_t i = 0; i <= last; ++i) {
        const double s = shift_at(i, last, used);
        out.phases[i] = reduce_phase(seq.phases[i] + (to_circuit ? s : -s));
    }
    return out;
}

PhaseFactorSequence concatenate(const PhaseFactorSequence &seq, int r) {
    if (r < 1) throw Error(ErrorCode::InvalidArgument, "repetition count must be >= 1");
    validate(seq);
    if (seq.convention != Convention::Qsp) throw Error(ErrorCode::InvalidArgument, "concatenate needs QSP phases");
    if (r == 1) return seq;
    const int d = seq.degree;
    PhaseFactorSequence out = seq;
    out.phases.clear();
    out.phases.reserve(std::size_t(r) * d + 1);
    for (int j = 0; j < d; ++j) out.phases.push_back(seq.phases[j]);
    for (int k = 1; k < r; ++k) {
        out.phases.push_back(reduce_phase(seq.phases[d] + seq.phases[0]));
        for (int j = 1; j < d; ++j) out.phases.push_back(seq.phases[j]);
    }
    out.phases.push_back(seq.phases[d]);
    out.degree = r * d;
    out.time = r * seq.time;
    out.sup_error = measured_sup_error(out.phases, out.time);
    return out;
}

} // namespace hsbench::qsp
