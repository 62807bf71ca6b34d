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

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hsbench/io.hpp"
#include "hsbench/qsp.hpp"
#include "test_util.hpp"

namespace hsbench::qsp {
namespace {

using hsbench::testing::throws_code;
constexpr double kPi = std::numbers::pi;

/// e^{i phi_0 Z} prod_j [W(x) e^{i phi_j Z}] by explicit 2x2 products.
Eigen::Matrix2cd oracle_product(double x, const std::vector<double> &phases) {
    const double s = std::sqrt(1.0 - x * x);
    Eigen::Matrix2cd w;
    w << x, Complex(0, s), Complex(0, s), x;
    auto rz = [](double phi) {
        Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
        r(0, 0) = std::polar(1.0, phi);
        r(1, 1) = std::polar(1.0, -phi);
        return r;
    };
    Eigen::Matrix2cd m = rz(phases[0]);
    for (std::size_t j = 1; j < phases.size(); ++j) m = m * w * rz(phases[j]);
    return m;
}

/// max |P - s_t| over a uniform grid of [0, 1], independent of the library grid.
double oracle_sup_error(const std::vector<double> &qsp_phases, double t, int points = 20001) {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = double(i) / (points - 1);
        worst = std::max(worst, std::abs(oracle_product(x, qsp_phases)(0, 0) - std::polar(1.0, -t * x * x)));
    }
    return worst;
}

std::vector<double> random_phases(int count, RandomSource &rng) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (auto &p : v) p = rng.uniform(-kPi, kPi);
    return v;
}

PhaseFactorSequence load(const std::string &name) {
    return phase_sequence_from_json(read_text_file(std::string(HSBENCH_DATA_DIR) + "/" + name));
}

TEST(QspEval, SingleSignalFactor) {
    for (double x : {-1.0, -0.4, 0.0, 0.3, 1.0}) {
        const auto v = qsp_eval(x, std::vector<double>{0.0, 0.0});
        EXPECT_NEAR(std::abs(v.p - Complex(x)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(v.q - Complex(1.0)), 0.0, 1e-15);
    }
}

TEST(QspEval, TwoSignalFactors) {
    const auto v = qsp_eval(0.3, std::vector<double>{0.0, 0.0, 0.0});
    EXPECT_NEAR(v.p.real(), -0.82, 1e-15);
    EXPECT_NEAR(v.p.imag(), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v.q - Complex(0.6)), 0.0, 1e-15);
}

TEST(QspEval, AtOneIsPhaseSum) {
    RandomSource rng(1);
    const auto phi = random_phases(9, rng);
    double sum = 0.0;
    for (double p : phi) sum += p;
    EXPECT_NEAR(std::abs(qsp_eval(1.0, phi).p - std::polar(1.0, sum)), 0.0, 1e-13);
}

TEST(QspEval, RejectsOutsideDomain) {
    EXPECT_TRUE(throws_code([] { (void)qsp_eval(1.0001, std::vector<double>{0.0}); }, ErrorCode::DomainError));
    EXPECT_TRUE(throws_code([] { (void)qsp_eval(0.1, std::vector<double>{}); }, ErrorCode::MalformedSequence));
}

TEST(QspEval, MatchesExplicitProductAndIsUnitary) {
    RandomSource rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto phi = random_phases(1 + int(rng.index(30)), rng);
        for (int i = 0; i <= 40; ++i) {
            const double x = -1.0 + i / 20.0;
            const auto v = qsp_eval(x, phi);
            const auto m = oracle_product(x, phi);
            ASSERT_LE((v.unitary - m).cwiseAbs().maxCoeff(), 1e-12);
            ASSERT_NEAR(std::norm(v.p) + (1.0 - x * x) * std::norm(v.q), 1.0, 1e-10);
            ASSERT_NEAR(std::abs(qsp_poly(x, phi) - v.p), 0.0, 1e-13);
        }
    }
}

TEST(QspEval, EvenDegreeHasEvenParity) {
    RandomSource rng(3);
    for (int d : {2, 6, 12, 20}) {
        const auto phi = random_phases(d + 1, rng);
        for (int i = 0; i < 25; ++i) {
            const double x = rng.uniform();
            ASSERT_NEAR(std::abs(qsp_poly(x, phi) - qsp_poly(-x, phi)), 0.0, 1e-10);
        }
    }
}

TEST(ReducePhase, LandsInHalfOpenInterval) {
    for (double phi : {-100.0, -kPi, -1.0, 0.0, 1.0, kPi, 3 * kPi, 1e6}) {
        const double r = reduce_phase(phi);
        EXPECT_GE(r, -kPi);
        EXPECT_LT(r, kPi);
        EXPECT_NEAR(std::remainder(r - phi, 2 * kPi), 0.0, 1e-9);
    }
}

TEST(Objective, ZeroTimeIdentity) {
    const auto v = objective(std::vector<double>{0.0}, 0.0);
    EXPECT_EQ(v.value, 0.0);
}

TEST(Objective, NodesArePositiveChebyshevNodes) {
    for (int d : {0, 4, 9, 10}) {
        const auto nodes = objective_nodes(d);
        const int m = (d + 2) / 2;
        ASSERT_EQ(int(nodes.size()), m);
        for (int k = 1; k <= m; ++k)
            EXPECT_NEAR(nodes[std::size_t(k - 1)], std::cos((2.0 * k - 1.0) * kPi / (4.0 * m)), 1e-15);
    }
}

TEST(Objective, ValueIsMeanSquaredDeviation) {
    RandomSource rng(4);
    const auto phi = random_phases(9, rng);
    const auto nodes = objective_nodes(8);
    double sum = 0.0;
    for (double x : nodes) sum += std::norm(oracle_product(x, phi)(0, 0) - std::polar(1.0, -x * x));
    EXPECT_NEAR(objective(phi, 1.0).value, sum / double(nodes.size()), 1e-14);
}

TEST(Objective, GradientMatchesCentralDifferences) {
    RandomSource rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const auto phi = random_phases(9, rng);
        const auto v = objective(phi, 1.0);
        Eigen::VectorXd fd(phi.size());
        const double h = 1e-6;
        for (std::size_t j = 0; j < phi.size(); ++j) {
            auto up = phi, dn = phi;
            up[j] += h;
            dn[j] -= h;
            fd(Eigen::Index(j)) = (objective(up, 1.0).value - objective(dn, 1.0).value) / (2 * h);
        }
        EXPECT_LE((v.gradient - fd).norm() / fd.norm(), 1e-5);
    }
}

TEST(Objective, JacobianConsistentWithGradient) {
    RandomSource rng(6);
    const auto phi = random_phases(11, rng);
    const auto rj = residual_jacobian(phi, 2.0);
    const auto v = objective(phi, 2.0);
    EXPECT_NEAR(rj.residual.squaredNorm(), v.value, 1e-14);
    EXPECT_LE((2.0 * rj.jacobian.transpose() * rj.residual - v.gradient).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SolvePhases, ReachesPublishedAccuracy) {
    struct Case {
        double t;
        int d;
        double bound;
    };
    for (const Case &c : {Case{1.0, 10, 1.6e-5}, Case{1.0, 20, 3.3e-8}, Case{4.8096, 10, 3.1e-2}}) {
        RandomSource rng(11);
        const auto seq = solve_phases(c.t, c.d, c.bound, rng);
        EXPECT_EQ(seq.convention, Convention::Qsp);
        EXPECT_EQ(seq.degree, c.d);
        EXPECT_EQ(int(seq.phases.size()), c.d + 1);
        EXPECT_LE(seq.sup_error, c.bound);
        // Certified error agrees with an independent dense grid.
        const double dense = oracle_sup_error(seq.phases, c.t);
        EXPECT_LE(dense, seq.sup_error * 1.0001 + 1e-15);
        EXPECT_GE(dense, seq.sup_error * 0.99);
        for (double p : seq.phases) {
            EXPECT_GE(p, -kPi);
            EXPECT_LT(p, kPi);
        }
    }
}

TEST(SolvePhases, DeterministicForSeed) {
    RandomSource a(3), b(3);
    const auto x = solve_phases(1.0, 8, 1e-3, a);
    const auto y = solve_phases(1.0, 8, 1e-3, b);
    EXPECT_EQ(x.phases, y.phases);
}

TEST(SolvePhases, ConvergenceFailureCarriesBest) {
    RandomSource rng(1);
    SolveOptions opts;
    opts.max_restarts = 0;
    try {
        (void)solve_phases(1.0, 6, 1e-12, rng, opts);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError &e) {
        EXPECT_EQ(e.code(), ErrorCode::ConvergenceFailure);
        EXPECT_EQ(int(e.best().phases.size()), 7);
        EXPECT_GT(e.best().sup_error, 1e-12);
        EXPECT_NEAR(e.best().sup_error, oracle_sup_error(e.best().phases, 1.0), 1e-6);
    }
}

TEST(SolvePhases, RejectsBadArguments) {
    RandomSource rng(1);
    EXPECT_TRUE(throws_code([&] { (void)solve_phases(1.0, 5, 1e-3, rng); }, ErrorCode::InvalidArgument));
    EXPECT_TRUE(throws_code([&] { (void)solve_phases(1.0, 6, 0.0, rng); }, ErrorCode::InvalidArgument));
}

PhaseFactorSequence qsp_sequence(std::vector<double> phases, double t = 1.0) {
    PhaseFactorSequence s;
    s.degree = int(phases.size()) - 1;
    s.phases = std::move(phases);
    s.time = t;
    return s;
}

TEST(ConvertConvention, UniformRuleShifts) {
    const auto seq = qsp_sequence({0.1, -0.2, 0.3});
    const auto c = convert_convention(seq, Convention::Circuit, ShiftRule::Uniform);
    EXPECT_EQ(c.convention, Convention::Circuit);
    EXPECT_NEAR(c.phases[0], 0.1 + kPi / 4, 1e-15);
    EXPECT_NEAR(c.phases[1], -0.2 + kPi / 2, 1e-15);
    EXPECT_NEAR(c.phases[2], 0.3 + kPi / 4, 1e-15);
}

TEST(ConvertConvention, AlternatingRuleShifts) {
    const auto seq = qsp_sequence({0.1, -0.2, 0.3, 0.4, 0.5});
    const auto c = convert_convention(seq, Convention::Circuit, ShiftRule::Alternating);
    const double expect[] = {0.1 + kPi / 4, -0.2 - kPi / 2, 0.3 + kPi / 2, 0.4 - kPi / 2, 0.5 + kPi / 4};
    for (int i = 0; i < 5; ++i)
        EXPECT_NEAR(std::remainder(c.phases[std::size_t(i)] - expect[i], 2 * kPi), 0.0, 1e-14);
}

TEST(ConvertConvention, RoundTripIsIdentity) {
    RandomSource rng(7);
    for (ShiftRule rule : {ShiftRule::Alternating, ShiftRule::Uniform}) {
        const auto seq = qsp_sequence(random_phases(15, rng));
        const auto back = convert_convention(convert_convention(seq, Convention::Circuit, rule), Convention::Qsp);
        for (std::size_t i = 0; i < seq.phases.size(); ++i)
            EXPECT_NEAR(std::remainder(back.phases[i] - seq.phases[i], 2 * kPi), 0.0, 1e-13);
    }
}

TEST(ConvertConvention, RejectsMalformedInput) {
    auto seq = qsp_sequence({0.1, 0.2, 0.3});
    EXPECT_TRUE(throws_code([&] { (void)convert_convention(seq, Convention::Qsp); }, ErrorCode::InvalidArgument));
    seq.phases.push_back(0.0);
    EXPECT_TRUE(throws_code([&] { validate(seq); }, ErrorCode::MalformedSequence));
}

TEST(Concatenate, SingleRepetitionIsUnchanged) {
    RandomSource rng(8);
    const auto seq = qsp_sequence(random_phases(7, rng));
    EXPECT_EQ(concatenate(seq, 1).phases, seq.phases);
}

TEST(Concatenate, PhaseLayout) {
    const auto seq = qsp_sequence({0.1, 0.2, 0.3});
    const auto r2 = concatenate(seq, 2);
    const std::vector<double> expect = {0.1, 0.2, 0.4, 0.2, 0.3};
    ASSERT_EQ(r2.phases.size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(r2.phases[i], expect[i], 1e-15);
    EXPECT_EQ(r2.degree, 4);
    EXPECT_DOUBLE_EQ(r2.time, 2.0);
    EXPECT_TRUE(throws_code([&] { (void)concatenate(seq, 0); }, ErrorCode::InvalidArgument));
}

TEST(Concatenate, ErrorObeysQuadraticBound) {
    RandomSource rng(14);
    const auto base = solve_phases(1.0, 14, 1e-6, rng);
    for (int r = 2; r <= 10; ++r) {
        const auto c = concatenate(base, r);
        EXPECT_DOUBLE_EQ(c.time, r * 1.0);
        EXPECT_LE(c.sup_error, r * r * base.sup_error) << r;
        EXPECT_NEAR(c.sup_error, oracle_sup_error(c.phases, c.time), 0.01 * c.sup_error + 1e-14);
    }
}

TEST(PublishedPhases, ReproduceStatedErrors) {
    const auto start = std::chrono::steady_clock::now();
    for (const char *name : {"phases_topt_d10.json", "phases_topt_d18.json", "phases_topt_d26.json"}) {
        const auto seq = load(name);
        EXPECT_EQ(seq.convention, Convention::Circuit);
        const double measured = measured_sup_error(seq);
        EXPECT_LE(std::abs(measured - seq.sup_error), 0.05 * seq.sup_error) << name << " measured " << measured;
    }
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 5.0);
}

TEST(PhaseFile, RoundTripIsExact) {
    RandomSource rng(9);
    auto seq = qsp_sequence(random_phases(11, rng), 1.25);
    seq.sup_error = 1.0 / 3.0;
    seq.meta.seed = 77;
    seq.meta.iterations = 12;
    for (const auto &s : {seq, convert_convention(seq, Convention::Circuit, ShiftRule::Uniform)}) {
        const auto back = phase_sequence_from_json(to_json(s));
        EXPECT_EQ(back.phases, s.phases);
        EXPECT_EQ(back.convention, s.convention);
        EXPECT_EQ(back.degree, s.degree);
        EXPECT_EQ(back.time, s.time);
        EXPECT_EQ(back.sup_error, s.sup_error);
        EXPECT_EQ(back.meta.seed, 77u);
    }
}

TEST(PhaseFile, RejectsInvalidDocuments) {
    EXPECT_TRUE(throws_code([] { (void)phase_sequence_from_json("not json"); }, ErrorCode::MalformedSequence));
    EXPECT_TRUE(throws_code(
        [] {
            (void)phase_sequence_from_json(
                R"({"t": 1, "d": 2, "convention": "qsp", "phases": [0, 0], "sup_error": 0})");
        },
        ErrorCode::MalformedSequence));
    EXPECT_TRUE(throws_code(
        [] {
            (void)phase_sequence_from_json(
                R"({"t": 1, "d": 2, "convention": "qsp", "phases": [0, 0, 0], "sup_error": -1})");
        },
        ErrorCode::MalformedSequence));
}

} // namespace
} // namespace hsbench::qsp
