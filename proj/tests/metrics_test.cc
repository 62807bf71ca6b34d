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

#include <cmath>
#include <limits>
#include <vector>

#include "hsbench/haar_analytics.hpp"
#include "hsbench/metrics.hpp"
#include "hsbench/mqsvt.hpp"
#include "hsbench/noise.hpp"
#include "hsbench/qsp.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace hsbench {
namespace {

using hsbench::testing::throws_code;

OutputDistribution distribution(const RealVector &p, const RealVector &rest) {
    OutputDistribution d;
    d.n = int(std::log2(double(p.size())));
    d.p = p;
    d.ancilla1 = rest;
    d.success = p.sum();
    return d;
}

TEST(Ques, MeanAndNormalInterval) {
    const std::vector<double> ones(10, 1.0);
    const auto perfect = ques(ones);
    EXPECT_EQ(perfect.mean, 1.0);
    EXPECT_EQ(perfect.ci95, 0.0);

    RandomSource rng(1);
    std::vector<double> v(200);
    for (auto &x : v) x = 0.7 + 0.1 * rng.normal();
    const auto r = ques(v);
    const auto s = oracle::stat(v);
    EXPECT_NEAR(r.mean, s.mean, 1e-14);
    EXPECT_NEAR(r.standard_error, s.se, 1e-14);
    EXPECT_NEAR(r.ci95, 1.96 * s.se, 1e-14);
    EXPECT_EQ(r.per_instance, v);
    EXPECT_NEAR(bootstrap_ci95(v, 4000, rng), r.ci95, 0.15 * r.ci95);

    EXPECT_TRUE(throws_code([] { (void)ques(std::vector<double>{}); }, ErrorCode::InvalidArgument));
    EXPECT_TRUE(throws_code([] { (void)ques(std::vector<double>{0.5}); }, ErrorCode::InvalidArgument));
    EXPECT_TRUE(throws_code([] { (void)ques(std::vector<double>{0.5, std::nan("")}); }, ErrorCode::InvalidArgument));
}

TEST(Ques, AncillaZeroFraction) {
    Histogram h;
    h.num_qubits = 2;
    h.shots = 10;
    h.counts = {3, 4, 2, 1};
    EXPECT_DOUBLE_EQ(ancilla_zero_fraction(h), 0.7);
    EXPECT_TRUE(throws_code([] { (void)ancilla_zero_fraction(Histogram{}); }, ErrorCode::InvalidArgument));
}

TEST(Sxes, Examples) {
    RealVector p(4), rest(4);
    p << 0.4, 0.3, 0.2, 0.05;
    rest << 0.02, 0.01, 0.01, 0.01;
    const auto d = distribution(p, rest);
    const double sum_rest = 0.3 + 0.2 + 0.05;
    EXPECT_NEAR(sxes(d, RealVector::Constant(8, 1.0 / 8.0)), sum_rest / 8.0, 1e-16);
    EXPECT_NEAR(sxes(d, p), 0.09 + 0.04 + 0.0025, 1e-16);
    EXPECT_NEAR(sxes(d, d.full()), 0.09 + 0.04 + 0.0025, 1e-16);

    RealVector point = RealVector::Zero(4);
    point(0) = 1.0;
    EXPECT_EQ(sxes(distribution(point, RealVector::Zero(4)), point), 0.0);
    EXPECT_TRUE(throws_code([&] { (void)sxes(d, RealVector::Zero(5)); }, ErrorCode::InvalidDimension));
}

TEST(AlphaFromSxes, Limits) {
    const auto m = haar::expected_bitstring_moments(2.0, 16);
    const int n = 4;
    EXPECT_NEAR(alpha_from_sxes(m.rest_second, n, m).value, 1.0, 1e-12);
    EXPECT_NEAR(alpha_from_sxes(m.rest_mean / 32.0, n, m).value, 0.0, 1e-12);
    const auto over = alpha_from_sxes(2.0 * m.rest_second, n, m, 1e-3);
    EXPECT_GT(over.raw, 1.0);
    EXPECT_EQ(over.value, 1.0);
    EXPECT_TRUE(over.clamped());
    const double den = m.rest_second - m.rest_mean / 32.0;
    EXPECT_NEAR(over.standard_error, 1e-3 / den, 1e-15);

    EXPECT_NEAR(alpha_from_sxes_empirical(0.1, 1, 0.5, 0.1).value, 1.0, 1e-15);
    EXPECT_TRUE(throws_code([] { (void)alpha_from_sxes_empirical(0.1, 1, 0.4, 0.1); }, ErrorCode::IllConditioned));
}

TEST(AlphaFromQues, ExamplesAndBounds) {
    const auto one = alpha_from_ques(1.0, 0.0);
    EXPECT_EQ(one.alpha, 1.0);
    EXPECT_EQ(one.lower, 1.0);
    EXPECT_EQ(one.upper, 1.0);
    EXPECT_EQ(alpha_from_ques(0.5, 0.0).alpha, 0.0);

    for (double eps : {1e-4, 1e-3, 1e-2}) {
        for (double q = 0.0; q <= 1.0; q += 0.01) {
            const auto f = alpha_from_ques(q, eps);
            const double width = f.upper - f.lower;
            EXPECT_LE(width, 16.0 * eps + 200.0 * eps * eps) << q;
            if (eps == 1e-3) EXPECT_LE(width, 0.017);
            if (q >= 0.375) {
                EXPECT_LE(f.lower, f.alpha + 1e-15);
                EXPECT_GE(f.upper, f.alpha - 1e-15);
            }
        }
    }
    EXPECT_TRUE(throws_code([] { (void)alpha_from_ques(0.9, 0.125); }, ErrorCode::InvalidArgument));
    EXPECT_TRUE(throws_code([] { (void)alpha_from_ques(0.9, -1e-3); }, ErrorCode::InvalidArgument));
}

// The bounds bracket the true fidelity for any P(U) in [1 - 2 eps, 1] when
// QUES follows the global-depolarizing model.
TEST(AlphaFromQues, BoundsBracketTrueFidelity) {
    for (double eps : {1e-3, 1e-2, 0.05}) {
        for (double alpha = 0.0; alpha <= 1.0; alpha += 0.05) {
            for (double pu : {1.0 - 2.0 * eps, 1.0 - eps, 1.0}) {
                const double q = alpha * pu + 0.5 * (1.0 - alpha);
                const auto f = alpha_from_ques(q, eps);
                EXPECT_LE(f.lower, alpha + 1e-12) << eps << " " << alpha << " " << pu;
                EXPECT_GE(f.upper, alpha - 1e-12) << eps << " " << alpha << " " << pu;
            }
        }
    }
}

TEST(Supremacy, Examples) {
    const auto zero = supremacy_params(0.0, 0.0, 4);
    EXPECT_EQ(zero.gamma, 2.0);
    ASSERT_TRUE(zero.alpha_star.has_value());
    EXPECT_EQ(*zero.alpha_star, 0.0);
    EXPECT_EQ(zero.b(1.0), 2.0);

    for (double h1 : {0.05, 0.2, 0.45}) {
        for (double h2 : {0.0, 0.01, 0.1}) {
            const auto s = supremacy_params(h1, h2, 6);
            EXPECT_DOUBLE_EQ(s.gamma, 2.0 - 5.0 * h1 + 4.0 * h2);
            ASSERT_TRUE(s.alpha_star.has_value());
            EXPECT_NEAR(s.b(*s.alpha_star), 1.0, 1e-15);
            if (s.gamma > 0.0)
                for (double a = 0.0; a < 1.0; a += 0.01) EXPECT_LT(s.b(a), s.b(a + 0.01));
        }
    }
    // gamma = 0: no threshold.
    const auto flat = supremacy_params(0.4, 0.0, 4);
    EXPECT_FALSE(flat.alpha_star.has_value());
}

TEST(Hardness, Examples) {
    const auto easy = hardness_check(0.6, 0.0, 2.0, 0.0);
    EXPECT_TRUE(easy.hard);
    EXPECT_NEAR(easy.margin, 0.1, 1e-15);
    for (double q : {0.5, 0.9, 1.0}) EXPECT_FALSE(hardness_check(q, 1.1, 1.5, 0.0).hard);
    const auto edge = hardness_check(0.6, 0.2, 1.5, 0.0);
    EXPECT_TRUE(edge.hard);
    EXPECT_EQ(edge.margin, 0.0);
    EXPECT_FALSE(hardness_check(0.9, 0.2, -0.5, 0.0).hard);
    EXPECT_TRUE(hardness_check(0.9, 0.5, 1.0, 1e-3).robust);
    EXPECT_FALSE(hardness_check(0.7501, 0.5, 1.0, 1e-2).robust);
}

// Synthetic data under global depolarizing at known alpha: both estimators
// recover alpha within 3 combined standard errors, and QUES stays above
// 1/2 - 8 eps.
TEST(Estimators, RecoverGlobalDepolarizingFidelity) {
    const int n = 3, instances = 60;
    const std::uint64_t shots = 100000;
    const double t = 2.0;
    RandomSource rng(7);
    const auto seq = qsp::solve_phases(t, 20, 1e-6, rng);
    const double eps = seq.sup_error;
    const auto analytics = haar::expected_bitstring_moments(t, 1LL << n);

    std::vector<OutputDistribution> dists;
    for (int i = 0; i < instances; ++i)
        dists.push_back(output_distribution(make_instance(n, haar_unitary(16, rng), seq)));

    for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
        std::vector<double> q(instances), s(instances);
        for (int i = 0; i < instances; ++i) {
            const RealVector pexp = global_depolarize(dists[std::size_t(i)], alpha);
            const Histogram h = sample_histogram(pexp, n + 1, shots, rng);
            q[std::size_t(i)] = ancilla_zero_fraction(h);
            s[std::size_t(i)] = sxes(dists[std::size_t(i)], h.frequencies());
        }
        const auto qr = ques(q);
        const auto sx = oracle::stat(s);
        const auto fq = alpha_from_ques(qr.mean, eps);
        EXPECT_LE(std::abs(fq.alpha - alpha), 3.0 * 2.0 * qr.standard_error + 2.0 * eps + 1e-12) << alpha;
        const auto fs = alpha_from_sxes(sx.mean, n, analytics, sx.se);
        EXPECT_LE(std::abs(fs.raw - alpha), 3.0 * fs.standard_error) << alpha;
        EXPECT_GE(qr.mean, 0.5 - 8.0 * eps - 3.0 * qr.standard_error);
    }
}

} // namespace
} // namespace hsbench
