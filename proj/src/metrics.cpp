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

#include "hsbench/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace hsbench {

namespace {

constexpr double kZ95 = 1.96;
constexpr double kDegenerate = 1e-15;

ClampedEstimate ratio_estimate(double num, double den, double se) {
    if (!(std::abs(den) >= kDegenerate))
        throw Error(ErrorCode::IllConditioned, "sXES fidelity denominator vanishes");
    ClampedEstimate e;
    e.raw = num / den;
    e.value = std::clamp(e.raw, 0.0, 1.0);
    e.standard_error = se / std::abs(den);
    return e;
}

} // namespace

QuesReport ques(std::span<const double> per_instance) {
    if (per_instance.size() < 2) throw Error(ErrorCode::InvalidArgument, "QUES needs at least 2 instances");
    QuesReport r;
    r.per_instance.assign(per_instance.begin(), per_instance.end());
    double sum = 0.0;
    for (double v : per_instance) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "QUES input must be finite");
        sum += v;
    }
    const double m = double(per_instance.size());
    r.mean = sum / m;
    double ss = 0.0;
    for (double v : per_instance) ss += (v - r.mean) * (v - r.mean);
    r.standard_error = std::sqrt(ss / (m - 1.0) / m);
    r.ci95 = kZ95 * r.standard_error;
    return r;
}

double bootstrap_ci95(std::span<const double> values, int resamples, RandomSource &rng) {
    if (values.size() < 2 || resamples < 20) throw Error(ErrorCode::InvalidArgument, "bootstrap needs >= 2 values");
    std::vector<double> means(static_cast<std::size_t>(resamples));
    for (auto &mean : means) {
        double sum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) sum += values[rng.index(values.size())];
        mean = sum / double(values.size());
    }
    std::sort(means.begin(), means.end());
    const auto at = [&](double q) { return means[std::size_t(std::lround(q * double(resamples - 1)))]; };
    return 0.5 * (at(0.975) - at(0.025));
}

double ancilla_zero_fraction(const Histogram &h) {
    if (h.shots == 0 || h.counts.empty()) throw Error(ErrorCode::InvalidArgument, "empty histogram");
    std::uint64_t zero = 0;
    for (std::size_t i = 0; i < h.counts.size() / 2; ++i) zero += h.counts[i];
    return double(zero) / double(h.shots);
}

double sxes(const OutputDistribution &noiseless, const RealVector &p_exp) {
    const Eigen::Index half = noiseless.p.size();
    if (p_exp.size() != half && p_exp.size() != 2 * half)
        throw Error(ErrorCode::InvalidDimension, "p_exp must cover 2^n or 2^{n+1} strings");
    return noiseless.p.tail(half - 1).dot(p_exp.segment(1, half - 1));
}

ClampedEstimate alpha_from_sxes(double mean_sxes, int n, const haar::HMoments &analytics, double se) {
    const double uniform = std::ldexp(1.0, -(n + 1));
    return ratio_estimate(mean_sxes - uniform * analytics.rest_mean,
                          analytics.rest_second - uniform * analytics.rest_mean, se);
}

ClampedEstimate alpha_from_sxes_empirical(double mean_sxes, int n, double mean_sum_p, double mean_sum_p2,
                                          double se) {
    const double uniform = std::ldexp(1.0, -(n + 1));
    return ratio_estimate(mean_sxes - uniform * mean_sum_p, mean_sum_p2 - uniform * mean_sum_p, se);
}

QuesFidelity alpha_from_ques(double q, double eps) {
    if (!(eps >= 0.0 && eps < 0.125)) throw Error(ErrorCode::InvalidArgument, "eps must lie in [0, 1/8)");
    QuesFidelity f;
    f.alpha = 2.0 * q - 1.0;
    f.lower = (2.0 * (1.0 - 2.0 * eps) * q - 1.0) / (1.0 + 2.0 * eps);
    f.upper = (2.0 * q - (1.0 - 2.0 * eps)) / (1.0 - 8.0 * eps);
    return f;
}

double SupremacyParams::b(double alpha) const {
    if (!alpha_star) return 1.0;
    return 1.0 + gamma * (alpha - *alpha_star) / (alpha + 1.0);
}

SupremacyParams supremacy_params(double h1, double h2, int n) {
    SupremacyParams s;
    s.h1 = h1;
    s.h2 = h2;
    s.size = 1LL << n;
    s.gamma = haar::gamma_of(h1, h2);
    if (s.gamma != 0.0) s.alpha_star = h1 / s.gamma;
    if (s.size >= 4) s.b0_from_moments = 1.0 - haar::moments_from_h(0.0, s.size, h1, h2).p0_mean;
    return s;
}

HardnessResult hardness_check(double q, double alpha_star, double gamma, double eps) {
    HardnessResult r;
    r.margin = q - 0.5 * (1.0 + alpha_star);
    r.hard = gamma > 0.0 && r.margin >= 0.0;
    r.robust = gamma > 0.0 && alpha_from_ques(q, eps).lower >= alpha_star;
    return r;
}

} // namespace hsbench
