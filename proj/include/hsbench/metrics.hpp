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
#include <optional>
#include <span>
#include <vector>

#include "hsbench/haar_analytics.hpp"
#include "hsbench/mqsvt.hpp"
#include "hsbench/noise.hpp"

namespace hsbench {

/// Ensemble mean of the ancilla-0 probability with a normal-approximation
/// 95% half-width over instances.
struct QuesReport {
    double mean = 0.0;
    double ci95 = 0.0;
    double standard_error = 0.0;
    std::vector<double> per_instance;
    int n = 0;
    int d = 0;
    double t = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

[[nodiscard]] QuesReport ques(std::span<const double> per_instance);

/// Percentile-bootstrap 95% half-width of the mean (half the 2.5..97.5 span).
[[nodiscard]] double bootstrap_ci95(std::span<const double> values, int resamples, RandomSource &rng);

/// Fraction of shots with the ancilla (most significant bit) equal to 0.
[[nodiscard]] double ancilla_zero_fraction(const Histogram &h);

/// sum_{x != 0^n} p(U, x) p_exp(x). `p_exp` covers either the 2^n
/// ancilla-0 strings or all 2^{n+1} strings (ancilla most significant).
[[nodiscard]] double sxes(const OutputDistribution &noiseless, const RealVector &p_exp);

/// A fidelity estimate kept both raw and clamped to [0, 1].
struct ClampedEstimate {
    double raw = 0.0;
    double value = 0.0;
    double standard_error = 0.0;
    [[nodiscard]] bool clamped() const noexcept { return raw != value; }
};

/// (sXES - E[sum p] / 2^{n+1}) / (E[sum p^2] - E[sum p] / 2^{n+1}) with the
/// expectations over x != 0^n taken from the Haar closed forms.
[[nodiscard]] ClampedEstimate alpha_from_sxes(double mean_sxes, int n, const haar::HMoments &analytics,
                                              double sxes_standard_error = 0.0);

/// The same estimator with per-instance classical sums in the denominator.
[[nodiscard]] ClampedEstimate alpha_from_sxes_empirical(double mean_sxes, int n, double mean_sum_p,
                                                        double mean_sum_p2, double sxes_standard_error = 0.0);

struct QuesFidelity {
    double alpha = 0.0; ///< 2 QUES - 1
    double lower = 0.0;
    double upper = 0.0;
};

/// alpha = 2 QUES - 1 with the bounds implied by P(U) in [1 - 2 eps, 1].
[[nodiscard]] QuesFidelity alpha_from_ques(double ques_value, double eps);

struct FidelityEstimates {
    QuesFidelity ques;
    ClampedEstimate sxes;
    ClampedEstimate sxes_empirical;
    double ref = 0.0;
};

/// gamma, alpha* and b(alpha) = 1 + gamma (alpha - alpha*) / (alpha + 1).
struct SupremacyParams {
    double h1 = 0.0;
    double h2 = 0.0;
    long long size = 0;
    double gamma = 0.0;
    std::optional<double> alpha_star;
    /// 1 - E[p(U, 0^n)], the alpha = 0 value from the bit-string moments.
    double b0_from_moments = 0.0;

    [[nodiscard]] double b(double alpha) const;
};

[[nodiscard]] SupremacyParams supremacy_params(double h1, double h2, int n);

struct HardnessResult {
    bool hard = false;
    double margin = 0.0; ///< QUES - (1 + alpha*) / 2
    bool robust = false; ///< also holds for the lower fidelity bound at eps
};

[[nodiscard]] HardnessResult hardness_check(double ques_value, double alpha_star, double gamma, double eps);

} // namespace hsbench
