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

#include <Eigen/Sparse>

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "hsbench/numerics.hpp"

namespace hsbench::haar {

using SparseComplex = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

/// (1/2) int_{-1}^{1} P_i P_j P_k dx by the stable recursion: sort, then
/// lower k by 2 while k >= j - i + 2, otherwise lower (j, k) by 1 each, down
/// to F_000 = 1. Zero for odd sums and triangle violations.
[[nodiscard]] double f_triple(int i, int j, int k);

/// The slab of F_{q,j,k} with q <= max_q and j < size, the only entries the
/// kernel matrices need. Entries are filled by stepping the closed-form
/// ratios along k (and along j for the band edge), O(size * max_q^2).
class TripleProductTensor {
  public:
    TripleProductTensor(int max_q, int size);

    [[nodiscard]] int max_q() const noexcept { return max_q_; }
    [[nodiscard]] int size() const noexcept { return size_; }
    /// F_{q,j,k}; zero outside the triangle rule. Requires q <= max_q, j < size.
    [[nodiscard]] double at(int q, int j, int k) const;

  private:
    int max_q_;
    int size_;
    // values_[q][j] holds k = |j - q|, |j - q| + 2, ..., j + q.
    std::vector<std::vector<std::vector<double>>> values_;
};

/// Legendre expansion of e^{-itx} on [0, 1] in P_q(2x - 1).
struct LegendreCoeffs {
    double t = 0.0;
    int cutoff = 0; ///< D
    std::vector<Complex> c;
    /// sum_{q > D} |c_q| estimate plus the measured reconstruction error.
    double error_bound = 0.0;
    /// max |sum c_q P_q(2x-1) - e^{-itx}| on a 1000-point grid.
    double reconstruction_error = 0.0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
[[nodiscard]] GaussRule gauss_legendre(int order);

/// P_0..P_max at y.
[[nodiscard]] std::vector<double> legendre_values(int max_degree, double y);

[[nodiscard]] LegendreCoeffs legendre_coeffs(double t, double tol = 1e-13);

/// Banded kernel G_{jk} = (2j+1) sum_q c_q F_{q,j,k} and its
/// conjugate-coefficient partner, both N x N.
struct EigenKernelMatrix {
    int size = 0;
    int bandwidth = 0;
    SparseComplex g;
    SparseComplex g_conj;
};

[[nodiscard]] EigenKernelMatrix kernel_matrix(const LegendreCoeffs &coeffs, int size);
[[nodiscard]] EigenKernelMatrix kernel_matrix(const LegendreCoeffs &coeffs, const TripleProductTensor &tensor,
                                              int size);

/// H_l(t) for l in {1, 2}: the signed sum over S_{2l} contracted cycle by
/// cycle into traces of kernel-matrix products, times (N - 2l)!/N!.
[[nodiscard]] double h_moment(int l, double t, long long size);
[[nodiscard]] double h_moment(int l, const EigenKernelMatrix &kernel);

/// (1/N(N-1)...(N-k+1)) sum over distinct index tuples of
/// prod_m h_m(lambda_{i_m}) for k <= 4 functions, each given by its kernel
/// matrix; the signed permutation sum is contracted into cycle traces.
[[nodiscard]] Complex distinct_moment(std::span<const SparseComplex *const> mats, long long size);

/// Weingarten function of S_4 at dimension d >= 4, by cycle type
/// (one of {1,1,1,1}, {2,1,1}, {2,2}, {3,1}, {4}).
[[nodiscard]] double weingarten_s4(std::span<const int> cycle_type, double d);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

/// Sampled H_l from eigenvalues of A^dagger A for Haar U on n+1 qubits,
/// using power sums over distinct eigenvalue tuples.
[[nodiscard]] MonteCarloEstimate mc_h_oracle(int l, double t, int n, int samples, RandomSource &rng);

/// gamma = 2 - 5 H1 + 4 H2.
[[nodiscard]] inline double gamma_of(double h1, double h2) { return 2.0 - 5.0 * h1 + 4.0 * h2; }

struct HMoments {
    double t = 0.0;
    long long size = 0; ///< N = 2^n
    double h1 = 0.0;
    double h2 = 0.0;
    double gamma = 0.0;
    std::optional<double> alpha_star; ///< empty when gamma = 0
    double p0_mean = 0.0;             ///< E[p(U, 0^n)]
    double rest_mean = 0.0;           ///< E[sum_{x != 0} p(U, x)]
    double p0_second = 0.0;           ///< E[p(U, 0^n)^2]
    double rest_second = 0.0;         ///< E[sum_{x != 0} p(U, x)^2]
    /// The second moments as closed forms in H1 and H2 alone. These treat
    /// every pairing of g g* g g* alike and drift from the exact values at
    /// O(1/N^2).
    double p0_second_closed_form = 0.0;
    double rest_second_closed_form = 0.0;
};

/// Bit-string moments from H1 and H2; both second-moment pairs hold the
/// closed forms.
[[nodiscard]] HMoments moments_from_h(double t, long long size, double h1, double h2);

struct SecondMoments {
    double p0_second = 0.0;
    double rest_second = 0.0;
};

/// Exact E[p(U, 0^n)^2] and E[sum_{x != 0} p(U, x)^2]: Weingarten fourth
/// moments of the eigenvector matrix summed over the 15 index partitions,
/// each weighted by its distinct-eigenvalue moment at t or 2t.
[[nodiscard]] SecondMoments exact_second_moments(double t, long long size);

/// First moments from H1, second moments exact; closed forms retained.
[[nodiscard]] HMoments expected_bitstring_moments(double t, long long size);

/// J_0 by its power series (30 terms); accurate for |x| <= 12.
[[nodiscard]] double bessel_j0(double x);
/// First positive root of J_0 by bisection.
[[nodiscard]] double bessel_j0_first_root();
/// e^{-it/2} J_0(t/2).
[[nodiscard]] Complex mean_diag_evolution(double t);

struct CriticalTimes {
    std::vector<double> t;
    std::vector<double> h1;
    std::vector<double> h2;
    std::vector<double> alpha_star;
    std::vector<double> gamma;
    std::optional<double> t_thr;
    std::optional<double> t_opt;
    double alpha_star_at_opt = 0.0;
    double gamma_at_opt = 0.0;
    double t_opt_large_n = 0.0; ///< 2 x first root of J_0
};

/// Curves on the grid; t_thr is the first downward crossing of
/// alpha* = 1, t_opt the first local minimum of alpha* after it
/// (parabolic refinement on the grid).
[[nodiscard]] CriticalTimes critical_times(int n, const std::vector<double> &grid, int threads = 1);

/// Uniform grid lo, lo + step, ..., hi.
[[nodiscard]] std::vector<double> uniform_grid(double lo, double hi, double step);

struct LevelDensityReport {
    double ks = 0.0;
    double mean = 0.0;
    double mean_standard_error = 0.0;
    std::size_t count = 0;
};

/// Pooled eigenvalues of H = A^dagger A against the arcsine law.
[[nodiscard]] LevelDensityReport level_density_check(int n, int samples, RandomSource &rng);

} // namespace hsbench::haar
