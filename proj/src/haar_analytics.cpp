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

#include "hsbench/haar_analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "hsbench/parallel.hpp"

namespace hsbench::haar {

namespace {

constexpr double kPi = std::numbers::pi;

void sort3(int &a, int &b, int &c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
}

// F_{i,m+1,m+1-i} / F_{i,m,m-i}.
double edge_ratio(int i, int m) {
    const double s = m;
    return (2 * s + 1 - 2 * i) / (s + 1 - i) * (s + 1) / (2 * s + 3);
}

// F_{i,j,k+2} / F_{i,j,k}.
double k_ratio(int i, int j, int k) {
    const double s = 0.5 * (i + j + k);
    return (2 * s + 1 - 2 * i) / (s + 1 - i) * (2 * s + 1 - 2 * j) / (s + 1 - j) * (s - k) / (2 * s - 2 * k - 1) *
           (s + 1) / (2 * s + 3);
}

// F_{i,j,j-i} for i <= j, stepping j up from F_{i,i,0} = 1/(2i+1).
double band_edge(int i, int j) {
    double f = 1.0 / (2 * i + 1);
    for (int m = i; m < j; ++m) f *= edge_ratio(i, m);
    return f;
}

// Trace of the product of the matrices along a cycle (length <= 4).
Complex cycle_trace(const std::vector<const SparseComplex *> &mats) {
    switch (mats.size()) {
    case 1: return mats[0]->diagonal().sum();
    case 2: {
        const SparseComplex bt = mats[1]->transpose();
        return mats[0]->cwiseProduct(bt).sum();
    }
    case 3: {
        const SparseComplex ab = (*mats[0] * *mats[1]).pruned();
        const SparseComplex ct = mats[2]->transpose();
        return ab.cwiseProduct(ct).sum();
    }
    case 4: {
        const SparseComplex ab = (*mats[0] * *mats[1]).pruned();
        const SparseComplex cd = (*mats[2] * *mats[3]).pruned();
        const SparseComplex cdt = cd.transpose();
        return ab.cwiseProduct(cdt).sum();
    }
    default: throw Error(ErrorCode::InvalidArgument, "cycle longer than 4");
    }
}

// Smallest rotation of a cyclic word, so equal traces share a cache key.
std::string canonical_word(const std::string &w) {
    std::string best = w;
    for (std::size_t r = 1; r < w.size(); ++r) best = std::min(best, w.substr(r) + w.substr(0, r));
    return best;
}

// All set partitions of {0..m-1} as block lists.
void set_partitions(int m, std::vector<std::vector<std::vector<int>>> &out) {
    std::vector<int> label(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> rec = [&](int pos, int blocks) {
        if (pos == m) {
            std::vector<std::vector<int>> p(static_cast<std::size_t>(blocks));
            for (int i = 0; i < m; ++i) p[std::size_t(label[std::size_t(i)])].push_back(i);
            out.push_back(std::move(p));
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            label[std::size_t(pos)] = b;
            rec(pos + 1, std::max(blocks, b + 1));
        }
    };
    rec(0, 0);
}

RealVector block_eigenvalues(int n, RandomSource &rng) {
    const Eigen::Index half = Eigen::Index(1) << n;
    const ComplexMatrix u = haar_unitary(2 * half, rng);
    const ComplexMatrix a = u.topLeftCorner(half, half);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a.adjoint() * a, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
}

} // namespace

double f_triple(int i, int j, int k) {
    if (i < 0 || j < 0 || k < 0) return 0.0;
    sort3(i, j, k);
    if ((i + j + k) % 2 != 0 || k > i + j) return 0.0;
    double f = 1.0;
    for (;;) {
        sort3(i, j, k);
        const double s = 0.5 * (i + j + k);
        if (k >= j - i + 2) {
            f *= (2 * s - 1 - 2 * i) / (s - i) * (2 * s - 1 - 2 * j) / (s - j) * (s - k + 1) / (2 * s - 2 * k + 1) * s /
                 (2 * s + 1);
            k -= 2;
        } else if (i < j) {
            f *= (2 * s - 1 - 2 * i) / (s - i) * s / (2 * s + 1);
            j -= 1;
            k -= 1;
        } else {
            return f;
        }
    }
}

TripleProductTensor::TripleProductTensor(int max_q, int size) : max_q_(max_q), size_(size) {
    if (max_q < 0 || size < 1) throw Error(ErrorCode::InvalidArgument, "tensor needs max_q >= 0 and size >= 1");
    values_.resize(std::size_t(max_q) + 1);
    for (int q = 0; q <= max_q; ++q) {
        auto &row = values_[std::size_t(q)];
        row.resize(std::size_t(size));
        double edge = 0.0;
        for (int j = 0; j < size; ++j) {
            // Edge value F_{q,j,|j-q|}; for j >= q it follows from the previous j.
            if (j < q)
                edge = band_edge(j, q);
            else if (j == q)
                edge = 1.0 / (2 * q + 1);
            else
                edge *= edge_ratio(q, j - 1);
            auto &vals = row[std::size_t(j)];
            const int kmin = std::abs(j - q);
            vals.resize(std::size_t(std::min(q, j)) + 1);
            vals[0] = edge;
            for (std::size_t m = 1; m < vals.size(); ++m) vals[m] = vals[m - 1] * k_ratio(q, j, kmin + 2 * int(m - 1));
        }
    }
}

double TripleProductTensor::at(int q, int j, int k) const {
    if (q < 0 || q > max_q_ || j < 0 || j >= size_) throw Error(ErrorCode::InvalidArgument, "tensor index out of slab");
    const int kmin = std::abs(j - q);
    if (k < kmin || k > j + q || (k - kmin) % 2 != 0) return 0.0;
    return values_[std::size_t(q)][std::size_t(j)][std::size_t((k - kmin) / 2)];
}

GaussRule gauss_legendre(int order) {
    if (order < 1) throw Error(ErrorCode::InvalidArgument, "quadrature order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(std::size_t(order));
    rule.weights.resize(std::size_t(order));
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (order == 1) p0 = 1.0, p1 = x;
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[std::size_t(i)] = -x;
        rule.nodes[std::size_t(order - 1 - i)] = x;
        rule.weights[std::size_t(i)] = rule.weights[std::size_t(order - 1 - i)] = w;
    }
    return rule;
}

std::vector<double> legendre_values(int max_degree, double y) {
    std::vector<double> p(std::size_t(max_degree) + 1);
    p[0] = 1.0;
    if (max_degree >= 1) p[1] = y;
    for (int k = 2; k <= max_degree; ++k)
        p[std::size_t(k)] = ((2 * k - 1) * y * p[std::size_t(k - 1)] - (k - 1) * p[std::size_t(k - 2)]) / k;
    return p;
}

LegendreCoeffs legendre_coeffs(double t, double tol) {
    if (!(tol >= 1e-14)) throw Error(ErrorCode::PrecisionLimit, "Legendre tolerance below 1e-14 is not attainable");
    if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "t must be finite");
    const double keep = tol / 10.0;
    for (int order = 64;; order *= 2) {
        if (order > 8192) throw Error(ErrorCode::PrecisionLimit, "Legendre expansion did not resolve");
        const int qmax = order - 32;
        const GaussRule rule = gauss_legendre(order);
        std::vector<Complex> c(std::size_t(qmax) + 1, 0.0);
        for (int i = 0; i < order; ++i) {
            const double y = rule.nodes[std::size_t(i)];
            const Complex fx = std::polar(1.0, -t * 0.5 * (y + 1.0));
            const auto p = legendre_values(qmax, y);
            for (int q = 0; q <= qmax; ++q) c[std::size_t(q)] += 0.5 * rule.weights[std::size_t(i)] * fx * p[std::size_t(q)];
        }
        for (int q = 0; q <= qmax; ++q) c[std::size_t(q)] *= double(2 * q + 1);
        // The tail decays super-exponentially down to a rounding floor that
        // grows like q; cut at the first run of 8 negligible coefficients.
        int cutoff = -1;
        for (int q = 0, quiet = 0; q <= qmax; ++q) {
            quiet = std::abs(c[std::size_t(q)]) < keep ? quiet + 1 : 0;
            if (quiet == 8) {
                cutoff = std::max(0, q - 8);
                break;
            }
        }
        if (cutoff < 0) continue;

        LegendreCoeffs out;
        out.t = t;
        out.cutoff = cutoff;
        double tail = 0.0;
        for (int q = cutoff + 1; q <= qmax; ++q) tail += std::abs(c[std::size_t(q)]);
        c.resize(std::size_t(cutoff) + 1);
        out.c = std::move(c);
        for (int g = 0; g < 1000; ++g) {
            const double x = (g + 0.5) / 1000.0;
            const auto p = legendre_values(cutoff, 2 * x - 1);
            Complex sum = 0.0;
            for (int q = 0; q <= cutoff; ++q) sum += out.c[std::size_t(q)] * p[std::size_t(q)];
            out.reconstruction_error = std::max(out.reconstruction_error, std::abs(sum - std::polar(1.0, -t * x)));
        }
        out.error_bound = std::max(tail, out.reconstruction_error);
        return out;
    }
}

EigenKernelMatrix kernel_matrix(const LegendreCoeffs &coeffs, const TripleProductTensor &tensor, int size) {
    if (size < 1) throw Error(ErrorCode::InvalidArgument, "kernel size must be >= 1");
    const int d = coeffs.cutoff;
    if (tensor.max_q() < d || tensor.size() < size) throw Error(ErrorCode::InvalidArgument, "tensor slab too small");
    std::vector<Eigen::Triplet<Complex>> entries, entries_conj;
    entries.reserve(std::size_t(size) * std::size_t(2 * d + 1));
    entries_conj.reserve(entries.capacity());
    std::vector<Complex> row(std::size_t(2 * d + 1)), row_conj(row.size());
    for (int j = 0; j < size; ++j) {
        std::fill(row.begin(), row.end(), Complex(0));
        std::fill(row_conj.begin(), row_conj.end(), Complex(0));
        for (int q = 0; q <= d; ++q) {
            const Complex cq = coeffs.c[std::size_t(q)];
            for (int k = std::abs(j - q); k <= std::min(j + q, size - 1); k += 2) {
                const double f = tensor.at(q, j, k);
                row[std::size_t(k - j + d)] += cq * f;
                row_conj[std::size_t(k - j + d)] += std::conj(cq) * f;
            }
        }
        for (int k = std::max(0, j - d); k <= std::min(size - 1, j + d); ++k) {
            const auto at = std::size_t(k - j + d);
            if (row[at] != Complex(0)) entries.emplace_back(j, k, double(2 * j + 1) * row[at]);
            if (row_conj[at] != Complex(0)) entries_conj.emplace_back(j, k, double(2 * j + 1) * row_conj[at]);
        }
    }
    EigenKernelMatrix out;
    out.size = size;
    out.bandwidth = d;
    out.g.resize(size, size);
    out.g.setFromTriplets(entries.begin(), entries.end());
    out.g_conj.resize(size, size);
    out.g_conj.setFromTriplets(entries_conj.begin(), entries_conj.end());
    return out;
}

EigenKernelMatrix kernel_matrix(const LegendreCoeffs &coeffs, int size) {
    return kernel_matrix(coeffs, TripleProductTensor(coeffs.cutoff, size), size);
}

Complex distinct_moment(std::span<const SparseComplex *const> mats, long long size) {
    const int m = int(mats.size());
    if (m < 1 || m > 4) throw Error(ErrorCode::InvalidArgument, "distinct_moment supports 1 to 4 functions");
    if (size < m) throw Error(ErrorCode::InvalidArgument, "distinct_moment needs N >= number of functions");
    // Equal matrices share a letter so cyclic words with equal traces collide.
    std::string letters;
    for (int i = 0; i < m; ++i) {
        char c = char('a' + i);
        for (int j = 0; j < i; ++j)
            if (mats[std::size_t(j)] == mats[std::size_t(i)]) c = letters[std::size_t(j)];
        letters += c;
    }
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::map<std::string, Complex> cache;
    Complex total = 0.0;
    do {
        std::vector<bool> seen(static_cast<std::size_t>(m), false);
        Complex term = 1.0;
        int cycles = 0;
        for (int start = 0; start < m; ++start) {
            if (seen[std::size_t(start)]) continue;
            ++cycles;
            std::string word;
            std::vector<const SparseComplex *> cycle;
            for (int j = start; !seen[std::size_t(j)]; j = perm[std::size_t(j)]) {
                seen[std::size_t(j)] = true;
                word += letters[std::size_t(j)];
                cycle.push_back(mats[std::size_t(j)]);
            }
            const std::string key = canonical_word(word);
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, cycle_trace(cycle)).first;
            term *= it->second;
        }
        total += ((m - cycles) % 2 == 0 ? 1.0 : -1.0) * term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    double prefactor = 1.0;
    for (int i = 0; i < m; ++i) prefactor /= double(size - i);
    return prefactor * total;
}

double h_moment(int l, const EigenKernelMatrix &kernel) {
    if (l != 1 && l != 2) throw Error(ErrorCode::InvalidArgument, "h_moment supports l = 1, 2");
    if (kernel.size < 2 * l) throw Error(ErrorCode::InvalidArgument, "h_moment needs N >= 2l");
    std::vector<const SparseComplex *> mats;
    for (int j = 0; j < 2 * l; ++j) mats.push_back(j < l ? &kernel.g : &kernel.g_conj);
    const Complex h = distinct_moment(mats, kernel.size);
    if (std::abs(h.imag()) > 1e-9)
        throw Error(ErrorCode::IllConditioned, "H_l has imaginary part " + std::to_string(h.imag()));
    return h.real();
}

double weingarten_s4(std::span<const int> cycle_type, double d) {
    if (!(d >= 4.0)) throw Error(ErrorCode::InvalidArgument, "weingarten_s4 needs d >= 4");
    std::vector<int> c(cycle_type.begin(), cycle_type.end());
    std::sort(c.begin(), c.end(), std::greater<>());
    const double d2 = d * d;
    const double den = d2 * (d2 - 1) * (d2 - 4) * (d2 - 9);
    if (c == std::vector<int>{1, 1, 1, 1}) return (d2 * d2 - 8 * d2 + 6) / den;
    if (c == std::vector<int>{2, 1, 1}) return -d * (d2 - 4) / den;
    if (c == std::vector<int>{2, 2}) return (d2 + 6) / den;
    if (c == std::vector<int>{3, 1}) return (2 * d2 - 3) / den;
    if (c == std::vector<int>{4}) return -5 * d / den;
    throw Error(ErrorCode::InvalidArgument, "not a cycle type of S_4");
}

double h_moment(int l, double t, long long size) {
    if (size < 2 * l) throw Error(ErrorCode::InvalidArgument, "h_moment needs N >= 2l");
    if (size > (1LL << 20)) throw Error(ErrorCode::CapacityError, "kernel size above 2^20");
    return h_moment(l, kernel_matrix(legendre_coeffs(t), int(size)));
}

MonteCarloEstimate mc_h_oracle(int l, double t, int n, int samples, RandomSource &rng) {
    if (l != 1 && l != 2) throw Error(ErrorCode::InvalidArgument, "mc_h_oracle supports l = 1, 2");
    if (samples < 10) throw Error(ErrorCode::InvalidArgument, "mc_h_oracle needs >= 10 samples");
    if (n < 1 || n > 12) throw Error(ErrorCode::CapacityError, "mc_h_oracle supports 1 <= n <= 12");
    const double size = std::ldexp(1.0, n);
    const int m = 2 * l;
    if (size < m) throw Error(ErrorCode::InvalidArgument, "mc_h_oracle needs N >= 2l");
    std::vector<std::vector<std::vector<int>>> partitions;
    set_partitions(m, partitions);
    double tuples = 1.0;
    for (int i = 0; i < m; ++i) tuples *= size - i;

    double sum = 0.0, sum_sq = 0.0;
    for (int s = 0; s < samples; ++s) {
        const RealVector lambda = block_eigenvalues(n, rng);
        // Power sums s_k = sum_j e^{-i k t lambda_j}, k = -l..l.
        std::vector<Complex> power(std::size_t(2 * l + 1), 0.0);
        for (int k = -l; k <= l; ++k)
            for (Eigen::Index j = 0; j < lambda.size(); ++j)
                power[std::size_t(k + l)] += std::polar(1.0, -k * t * lambda(j));
        // Sum over distinct index tuples by Moebius inversion over set
        // partitions; the first l slots carry f, the rest conj(f).
        Complex distinct = 0.0;
        for (const auto &p : partitions) {
            Complex term = 1.0;
            for (const auto &block : p) {
                int k = 0;
                for (int e : block) k += e < l ? 1 : -1;
                double mu = (block.size() % 2 == 1) ? 1.0 : -1.0;
                for (std::size_t f = 2; f < block.size(); ++f) mu *= double(f);
                term *= mu * power[std::size_t(k + l)];
            }
            distinct += term;
        }
        const double v = distinct.real() / tuples;
        sum += v;
        sum_sq += v * v;
    }
    MonteCarloEstimate out;
    out.estimate = sum / samples;
    const double var = std::max(0.0, (sum_sq - samples * out.estimate * out.estimate) / (samples - 1));
    out.standard_error = std::sqrt(var / samples);
    return out;
}

HMoments moments_from_h(double t, long long size, double h1, double h2) {
    if (size < 4) throw Error(ErrorCode::InvalidArgument, "bit-string moments need N >= 4");
    const double n = double(size);
    HMoments m;
    m.t = t;
    m.size = size;
    m.h1 = h1;
    m.h2 = h2;
    m.gamma = gamma_of(h1, h2);
    if (m.gamma != 0.0) m.alpha_star = h1 / m.gamma;
    m.p0_mean = (n - 1) / (n + 1) * h1 + 2.0 / (n + 1);
    m.rest_mean = (n - 1) / (n + 1) * (1.0 - h1);
    const double d3 = (n + 1) * (n + 2) * (n + 3);
    m.p0_second_closed_form = 12.0 / ((n + 2) * (n + 3)) + 12.0 * n * (n - 1) * h1 / d3 + (n - 1) * (n - 2) * (n - 3) / d3 * h2;
    m.rest_second_closed_form = (2.0 * (n - 1) * (n * n + 3 * n + 6) - 4.0 * (n - 1) * (n * n - n + 6) * h1 +
                     2.0 * (n - 1) * (n - 2) * (n - 3) * h2) /
                    (n * d3);
    m.p0_second = m.p0_second_closed_form;
    m.rest_second = m.rest_second_closed_form;
    return m;
}

namespace {

std::vector<int> cycle_type_of(const std::array<int, 4> &perm) {
    std::array<bool, 4> seen{};
    std::vector<int> type;
    for (int s = 0; s < 4; ++s) {
        if (seen[std::size_t(s)]) continue;
        int len = 0;
        for (int j = s; !seen[std::size_t(j)]; j = perm[std::size_t(j)]) seen[std::size_t(j)] = true, ++len;
        type.push_back(len);
    }
    return type;
}

// E[prod_m U_{a_m b_m} conj(U_{a'_m b'_m})] for four factors by the
// Weingarten sum over pairs of permutations.
double weingarten_moment(const std::array<int, 4> &a, const std::array<int, 4> &b, const std::array<int, 4> &ac,
                         const std::array<int, 4> &bc, double d) {
    std::array<int, 4> sigma{0, 1, 2, 3};
    double total = 0.0;
    do {
        bool rows = true;
        for (int m = 0; m < 4; ++m) rows = rows && a[std::size_t(m)] == ac[std::size_t(sigma[std::size_t(m)])];
        if (!rows) continue;
        std::array<int, 4> tau{0, 1, 2, 3};
        do {
            bool cols = true;
            for (int m = 0; m < 4; ++m) cols = cols && b[std::size_t(m)] == bc[std::size_t(tau[std::size_t(m)])];
            if (!cols) continue;
            // sigma tau^{-1}
            std::array<int, 4> inv{}, prod{};
            for (int m = 0; m < 4; ++m) inv[std::size_t(tau[std::size_t(m)])] = m;
            for (int m = 0; m < 4; ++m) prod[std::size_t(m)] = sigma[std::size_t(inv[std::size_t(m)])];
            total += weingarten_s4(cycle_type_of(prod), d);
        } while (std::next_permutation(tau.begin(), tau.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

} // namespace

SecondMoments exact_second_moments(double t, long long size) {
    if (size < 4) throw Error(ErrorCode::InvalidArgument, "second moments need N >= 4");
    if (size > (1LL << 20)) throw Error(ErrorCode::CapacityError, "kernel size above 2^20");
    const auto k1 = kernel_matrix(legendre_coeffs(t), int(size));
    const auto k2 = kernel_matrix(legendre_coeffs(2.0 * t), int(size));
    const auto kernel_for = [&](int m) -> const SparseComplex * {
        switch (m) {
        case 1: return &k1.g;
        case -1: return &k1.g_conj;
        case 2: return &k2.g;
        case -2: return &k2.g_conj;
        default: return nullptr;
        }
    };
    // p(x)^2 = sum_{ijkl} f_i f*_j f_k f*_l V_xi V*_0i V*_xj V_0j V_xk V*_0k V*_xl V_0l.
    constexpr std::array<int, 4> sign{1, -1, 1, -1};
    std::vector<std::vector<std::vector<int>>> partitions;
    set_partitions(4, partitions);
    const double n = double(size);
    Complex p0 = 0.0, px = 0.0;
    for (const auto &p : partitions) {
        std::array<int, 4> col{};
        std::vector<const SparseComplex *> mats;
        for (std::size_t blk = 0; blk < p.size(); ++blk) {
            int m = 0;
            for (int e : p[blk]) {
                col[std::size_t(e)] = int(blk);
                m += sign[std::size_t(e)];
            }
            if (m != 0) mats.push_back(kernel_for(m));
        }
        double count = 1.0;
        for (std::size_t i = 0; i < p.size(); ++i) count *= n - double(i);
        const Complex eig = mats.empty() ? Complex(1.0) : distinct_moment(mats, size);
        const double w0 = weingarten_moment({0, 0, 0, 0}, col, {0, 0, 0, 0}, col, n);
        const double wx = weingarten_moment({1, 0, 1, 0}, col, {0, 1, 0, 1}, col, n);
        p0 += count * w0 * eig;
        px += count * wx * eig;
    }
    return {p0.real(), (n - 1.0) * px.real()};
}

HMoments expected_bitstring_moments(double t, long long size) {
    if (size < 4) throw Error(ErrorCode::InvalidArgument, "bit-string moments need N >= 4");
    const auto kernel = kernel_matrix(legendre_coeffs(t), int(size));
    HMoments m = moments_from_h(t, size, h_moment(1, kernel), h_moment(2, kernel));
    const SecondMoments exact = exact_second_moments(t, size);
    m.p0_second = exact.p0_second;
    m.rest_second = exact.rest_second;
    return m;
}

double bessel_j0(double x) {
    // sum_k (-1)^k (x^2/4)^k / (k!)^2
    const double y = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 30; ++k) {
        term *= -y / (double(k) * k);
        sum += term;
    }
    return sum;
}

double bessel_j0_first_root() {
    double lo = 2.0, hi = 3.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (bessel_j0(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Complex mean_diag_evolution(double t) { return std::polar(bessel_j0(0.5 * t), -0.5 * t); }

std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw Error(ErrorCode::InvalidArgument, "bad grid");
    std::vector<double> g;
    const long long count = std::llround(std::floor((hi - lo) / step + 1e-9));
    for (long long i = 0; i <= count; ++i) g.push_back(lo + double(i) * step);
    return g;
}

CriticalTimes critical_times(int n, const std::vector<double> &grid, int threads) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "critical_times needs n >= 2");
    if (n > 20) throw Error(ErrorCode::CapacityError, "critical_times supports n <= 20, got n = " + std::to_string(n));
    if (grid.size() < 3) throw Error(ErrorCode::InvalidArgument, "grid needs at least 3 points");
    const long long size = 1LL << n;
    CriticalTimes out;
    out.t = grid;
    out.h1.resize(grid.size());
    out.h2.resize(grid.size());
    out.alpha_star.resize(grid.size());
    out.gamma.resize(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        const auto kernel = kernel_matrix(legendre_coeffs(grid[i]), int(size));
        out.h1[i] = h_moment(1, kernel);
        out.h2[i] = h_moment(2, kernel);
        out.gamma[i] = gamma_of(out.h1[i], out.h2[i]);
        out.alpha_star[i] = out.h1[i] / out.gamma[i];
    });
    out.t_opt_large_n = 2.0 * bessel_j0_first_root();

    const auto &a = out.alpha_star;
    std::size_t cross = grid.size();
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (a[i] >= 1.0 && a[i + 1] < 1.0) {
            out.t_thr = grid[i] + (1.0 - a[i]) / (a[i + 1] - a[i]) * (grid[i + 1] - grid[i]);
            cross = i + 1;
            break;
        }
    if (cross == grid.size()) return out;
    for (std::size_t i = std::max<std::size_t>(cross, 1); i + 1 < grid.size(); ++i) {
        if (!(a[i] < a[i - 1] && a[i] <= a[i + 1])) continue;
        const double t0 = grid[i - 1], t1 = grid[i], t2 = grid[i + 1];
        const double y0 = a[i - 1], y1 = a[i], y2 = a[i + 1];
        // Vertex of the parabola through the three points.
        const double denom = (t0 - t1) * (t0 - t2) * (t1 - t2);
        const double pa = (t2 * (y1 - y0) + t1 * (y0 - y2) + t0 * (y2 - y1)) / denom;
        const double pb = (t2 * t2 * (y0 - y1) + t1 * t1 * (y2 - y0) + t0 * t0 * (y1 - y2)) / denom;
        const double pc = (t1 * t2 * (t1 - t2) * y0 + t2 * t0 * (t2 - t0) * y1 + t0 * t1 * (t0 - t1) * y2) / denom;
        double topt = pa > 0.0 ? -pb / (2.0 * pa) : t1;
        topt = std::clamp(topt, t0, t2);
        out.t_opt = topt;
        out.alpha_star_at_opt = pa > 0.0 ? (pa * topt + pb) * topt + pc : y1;
        const std::size_t lo = topt < t1 ? i - 1 : i;
        const double w = (topt - grid[lo]) / (grid[lo + 1] - grid[lo]);
        out.gamma_at_opt = (1.0 - w) * out.gamma[lo] + w * out.gamma[lo + 1];
        break;
    }
    return out;
}

LevelDensityReport level_density_check(int n, int samples, RandomSource &rng) {
    if (samples < 10) throw Error(ErrorCode::InvalidArgument, "level_density_check needs >= 10 samples");
    if (n < 1 || n > 11) throw Error(ErrorCode::CapacityError, "level_density_check supports 1 <= n <= 11");
    std::vector<double> pooled;
    double sum = 0.0, sum_sq = 0.0;
    for (int s = 0; s < samples; ++s) {
        const RealVector lambda = block_eigenvalues(n, rng);
        const double mean = lambda.mean();
        sum += mean;
        sum_sq += mean * mean;
        pooled.insert(pooled.end(), lambda.data(), lambda.data() + lambda.size());
    }
    std::sort(pooled.begin(), pooled.end());
    LevelDensityReport r;
    r.count = pooled.size();
    const double m = double(pooled.size());
    for (std::size_t i = 0; i < pooled.size(); ++i) {
        const double cdf = 2.0 / kPi * std::asin(std::sqrt(pooled[i]));
        r.ks = std::max({r.ks, cdf - double(i) / m, double(i + 1) / m - cdf});
    }
    r.mean = sum / samples;
    r.mean_standard_error = std::sqrt(std::max(0.0, sum_sq / samples - r.mean * r.mean) / (samples - 1));
    return r;
}

} // namespace hsbench::haar
