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

#include "hsbench/optimize.hpp"

#include <cmath>
#include <deque>

namespace hsbench {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kCurvature = 0.9;

struct LinePoint {
    double alpha;
    double value;
    double slope;
};

// Minimizer of the cubic matching values and slopes at a and b, kept inside
// the bracket; falls back to bisection.
double interpolate(const LinePoint &a, const LinePoint &b) {
    const double d1 = a.slope + b.slope - 3.0 * (a.value - b.value) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.slope * b.slope;
    double x = 0.5 * (a.alpha + b.alpha);
    if (disc >= 0.0) {
        const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
        const double denom = b.slope - a.slope + 2.0 * d2;
        if (denom != 0.0) x = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / denom;
    }
    const double lo = std::min(a.alpha, b.alpha);
    const double hi = std::max(a.alpha, b.alpha);
    const double margin = 0.1 * (hi - lo);
    if (!std::isfinite(x) || x < lo + margin || x > hi - margin) x = 0.5 * (lo + hi);
    return x;
}

class LineSearch {
  public:
    LineSearch(const GradientObjective &fn, const Eigen::VectorXd &x, const Eigen::VectorXd &dir, double f0,
               double slope0)
        : fn_(fn), x_(x), dir_(dir), f0_(f0), slope0_(slope0) {}

    /// Returns false when no acceptable step exists.
    bool run(double alpha0, Eigen::VectorXd &x_out, double &f_out, Eigen::VectorXd &g_out) {
        LinePoint prev{0.0, f0_, slope0_};
        double alpha = alpha0;
        for (int it = 0; it < 40; ++it) {
            LinePoint cur = eval(alpha, x_out, f_out, g_out);
            if (cur.value > f0_ + kArmijo * alpha * slope0_ || (it > 0 && cur.value >= prev.value))
                return zoom(prev, cur, x_out, f_out, g_out);
            if (std::abs(cur.slope) <= -kCurvature * slope0_) return true;
            if (cur.slope >= 0.0) return zoom(cur, prev, x_out, f_out, g_out);
            prev = cur;
            alpha *= 2.0;
        }
        return false;
    }

  private:
    LinePoint eval(double alpha, Eigen::VectorXd &x_out, double &f_out, Eigen::VectorXd &g_out) {
        x_out = x_ + alpha * dir_;
        f_out = fn_(x_out, g_out);
        return {alpha, f_out, g_out.dot(dir_)};
    }

    bool zoom(LinePoint lo, LinePoint hi, Eigen::VectorXd &x_out, double &f_out, Eigen::VectorXd &g_out) {
        for (int it = 0; it < 60; ++it) {
            const double alpha = interpolate(lo, hi);
            LinePoint cur = eval(alpha, x_out, f_out, g_out);
            if (cur.value > f0_ + kArmijo * alpha * slope0_ || cur.value >= lo.value) {
                hi = cur;
            } else {
                if (std::abs(cur.slope) <= -kCurvature * slope0_) return true;
                if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
                lo = cur;
            }
            if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, lo.alpha)) break;
        }
        // Accept the best sufficient-decrease point found, if any.
        if (lo.alpha > 0.0 && lo.value < f0_) {
            eval(lo.alpha, x_out, f_out, g_out);
            return true;
        }
        return false;
    }

    const GradientObjective &fn_;
    const Eigen::VectorXd &x_;
    const Eigen::VectorXd &dir_;
    double f0_;
    double slope0_;
};

} // namespace

LbfgsResult lbfgs_minimize(const GradientObjective &fn, Eigen::VectorXd x0, const LbfgsOptions &options) {
    LbfgsResult result;
    Eigen::VectorXd g(x0.size());
    double f = fn(x0, g);
    Eigen::VectorXd x = std::move(x0);

    std::deque<Eigen::VectorXd> s_hist, y_hist;
    std::deque<double> rho_hist;
    Eigen::VectorXd x_new(x.size()), g_new(x.size());
    int stalled = 0;

    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        if (g.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance) break;

        // Two-loop recursion.
        Eigen::VectorXd q = -g;
        std::vector<double> a(s_hist.size());
        for (int i = int(s_hist.size()) - 1; i >= 0; --i) {
            a[i] = rho_hist[i] * s_hist[i].dot(q);
            q -= a[i] * y_hist[i];
        }
        if (!s_hist.empty()) q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const double b = rho_hist[i] * y_hist[i].dot(q);
            q += (a[i] - b) * s_hist[i];
        }

        double slope = g.dot(q);
        if (!(slope < 0.0)) {
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            q = -g;
            slope = -g.squaredNorm();
        }
        const double alpha0 = s_hist.empty() ? std::min(1.0, 1.0 / g.lpNorm<Eigen::Infinity>()) : 1.0;

        double f_new = f;
        LineSearch search(fn, x, q, f, slope);
        if (!search.run(alpha0, x_new, f_new, g_new)) {
            if (s_hist.empty()) break;
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            continue;
        }

        Eigen::VectorXd s = x_new - x;
        Eigen::VectorXd y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-300) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (int(s_hist.size()) > options.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }

        const double decrease = f - f_new;
        stalled = decrease <= options.stall_ratio * std::abs(f) ? stalled + 1 : 0;
        x.swap(x_new);
        g.swap(g_new);
        f = f_new;
        if (stalled >= options.stall_window) break;
    }

    result.x = std::move(x);
    result.value = f;
    result.iterations = iter;
    return result;
}

} // namespace hsbench
