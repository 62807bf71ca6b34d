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

#include <Eigen/Dense>

#include <functional>

namespace hsbench {

struct LbfgsOptions {
    int memory = 12;
    int max_iterations = 4000;
    /// Stop once ||g||_inf falls below this.
    double gradient_tolerance = 1e-15;
    /// Stop after this many consecutive iterations with relative decrease
    /// below `stall_ratio`.
    int stall_window = 20;
    double stall_ratio = 1e-10;
};

struct LbfgsResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
};

/// Objective callback: returns f(x) and writes the gradient.
using GradientObjective = std::function<double(const Eigen::VectorXd &, Eigen::VectorXd &)>;

/// Limited-memory BFGS with a strong-Wolfe line search.
LbfgsResult lbfgs_minimize(const GradientObjective &fn, Eigen::VectorXd x0, const LbfgsOptions &options = {});

} // namespace hsbench
