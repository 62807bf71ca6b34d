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

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsbench/error.hpp"
#include "hsbench/random.hpp"

namespace hsbench::qsp {

using Complex = std::complex<double>;

/// Which product the angles parameterize.
///
/// Qsp: e^{i phi_0 Z} prod_j [W(x) e^{i phi_j Z}] with W(x) = e^{i arccos(x) X}.
/// Circuit: the ancilla Z-rotation angles of the single-ancilla circuit,
/// alternating with U_A^dagger / U_A queries.
enum class Convention { Qsp, Circuit };

/// How interior angles shift between the two conventions.
///
/// Both rules add pi/4 at the two ends and pi/2 at even interior indices.
/// `Alternating` subtracts pi/2 at odd interior indices and is the rule under
/// which the assembled circuit block-encodes exactly P(x, Phi_qsp).
/// `Uniform` adds pi/2 at every interior index; it is the rule used by
/// published phase tables. The two differ by a global sign (-1)^(d/2) on P,
/// which leaves every measured probability unchanged.
enum class ShiftRule { Alternating, Uniform };

std::string_view to_string(Convention c);
std::string_view to_string(ShiftRule r);
Convention convention_from_string(std::string_view s);
ShiftRule shift_rule_from_string(std::string_view s);

struct SolverMeta {
    std::uint64_t seed = 0;
    int iterations = 0;
    int restarts = 0;
};

/// Ordered phase factors approximating s_t(x) = exp(-i t x^2).
///
/// `degree` is always the polynomial degree d; the sequence holds d+1
/// angles in both conventions (the circuit form has d/2 queries each of U_A
/// and U_A^dagger). Angles are kept reduced to [-pi, pi).
struct PhaseFactorSequence {
    std::vector<double> phases;
    Convention convention = Convention::Qsp;
    ShiftRule shift_rule = ShiftRule::Alternating; ///< meaningful for Circuit only
    int degree = 0;
    double time = 0.0;
    double sup_error = 0.0;
    SolverMeta meta;

    [[nodiscard]] int queries() const noexcept { return degree / 2; }
};

/// Throws MalformedSequence if the invariants do not hold.
void validate(const PhaseFactorSequence &seq);

struct QspPointValue {
    Complex p;
    Complex q;
    Eigen::Matrix2cd unitary;
};

/// Reduce an angle to [-pi, pi).
[[nodiscard]] double reduce_phase(double phi);

/// The 2x2 product at x in [-1, 1]; throws DomainError outside.
[[nodiscard]] QspPointValue qsp_eval(double x, std::span<const double> phases);

/// Top-left entry only, without argument checks.
[[nodiscard]] Complex qsp_poly(double x, std::span<const double> phases);

[[nodiscard]] inline Complex target_value(double x, double t) {
    return std::polar(1.0, -t * x * x);
}

/// Positive Chebyshev nodes of T_{2m}, m = ceil((d+1)/2).
[[nodiscard]] std::vector<double> objective_nodes(int degree);

struct ObjectiveValue {
    double value = 0.0;
    Eigen::VectorXd gradient;
};

/// Real and imaginary parts of (P(x_k) - s_t(x_k)) / sqrt(m), interleaved,
/// with their derivatives in each phase. The objective is |residual|^2.
struct ResidualJacobian {
    Eigen::VectorXd residual;
    Eigen::MatrixXd jacobian;
};

[[nodiscard]] ResidualJacobian residual_jacobian(std::span<const double> phases, double t);

/// Mean squared deviation of P(x_k, Phi) from s_t(x_k) at the objective
/// nodes, with its exact gradient.
[[nodiscard]] ObjectiveValue objective(std::span<const double> phases, double t);

/// Dense Chebyshev grid on [0, 1] used to certify sup-errors.
[[nodiscard]] std::vector<double> certification_grid(int degree);

/// max |P(x, Phi) - s_t(x)| over the certification grid (QSP angles).
[[nodiscard]] double measured_sup_error(std::span<const double> qsp_phases, double t);

/// Same, for a sequence in either convention.
[[nodiscard]] double measured_sup_error(const PhaseFactorSequence &seq);

struct SolveOptions {
    int max_restarts = 8;
    double perturbation = 0.1;
    int max_iterations = 4000;
};

/// Raised when the restart budget is spent above tolerance.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string &what, PhaseFactorSequence best)
        : Error(ErrorCode::ConvergenceFailure, what), best_(std::move(best)) {}
    [[nodiscard]] const PhaseFactorSequence &best() const noexcept { return best_; }

  private:
    PhaseFactorSequence best_;
};

/// Optimize QSP angles for s_t at even degree d until the certified
/// sup-error is at most `tol`.
[[nodiscard]] PhaseFactorSequence solve_phases(double t, int degree, double tol, RandomSource &rng,
                                               const SolveOptions &options = {});

/// Convert between conventions. Converting a sequence to its own convention
/// is an error; a Circuit source keeps its own shift rule.
[[nodiscard]] PhaseFactorSequence convert_convention(const PhaseFactorSequence &seq, Convention target,
                                                     ShiftRule rule = ShiftRule::Alternating);

/// Phases for time r*t built by repeating the sequence r times. The
/// returned sup_error is measured on the certification grid.
[[nodiscard]] PhaseFactorSequence concatenate(const PhaseFactorSequence &seq, int r);

} // namespace hsbench::qsp
