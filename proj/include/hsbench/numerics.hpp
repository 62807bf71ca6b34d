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

#include "hsbench/error.hpp"
#include "hsbench/random.hpp"

namespace hsbench {

template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;

/// Eigen-decomposition of H = A^dagger A.
///
/// Eigenvalues ascend and lie in [0, 1]; columns of `eigenvectors` are the
/// right singular vectors of A in matching order.
template <typename Scalar>
struct SpectralDecomposition {
    RVector<Scalar> eigenvalues;
    CMatrix<Scalar> eigenvectors;
};

/// max |(U^dagger U - I)_{ij}|.
template <typename Derived>
[[nodiscard]] typename Derived::RealScalar unitarity_error(const Eigen::MatrixBase<Derived> &u) {
    using Real = typename Derived::RealScalar;
    if (u.rows() != u.cols()) return std::numeric_limits<Real>::infinity();
    auto gram = (u.adjoint() * u).eval();
    gram.diagonal().array() -= typename Derived::Scalar(1);
    return gram.cwiseAbs().maxCoeff();
}

/// Haar-distributed unitary of size dim x dim.
///
/// QR of an i.i.d. complex Gaussian matrix, then Q is multiplied by the
/// phases of R's diagonal so the factorization is the unique one with a
/// positive real R diagonal. Without that correction the result is not Haar.
template <typename Scalar = double>
[[nodiscard]] CMatrix<Scalar> haar_unitary(Eigen::Index dim, RandomSource &rng) {
    if (dim < 1) throw Error(ErrorCode::InvalidDimension, "haar_unitary needs dim >= 1");
    const Scalar scale = Scalar(1) / std::sqrt(Scalar(2));
    CMatrix<Scalar> z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i)
            z(i, j) = std::complex<Scalar>(Scalar(rng.normal()) * scale, Scalar(rng.normal()) * scale);

    Eigen::HouseholderQR<CMatrix<Scalar>> qr(z);
    CMatrix<Scalar> q = qr.householderQ();
    const CMatrix<Scalar> &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const auto d = r(j, j);
        const Scalar mag = std::abs(d);
        q.col(j) *= mag > Scalar(0) ? d / mag : std::complex<Scalar>(1);
    }
    return q;
}

/// Top-left 2^n x 2^n block A of an (n+1)-qubit unitary, with the
/// spectral decomposition of A^dagger A.
template <typename Scalar = double>
struct BlockSpectrum {
    CMatrix<Scalar> block;
    SpectralDecomposition<Scalar> spectrum;
};

/// Tolerance on ||U^dagger U - I||_max above which a matrix is rejected.
inline constexpr double kUnitarityTolerance = 1e-8;

template <typename Scalar = double>
[[nodiscard]] BlockSpectrum<Scalar> block_and_spectrum(const CMatrix<Scalar> &u, int n) {
    if (n < 0 || n > 30) throw Error(ErrorCode::InvalidDimension, "qubit count out of range");
    const Eigen::Index system_dim = Eigen::Index(1) << n;
    if (u.rows() != 2 * system_dim || u.cols() != 2 * system_dim)
        throw Error(ErrorCode::InvalidDimension, "block_and_spectrum: dim(U) must be 2^(n+1)");
    if (unitarity_error(u) > Scalar(kUnitarityTolerance))
        throw Error(ErrorCode::NotUnitary, "block_and_spectrum: U is not unitary");

    BlockSpectrum<Scalar> out;
    out.block = u.topLeftCorner(system_dim, system_dim);
    const CMatrix<Scalar> h = out.block.adjoint() * out.block;
    Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> eig(h);
    // Round-off can push eigenvalues of A^dagger A slightly outside [0, 1].
    out.spectrum.eigenvalues = eig.eigenvalues().cwiseMax(Scalar(0)).cwiseMin(Scalar(1));
    out.spectrum.eigenvectors = eig.eigenvectors();
    return out;
}

/// V f(Lambda) V^dagger for an elementwise function of the eigenvalues.
template <typename Scalar, typename Fn>
[[nodiscard]] CMatrix<Scalar> spectral_apply(const SpectralDecomposition<Scalar> &spec, Fn &&fn) {
    const auto &v = spec.eigenvectors;
    CVector<Scalar> diag(spec.eigenvalues.size());
    for (Eigen::Index i = 0; i < diag.size(); ++i) diag(i) = fn(spec.eigenvalues(i));
    return v * diag.asDiagonal() * v.adjoint();
}

} // namespace hsbench
