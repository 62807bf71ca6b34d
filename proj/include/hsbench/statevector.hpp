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

namespace hsbench {

/// In-place gate kernels acting on the row index of a state block.
///
/// A block is a 2^n x k matrix; each column is an independent state (k = 1
/// for a state vector, k = 2^n for the columns of a density matrix). Qubit 0
/// is the most significant bit of the row index.
///
/// Two-qubit matrices use the local basis |q_a q_b>, q_a most significant.

inline Eigen::Index qubit_stride(int num_qubits, int q) { return Eigen::Index(1) << (num_qubits - 1 - q); }

template <typename Derived>
void apply_1q(Eigen::MatrixBase<Derived> &block, int num_qubits, int q, const Eigen::Matrix2cd &m) {
    const Eigen::Index stride = qubit_stride(num_qubits, q);
    const Eigen::Index rows = block.rows();
    const auto m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
        for (Eigen::Index base = 0; base < rows; base += 2 * stride) {
            for (Eigen::Index i = base; i < base + stride; ++i) {
                const auto a = block(i, c);
                const auto b = block(i + stride, c);
                block(i, c) = m00 * a + m01 * b;
                block(i + stride, c) = m10 * a + m11 * b;
            }
        }
    }
}

template <typename Derived>
void apply_2q(Eigen::MatrixBase<Derived> &block, int num_qubits, int qa, int qb, const Eigen::Matrix4cd &m) {
    const Eigen::Index sa = qubit_stride(num_qubits, qa);
    const Eigen::Index sb = qubit_stride(num_qubits, qb);
    const Eigen::Index rows = block.rows();
    Eigen::Vector4cd v;
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i & (sa | sb)) continue;
            const Eigen::Index idx[4] = {i, i + sb, i + sa, i + sa + sb};
            for (int k = 0; k < 4; ++k) v(k) = block(idx[k], c);
            const Eigen::Vector4cd w = m * v;
            for (int k = 0; k < 4; ++k) block(idx[k], c) = w(k);
        }
    }
}

/// CNOT as a permutation: swaps amplitudes where the control bit is set.
template <typename Derived>
void apply_cnot(Eigen::MatrixBase<Derived> &block, int num_qubits, int control, int target) {
    const Eigen::Index sc = qubit_stride(num_qubits, control);
    const Eigen::Index st = qubit_stride(num_qubits, target);
    for (Eigen::Index c = 0; c < block.cols(); ++c)
        for (Eigen::Index i = 0; i < block.rows(); ++i)
            if ((i & sc) && !(i & st)) std::swap(block(i, c), block(i + st, c));
}

/// Diagonal single-qubit gate diag(d0, d1).
template <typename Derived>
void apply_diag_1q(Eigen::MatrixBase<Derived> &block, int num_qubits, int q, std::complex<double> d0,
                   std::complex<double> d1) {
    const Eigen::Index stride = qubit_stride(num_qubits, q);
    for (Eigen::Index c = 0; c < block.cols(); ++c)
        for (Eigen::Index i = 0; i < block.rows(); ++i) block(i, c) *= (i & stride) ? d1 : d0;
}

/// Pauli on one qubit: 0 = I, 1 = X, 2 = Y, 3 = Z.
template <typename Derived>
void apply_pauli(Eigen::MatrixBase<Derived> &block, int num_qubits, int q, int pauli) {
    using C = std::complex<double>;
    const Eigen::Index stride = qubit_stride(num_qubits, q);
    if (pauli == 0) return;
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
        for (Eigen::Index i = 0; i < block.rows(); ++i) {
            if (i & stride) continue;
            auto &a = block(i, c);
            auto &b = block(i + stride, c);
            switch (pauli) {
            case 1: std::swap(a, b); break;
            case 2: {
                const C na = C(0, -1) * b;
                const C nb = C(0, 1) * a;
                a = na;
                b = nb;
                break;
            }
            default: b = -b; break;
            }
        }
    }
}

} // namespace hsbench
