// Copyright 2026 The qdb Authors
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

#include <array>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "qdb/state/state.hpp"

namespace qdb {

/// 2x2 single-qubit operator, row-major: {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

namespace gates {

Mat2 identity();
/// NOT: swaps |0> and |1>.
Mat2 not_gate();
/// Pauli operators sigma_0..sigma_3 = I, X, Y, Z.
Mat2 pauli(int index);
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 hadamard();
Mat2 phase_s();
/// The pi/8 gate, diag(1, e^{i pi/4}).
Mat2 t_gate();
/// OpenQASM U(theta, phi, lambda).
Mat2 u(double theta, double phi, double lambda);

/// CNOT as a 4x4 matrix on |a>|b> with the control first:
/// |a>|b> -> |a>|a xor b>.
Eigen::Matrix4cd cnot();

Eigen::MatrixXcd to_matrix(const Mat2& m);
Mat2 adjoint(const Mat2& m);

/// max |(G^* G - I)_ij|.
double unitarity_defect(const Eigen::MatrixXcd& m);

}  // namespace gates

/// In-place single-qubit kernel: visits each amplitude pair that differs only
/// in the target bit. O(2^n), no allocation.
void apply_1q(QuantumState& state, const Mat2& gate, std::size_t target);

/// In-place CNOT: swaps the amplitudes of |..c=1..t=0..> and |..c=1..t=1..>.
void apply_cx(QuantumState& state, std::size_t control, std::size_t target);

/// Applies a 2^k x 2^k operator to the listed qubits; qubits[0] is the most
/// significant bit of the operator's index. Used for k-qubit gadgets such as
/// the cloning unitaries.
void apply_matrix(QuantumState& state, const Eigen::MatrixXcd& op, std::span<const std::size_t> qubits);

struct MeasureOutcome {
    int bit = 0;
    double probability = 0.0;
};

/// Probability that measuring `qubit` yields 1.
double probability_of_one(const QuantumState& state, std::size_t qubit);

/// Projects onto `bit` for `qubit` and renormalises. Returns the branch
/// probability. Throws DegenerateNorm when that probability is below 1e-12.
double collapse(QuantumState& state, std::size_t qubit, int bit);

/// Computational-basis measurement. `uniform` is a draw from [0,1): outcome 0
/// is chosen iff uniform < p0.
MeasureOutcome measure_qubit(QuantumState& state, std::size_t qubit, double uniform);

/// Kronecker product; `a` supplies the leading (leftmost) qubits.
QuantumState tensor(const QuantumState& a, const QuantumState& b);

/// <a|b>.
Complex inner_product(const QuantumState& a, const QuantumState& b);

/// True if some phase e^{it} brings every entry of b - e^{it} a within tol.
bool equal_up_to_global_phase(const QuantumState& a, const QuantumState& b, double tol = 1e-9);

}  // namespace qdb
