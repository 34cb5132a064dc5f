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

#include "qdb/state/gates.hpp"

#include <cmath>
#include <numbers>

#include "qdb/errors.hpp"

namespace qdb {

namespace gates {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
Mat2 not_gate() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2 pauli_x() { return not_gate(); }
Mat2 pauli_y() { return {0.0, -kI, kI, 0.0}; }
Mat2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

Mat2 pauli(int index) {
    switch (index) {
        case 0: return identity();
        case 1: return pauli_x();
        case 2: return pauli_y();
        case 3: return pauli_z();
        default: throw Error(ErrorCode::IndexOutOfRange, "Pauli index must be 0..3");
    }
}

Mat2 hadamard() {
    const double r = 1.0 / std::numbers::sqrt2;
    return {r, r, r, -r};
}

Mat2 phase_s() { return {1.0, 0.0, 0.0, kI}; }

Mat2 t_gate() { return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)}; }

Mat2 u(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
}

Eigen::Matrix4cd cnot() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
}

Eigen::MatrixXcd to_matrix(const Mat2& m) {
    Eigen::MatrixXcd out(2, 2);
    out << m[0], m[1], m[2], m[3];
    return out;
}

Mat2 adjoint(const Mat2& m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

double unitarity_defect(const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd d = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff();
}

}  // namespace gates

namespace {

void check_qubit(const QuantumState& state, std::size_t qubit) {
    if (qubit >= state.n_qubits()) {
        throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(qubit) + " out of range for " +
                                                    std::to_string(state.n_qubits()) + "-qubit state");
    }
}

}  // namespace

void apply_1q(QuantumState& state, const Mat2& g, std::size_t target) {
    check_qubit(state, target);
    const std::size_t stride = state.mask(target);
    const std::size_t dim = state.dimension();
    auto amps = state.amplitudes();
    // Spelled out in reals: std::complex operator* takes the slow
    // NaN-recovery path (__muldc3) unless -ffast-math is on.
    const double g0r = g[0].real(), g0i = g[0].imag(), g1r = g[1].real(), g1i = g[1].imag();
    const double g2r = g[2].real(), g2i = g[2].imag(), g3r = g[3].real(), g3i = g[3].imag();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const double ar = amps[i0].real(), ai = amps[i0].imag();
            const double br = amps[i1].real(), bi = amps[i1].imag();
            amps[i0] = {g0r * ar - g0i * ai + g1r * br - g1i * bi, g0r * ai + g0i * ar + g1r * bi + g1i * br};
            amps[i1] = {g2r * ar - g2i * ai + g3r * br - g3i * bi, g2r * ai + g2i * ar + g3r * bi + g3i * br};
        }
    }
}

void apply_cx(QuantumState& state, std::size_t control, std::size_t target) {
    check_qubit(state, control);
    check_qubit(state, target);
    if (control == target) throw Error(ErrorCode::SameQubit, "CX control and target must differ");
    const std::size_t cmask = state.mask(control);
    const std::size_t tmask = state.mask(target);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
    }
}

void apply_matrix(QuantumState& state, const Eigen::MatrixXcd& op, std::span<const std::size_t> qubits) {
    const std::size_t k = qubits.size();
    const std::size_t sub = std::size_t{1} << k;
    if (static_cast<std::size_t>(op.rows()) != sub || static_cast<std::size_t>(op.cols()) != sub) {
        throw Error(ErrorCode::DimensionMismatch, "operator size does not match qubit count");
    }
    std::size_t all = 0;
    std::vector<std::size_t> masks(k);
    for (std::size_t j = 0; j < k; ++j) {
        check_qubit(state, qubits[j]);
        masks[j] = state.mask(qubits[j]);
        if (all & masks[j]) throw Error(ErrorCode::SameQubit, "operator qubits must be distinct");
        all |= masks[j];
    }
    // offsets[s] = global index bits for local basis index s (qubits[0] = MSB)
    std::vector<std::size_t> offsets(sub, 0);
    for (std::size_t s = 0; s < sub; ++s) {
        for (std::size_t j = 0; j < k; ++j) {
            if (s & (std::size_t{1} << (k - 1 - j))) offsets[s] |= masks[j];
        }
    }
    auto amps = state.amplitudes();
    std::vector<Complex> in(sub), out(sub);
    for (std::size_t base = 0; base < state.dimension(); ++base) {
        if (base & all) continue;
        for (std::size_t s = 0; s < sub; ++s) in[s] = amps[base | offsets[s]];
        for (std::size_t r = 0; r < sub; ++r) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < sub; ++c) acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            out[r] = acc;
        }
        for (std::size_t s = 0; s < sub; ++s) amps[base | offsets[s]] = out[s];
    }
}

double probability_of_one(const QuantumState& state, std::size_t qubit) {
    check_qubit(state, qubit);
    const std::size_t m = state.mask(qubit);
    double p = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if (i & m) p += std::norm(state[i]);
    }
    return p;
}

double collapse(QuantumState& state, std::size_t qubit, int bit) {
    check_qubit(state, qubit);
    const std::size_t m = state.mask(qubit);
    double p = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if (((i & m) != 0) == (bit != 0)) p += std::norm(state[i]);
    }
    if (p < 1e-12) {
        throw Error(ErrorCode::DegenerateNorm, "measurement branch has probability " + std::to_string(p));
    }
    const double scale = 1.0 / std::sqrt(p);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if (((i & m) != 0) == (bit != 0)) {
            amps[i] *= scale;
        } else {
            amps[i] = 0.0;
        }
    }
    return p;
}

MeasureOutcome measure_qubit(QuantumState& state, std::size_t qubit, double uniform) {
    const double p1 = probability_of_one(state, qubit);
    const double p0 = 1.0 - p1;
    const int bit = uniform < p0 ? 0 : 1;
    return {bit, collapse(state, qubit, bit)};
}

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
    const std::size_t n = a.n_qubits() + b.n_qubits();
    if (n > kMaxStateQubits) {
        throw Error(ErrorCode::CapacityExceeded, "tensor product of " + std::to_string(n) +
                                                     " qubits exceeds the dense state limit");
    }
    std::vector<Complex> amps(a.dimension() * b.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        for (std::size_t j = 0; j < b.dimension(); ++j) amps[i * b.dimension() + j] = a[i] * b[j];
    }
    return QuantumState::from_amplitudes(std::move(amps), true);
}

Complex inner_product(const QuantumState& a, const QuantumState& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw Error(ErrorCode::DimensionMismatch, "inner product of states with different qubit counts");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

bool equal_up_to_global_phase(const QuantumState& a, const QuantumState& b, double tol) {
    const Complex overlap = inner_product(a, b);
    const double magnitude = std::abs(overlap);
    if (magnitude == 0.0) return false;
    const Complex phase = overlap / magnitude;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        if (std::abs(b[i] - phase * a[i]) > tol) return false;
    }
    return true;
}

}  // namespace qdb
