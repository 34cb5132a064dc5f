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

#include "qdb/state/state.hpp"

#include <cmath>

#include "qdb/errors.hpp"

namespace qdb {

QuantumState::QuantumState(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits > kMaxStateQubits) {
        throw Error(ErrorCode::CapacityExceeded,
                    std::to_string(n_qubits) + " qubits exceeds the dense state limit of " +
                        std::to_string(kMaxStateQubits));
    }
    amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

QuantumState QuantumState::basis(std::string_view bits) {
    QuantumState s(bits.size());
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[basis_index(bits)] = 1.0;
    return s;
}

QuantumState QuantumState::basis(std::size_t n_qubits, std::size_t index) {
    QuantumState s(n_qubits);
    if (index >= s.dimension()) {
        throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(index) + " out of range");
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

QuantumState QuantumState::from_amplitudes(std::vector<Complex> amplitudes, bool normalize) {
    std::size_t dim = amplitudes.size();
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    "amplitude vector length " + std::to_string(dim) + " is not a power of two");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    QuantumState s(0);
    s.n_qubits_ = n;
    s.amplitudes_ = std::move(amplitudes);
    if (normalize) {
        s.normalize();
    } else if (std::abs(s.norm_squared() - 1.0) > 1e-9) {
        throw Error(ErrorCode::DegenerateNorm, "amplitudes are not normalized");
    }
    return s;
}

double QuantumState::norm_squared() const noexcept {
    double total = 0.0;
    for (const Complex& a : amplitudes_) total += std::norm(a);
    return total;
}

void QuantumState::normalize() {
    double n2 = norm_squared();
    if (n2 < 1e-24) throw Error(ErrorCode::DegenerateNorm, "cannot normalize a zero vector");
    double scale = 1.0 / std::sqrt(n2);
    for (Complex& a : amplitudes_) a *= scale;
}

std::string QuantumState::label(std::size_t index) const { return basis_label(index, n_qubits_); }

std::vector<double> probabilities(const QuantumState& state) {
    std::vector<double> out(state.dimension());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(state[i]);
    return out;
}

std::size_t basis_index(std::string_view bits) {
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error(ErrorCode::DimensionMismatch, "basis label must contain only 0 and 1");
        }
        index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    return index;
}

std::string basis_label(std::size_t index, std::size_t width) {
    std::string out(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
        if (index & (std::size_t{1} << (width - 1 - i))) out[i] = '1';
    }
    return out;
}

}  // namespace qdb
