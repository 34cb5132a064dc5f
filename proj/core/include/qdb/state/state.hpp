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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qdb {

using Complex = std::complex<double>;

/// Largest register the dense representation will build (2^28 amplitudes is
/// 4 GiB); tensor() and the engines refuse anything bigger.
inline constexpr std::size_t kMaxStateQubits = 28;

/// Pure state of n qubits as a dense amplitude vector.
///
/// Ordering: qubit 0 is the leftmost character of a basis label and the most
/// significant bit of the index, so |x0 x1 ... x(n-1)> sits at
/// sum_i x_i * 2^(n-1-i). `x q[1]` on three qubits therefore yields |010>,
/// index 2.
class QuantumState {
 public:
    /// |0...0> on n qubits.
    explicit QuantumState(std::size_t n_qubits = 0);

    /// Computational basis state from a label such as "010" (q0 leftmost).
    static QuantumState basis(std::string_view bits);
    static QuantumState basis(std::size_t n_qubits, std::size_t index);

    /// Takes ownership of an amplitude vector. The length must be a power of
    /// two; with `normalize` the vector is rescaled, otherwise its norm must
    /// already be 1 within 1e-9. Throws DimensionMismatch / DegenerateNorm.
    static QuantumState from_amplitudes(std::vector<Complex> amplitudes, bool normalize = false);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }

    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    std::span<Complex> amplitudes() noexcept { return amplitudes_; }
    const Complex& operator[](std::size_t index) const { return amplitudes_[index]; }
    Complex& operator[](std::size_t index) { return amplitudes_[index]; }

    double norm_squared() const noexcept;
    /// Rescales to unit norm; throws DegenerateNorm if the norm is ~0.
    void normalize();

    /// Index bit that belongs to `qubit`.
    std::size_t mask(std::size_t qubit) const noexcept { return std::size_t{1} << (n_qubits_ - 1 - qubit); }

    /// Basis label of an index, q0 leftmost.
    std::string label(std::size_t index) const;

 private:
    std::size_t n_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Born probabilities |a_x|^2 for every basis index.
std::vector<double> probabilities(const QuantumState& state);

/// Parses a basis label ("010") into an index under the q0-leftmost rule.
std::size_t basis_index(std::string_view bits);

/// Basis label of `index` over `width` bits, most significant first.
std::string basis_label(std::size_t index, std::size_t width);

}  // namespace qdb
