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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qdb/state/state.hpp"

namespace qdb {

/// Density operator on n qubits, same index convention as QuantumState.
class DensityMatrix {
 public:
    DensityMatrix() = default;
    /// Takes a 2^n x 2^n matrix; does not validate (see is_valid).
    explicit DensityMatrix(Eigen::MatrixXcd matrix);

    /// |psi><psi|.
    static DensityMatrix from_pure(const QuantumState& state);
    /// I / 2^n.
    static DensityMatrix maximally_mixed(std::size_t n_qubits);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
    Complex operator()(std::size_t row, std::size_t col) const { return matrix_(row, col); }

    Complex trace() const { return matrix_.trace(); }

    /// Hermitian, unit trace and eigenvalues >= -tol.
    bool is_valid(double tol = 1e-9) const;

 private:
    std::size_t n_qubits_ = 0;
    Eigen::MatrixXcd matrix_;
};

/// Reduced state of the kept qubits (sorted ascending, duplicates dropped).
/// Throws EmptyKeepSet or IndexOutOfRange.
DensityMatrix partial_trace(const QuantumState& state, std::vector<std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep);

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

/// <psi|rho|psi>. Throws DimensionMismatch.
double fidelity(const QuantumState& psi, const DensityMatrix& rho);

/// Clips negative eigenvalues to zero and rescales to unit trace. The input
/// only needs to be Hermitian.
DensityMatrix project_to_density(const Eigen::MatrixXcd& hermitian);

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

/// Tensor product of single-qubit Pauli labels, leftmost label on qubit 0.
class PauliString {
 public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> labels) : labels_(std::move(labels)) {}
    /// "XIZ"; throws DimensionMismatch on anything outside {I,X,Y,Z}.
    static PauliString parse(std::string_view text);

    std::size_t size() const noexcept { return labels_.size(); }
    Pauli operator[](std::size_t i) const { return labels_[i]; }
    std::span<const Pauli> labels() const noexcept { return labels_; }
    bool is_identity() const;
    std::string str() const;
    /// Dense 2^k x 2^k matrix.
    Eigen::MatrixXcd matrix() const;

    /// All 4^k strings over k qubits in lexicographic I<X<Y<Z order.
    static std::vector<PauliString> all(std::size_t k);

 private:
    std::vector<Pauli> labels_;
};

/// <psi|P|psi>, computed without building P. Throws DimensionMismatch.
double pauli_expectation(const QuantumState& state, const PauliString& pauli);

}  // namespace qdb
