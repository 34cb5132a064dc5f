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

#include "qdb/state/density.hpp"

#include <algorithm>
#include <cmath>

#include "qdb/errors.hpp"

namespace qdb {

namespace {

std::size_t qubits_for_dimension(Eigen::Index dim) {
    std::size_t n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    if ((Eigen::Index{1} << n) != dim) {
        throw Error(ErrorCode::DimensionMismatch, "density matrix dimension is not a power of two");
    }
    return n;
}

std::vector<std::size_t> normalize_keep(std::vector<std::size_t> keep, std::size_t n) {
    if (keep.empty()) throw Error(ErrorCode::EmptyKeepSet, "partial trace needs at least one kept qubit");
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.back() >= n) {
        throw Error(ErrorCode::IndexOutOfRange, "kept qubit " + std::to_string(keep.back()) + " out of range");
    }
    return keep;
}

/// Global index fragments for the kept and traced-out subsystems: any global
/// index is kept_bits[i] | env_bits[e].
struct Split {
    std::vector<std::size_t> kept_bits;
    std::vector<std::size_t> env_bits;
};

Split split_indices(std::size_t n, const std::vector<std::size_t>& keep) {
    std::vector<std::size_t> env;
    for (std::size_t q = 0; q < n; ++q) {
        if (!std::binary_search(keep.begin(), keep.end(), q)) env.push_back(q);
    }
    auto fragments = [n](const std::vector<std::size_t>& qubits) {
        const std::size_t k = qubits.size();
        std::vector<std::size_t> out(std::size_t{1} << k, 0);
        for (std::size_t s = 0; s < out.size(); ++s) {
            for (std::size_t j = 0; j < k; ++j) {
                if (s & (std::size_t{1} << (k - 1 - j))) out[s] |= std::size_t{1} << (n - 1 - qubits[j]);
            }
        }
        return out;
    };
    return {fragments(keep), fragments(env)};
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) throw Error(ErrorCode::DimensionMismatch, "density matrix must be square");
    n_qubits_ = qubits_for_dimension(matrix_.rows());
}

DensityMatrix DensityMatrix::from_pure(const QuantumState& state) {
    Eigen::Map<const Eigen::VectorXcd> v(state.amplitudes().data(), static_cast<Eigen::Index>(state.dimension()));
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n_qubits) {
    const auto dim = Eigen::Index{1} << n_qubits;
    return DensityMatrix(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

bool DensityMatrix::is_valid(double tol) const {
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(trace() - Complex{1.0, 0.0}) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
}

DensityMatrix partial_trace(const QuantumState& state, std::vector<std::size_t> keep) {
    keep = normalize_keep(std::move(keep), state.n_qubits());
    const Split split = split_indices(state.n_qubits(), keep);
    const auto kdim = static_cast<Eigen::Index>(split.kept_bits.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kdim, kdim);
    for (std::size_t e : split.env_bits) {
        for (Eigen::Index i = 0; i < kdim; ++i) {
            const Complex ai = state[split.kept_bits[static_cast<std::size_t>(i)] | e];
            if (ai == Complex{}) continue;
            for (Eigen::Index j = 0; j < kdim; ++j) {
                out(i, j) += ai * std::conj(state[split.kept_bits[static_cast<std::size_t>(j)] | e]);
            }
        }
    }
    return DensityMatrix(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
    keep = normalize_keep(std::move(keep), rho.n_qubits());
    const Split split = split_indices(rho.n_qubits(), keep);
    const auto kdim = static_cast<Eigen::Index>(split.kept_bits.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kdim, kdim);
    for (std::size_t e : split.env_bits) {
        for (Eigen::Index i = 0; i < kdim; ++i) {
            for (Eigen::Index j = 0; j < kdim; ++j) {
                out(i, j) += rho.matrix()(static_cast<Eigen::Index>(split.kept_bits[static_cast<std::size_t>(i)] | e),
                                          static_cast<Eigen::Index>(split.kept_bits[static_cast<std::size_t>(j)] | e));
            }
        }
    }
    return DensityMatrix(std::move(out));
}

double purity(const DensityMatrix& rho) {
    // Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
    return rho.matrix().cwiseAbs2().sum();
}

double fidelity(const QuantumState& psi, const DensityMatrix& rho) {
    if (psi.dimension() != rho.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "fidelity of state and density matrix of different sizes");
    }
    Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), static_cast<Eigen::Index>(psi.dimension()));
    return std::clamp((v.adjoint() * rho.matrix() * v)(0, 0).real(), 0.0, 1.0);
}

DensityMatrix project_to_density(const Eigen::MatrixXcd& hermitian) {
    Eigen::MatrixXcd sym = (hermitian + hermitian.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    Eigen::VectorXd values = solver.eigenvalues().cwiseMax(0.0);
    const double total = values.sum();
    if (total <= 0.0) throw Error(ErrorCode::DegenerateNorm, "estimate has no positive spectrum");
    values /= total;
    const Eigen::MatrixXcd& vectors = solver.eigenvectors();
    return DensityMatrix(vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint());
}

PauliString PauliString::parse(std::string_view text) {
    std::vector<Pauli> labels;
    for (char c : text) {
        switch (c) {
            case 'I': labels.push_back(Pauli::I); break;
            case 'X': labels.push_back(Pauli::X); break;
            case 'Y': labels.push_back(Pauli::Y); break;
            case 'Z': labels.push_back(Pauli::Z); break;
            default: throw Error(ErrorCode::DimensionMismatch, std::string("invalid Pauli label '") + c + "'");
        }
    }
    return PauliString(std::move(labels));
}

bool PauliString::is_identity() const {
    return std::all_of(labels_.begin(), labels_.end(), [](Pauli p) { return p == Pauli::I; });
}

std::string PauliString::str() const {
    std::string out;
    for (Pauli p : labels_) out.push_back(static_cast<char>(p));
    return out;
}

Eigen::MatrixXcd PauliString::matrix() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (Pauli p : labels_) {
        Eigen::Matrix2cd m;
        switch (p) {
            case Pauli::I: m << 1, 0, 0, 1; break;
            case Pauli::X: m << 0, 1, 1, 0; break;
            case Pauli::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
            case Pauli::Z: m << 1, 0, 0, -1; break;
        }
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = out(r, c) * m;
        }
        out = std::move(next);
    }
    return out;
}

std::vector<PauliString> PauliString::all(std::size_t k) {
    static constexpr Pauli kOrder[] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
    std::vector<PauliString> out;
    const std::size_t count = std::size_t{1} << (2 * k);
    for (std::size_t code = 0; code < count; ++code) {
        std::vector<Pauli> labels(k);
        for (std::size_t j = 0; j < k; ++j) labels[j] = kOrder[(code >> (2 * (k - 1 - j))) & 3];
        out.emplace_back(std::move(labels));
    }
    return out;
}

double pauli_expectation(const QuantumState& state, const PauliString& pauli) {
    if (pauli.size() != state.n_qubits()) {
        throw Error(ErrorCode::DimensionMismatch, "Pauli string length " + std::to_string(pauli.size()) +
                                                      " does not match " + std::to_string(state.n_qubits()) +
                                                      " qubits");
    }
    std::size_t flip = 0;
    for (std::size_t q = 0; q < pauli.size(); ++q) {
        if (pauli[q] == Pauli::X || pauli[q] == Pauli::Y) flip |= state.mask(q);
    }
    Complex acc = 0.0;
    for (std::size_t x = 0; x < state.dimension(); ++x) {
        if (state[x] == Complex{}) continue;
        Complex phase = 1.0;
        for (std::size_t q = 0; q < pauli.size(); ++q) {
            const bool bit = (x & state.mask(q)) != 0;
            switch (pauli[q]) {
                case Pauli::Z: if (bit) phase = -phase; break;
                case Pauli::Y: phase *= bit ? Complex(0, -1) : Complex(0, 1); break;
                default: break;
            }
        }
        acc += std::conj(state[x ^ flip]) * phase * state[x];
    }
    return std::clamp(acc.real(), -1.0, 1.0);
}

}  // namespace qdb
