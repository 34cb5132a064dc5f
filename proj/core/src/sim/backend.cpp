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

#include "qdb/sim/backend.hpp"

#include <cmath>

#include "qdb/errors.hpp"

namespace qdb::sim {

std::string_view method_name(Method method) {
    return method == Method::DenseInplace ? "dense-inplace" : "naive-matrix";
}

Method parse_method(std::string_view text) {
    if (text == "dense" || text == "dense-inplace") return Method::DenseInplace;
    if (text == "naive" || text == "naive-matrix") return Method::NaiveMatrix;
    throw Error(ErrorCode::OutOfRange, "unknown engine '" + std::string(text) + "'");
}

std::size_t default_max_qubits(Method method) { return method == Method::DenseInplace ? 20 : 10; }

std::unique_ptr<Backend> make_backend(Method method) {
    if (method == Method::DenseInplace) return std::make_unique<DenseBackend>();
    return std::make_unique<NaiveBackend>();
}

// --- dense -------------------------------------------------------------------

void DenseBackend::reset(std::size_t n_qubits) { state_ = QuantumState(n_qubits); }

void DenseBackend::load(const QuantumState& state) { state_ = state; }

void DenseBackend::apply_u(const std::array<double, 3>& p, std::size_t target) {
    apply_1q(state_, gates::u(p[0], p[1], p[2]), target);
}

void DenseBackend::apply_cx(std::size_t control, std::size_t target) { qdb::apply_cx(state_, control, target); }

double DenseBackend::probability_of_one(std::size_t qubit) const { return qdb::probability_of_one(state_, qubit); }

void DenseBackend::collapse(std::size_t qubit, int bit) { qdb::collapse(state_, qubit, bit); }

// --- naive -------------------------------------------------------------------

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

namespace {

Eigen::MatrixXcd embed_factors(const std::vector<Eigen::MatrixXcd>& factors) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (const auto& f : factors) out = kron(out, f);
    return out;
}

Eigen::MatrixXcd projector_1q(int bit) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2, 2);
    p(bit, bit) = 1.0;
    return p;
}

void check_range(std::size_t qubit, std::size_t n) {
    if (qubit >= n) throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(qubit) + " out of range");
}

}  // namespace

Eigen::MatrixXcd embed_1q(const Mat2& gate, std::size_t target, std::size_t n_qubits) {
    check_range(target, n_qubits);
    std::vector<Eigen::MatrixXcd> factors(n_qubits, Eigen::MatrixXcd::Identity(2, 2));
    factors[target] = gates::to_matrix(gate);
    return embed_factors(factors);
}

Eigen::MatrixXcd embed_cx(std::size_t control, std::size_t target, std::size_t n_qubits) {
    check_range(control, n_qubits);
    check_range(target, n_qubits);
    if (control == target) throw Error(ErrorCode::SameQubit, "CX control and target must differ");
    std::vector<Eigen::MatrixXcd> off(n_qubits, Eigen::MatrixXcd::Identity(2, 2));
    std::vector<Eigen::MatrixXcd> on = off;
    off[control] = projector_1q(0);
    on[control] = projector_1q(1);
    on[target] = gates::to_matrix(gates::not_gate());
    return embed_factors(off) + embed_factors(on);
}

void NaiveBackend::reset(std::size_t n_qubits) {
    if (n_qubits != state_.n_qubits()) cache_.clear();
    state_ = QuantumState(n_qubits);
}

void NaiveBackend::load(const QuantumState& state) {
    if (state.n_qubits() != state_.n_qubits()) cache_.clear();
    state_ = state;
}

const Eigen::MatrixXcd& NaiveBackend::cached(const Key& key) const {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const std::size_t n = state_.n_qubits();
    const auto& [kind, a, b, p0, p1, p2] = key;
    Eigen::MatrixXcd m;
    switch (kind) {
        case 0: m = embed_1q(gates::u(p0, p1, p2), a, n); break;
        case 1: m = embed_cx(a, b, n); break;
        default: {
            std::vector<Eigen::MatrixXcd> factors(n, Eigen::MatrixXcd::Identity(2, 2));
            factors[a] = projector_1q(static_cast<int>(b));
            m = embed_factors(factors);
        }
    }
    return cache_.emplace(key, std::move(m)).first->second;
}

void NaiveBackend::multiply(const Eigen::MatrixXcd& op) {
    Eigen::Map<Eigen::VectorXcd> v(state_.amplitudes().data(), static_cast<Eigen::Index>(state_.dimension()));
    Eigen::VectorXcd next = op * v;
    v = next;
}

const Eigen::MatrixXcd& NaiveBackend::projector(std::size_t qubit, int bit) const {
    check_range(qubit, state_.n_qubits());
    return cached(Key{2, qubit, static_cast<std::size_t>(bit), 0.0, 0.0, 0.0});
}

void NaiveBackend::apply_u(const std::array<double, 3>& p, std::size_t target) {
    check_range(target, state_.n_qubits());
    multiply(cached(Key{0, target, 0, p[0], p[1], p[2]}));
}

void NaiveBackend::apply_cx(std::size_t control, std::size_t target) {
    check_range(control, state_.n_qubits());
    check_range(target, state_.n_qubits());
    if (control == target) throw Error(ErrorCode::SameQubit, "CX control and target must differ");
    multiply(cached(Key{1, control, target, 0.0, 0.0, 0.0}));
}

double NaiveBackend::probability_of_one(std::size_t qubit) const {
    Eigen::Map<const Eigen::VectorXcd> v(state_.amplitudes().data(), static_cast<Eigen::Index>(state_.dimension()));
    return (projector(qubit, 1) * v).squaredNorm();
}

void NaiveBackend::collapse(std::size_t qubit, int bit) {
    multiply(projector(qubit, bit));
    const double p = state_.norm_squared();
    if (p < 1e-12) throw Error(ErrorCode::DegenerateNorm, "measurement branch has probability " + std::to_string(p));
    state_.normalize();
}

}  // namespace qdb::sim
