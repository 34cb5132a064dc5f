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
#include <map>
#include <memory>
#include <string_view>
#include <tuple>

#include <Eigen/Dense>

#include "qdb/state/gates.hpp"
#include "qdb/state/state.hpp"

namespace qdb::sim {

enum class Method { DenseInplace, NaiveMatrix };

std::string_view method_name(Method method);
/// Accepts "dense", "dense-inplace", "naive", "naive-matrix".
Method parse_method(std::string_view text);
std::size_t default_max_qubits(Method method);

/// State-update primitives an engine has to provide. The executor owns
/// everything classical (registers, conditions, sampling decisions), so two
/// backends fed the same random draws take identical branches.
class Backend {
 public:
    virtual ~Backend() = default;

    virtual std::string_view name() const = 0;
    virtual void reset(std::size_t n_qubits) = 0;
    virtual void load(const QuantumState& state) = 0;
    virtual void apply_u(const std::array<double, 3>& params, std::size_t target) = 0;
    virtual void apply_cx(std::size_t control, std::size_t target) = 0;
    virtual double probability_of_one(std::size_t qubit) const = 0;
    /// Projects `qubit` onto `bit` and renormalises.
    virtual void collapse(std::size_t qubit, int bit) = 0;

    const QuantumState& state() const noexcept { return state_; }
    QuantumState& state() noexcept { return state_; }

 protected:
    QuantumState state_;
};

/// In-place tensor-structured kernels from state/gates.hpp.
class DenseBackend : public Backend {
 public:
    std::string_view name() const override { return "dense-inplace"; }
    void reset(std::size_t n_qubits) override;
    void load(const QuantumState& state) override;
    void apply_u(const std::array<double, 3>& params, std::size_t target) override;
    void apply_cx(std::size_t control, std::size_t target) override;
    double probability_of_one(std::size_t qubit) const override;
    void collapse(std::size_t qubit, int bit) override;
};

/// Reference engine: every step multiplies the state by a full 2^n x 2^n
/// matrix assembled from Kronecker products, and measurement uses explicit
/// projectors. Slow and memory hungry by construction.
class NaiveBackend : public Backend {
 public:
    std::string_view name() const override { return "naive-matrix"; }
    void reset(std::size_t n_qubits) override;
    void load(const QuantumState& state) override;
    void apply_u(const std::array<double, 3>& params, std::size_t target) override;
    void apply_cx(std::size_t control, std::size_t target) override;
    double probability_of_one(std::size_t qubit) const override;
    void collapse(std::size_t qubit, int bit) override;

 protected:
    void multiply(const Eigen::MatrixXcd& op);
    const Eigen::MatrixXcd& projector(std::size_t qubit, int bit) const;

 private:
    using Key = std::tuple<int, std::size_t, std::size_t, double, double, double>;
    const Eigen::MatrixXcd& cached(const Key& key) const;
    mutable std::map<Key, Eigen::MatrixXcd> cache_;
};

std::unique_ptr<Backend> make_backend(Method method);

// Kronecker-built operators used by the naive backend.

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
/// I x ... x gate(at target) x ... x I on n qubits (qubit 0 leftmost factor).
Eigen::MatrixXcd embed_1q(const Mat2& gate, std::size_t target, std::size_t n_qubits);
/// |0><0|_c x I + |1><1|_c x X_t on n qubits.
Eigen::MatrixXcd embed_cx(std::size_t control, std::size_t target, std::size_t n_qubits);

}  // namespace qdb::sim
