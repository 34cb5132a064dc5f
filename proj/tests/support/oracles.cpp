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

#include "oracles.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace qdb::testing {

std::filesystem::path data_dir() { return QDB_TEST_DATA_DIR; }

std::string read_data(const std::string& name) {
    std::ifstream in(data_dir() / name);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

qasm::CircuitIR load_data(const std::string& name) { return qasm::load_circuit_file(data_dir() / name); }

Eigen::Matrix2cd u_matrix(double theta, double phi, double lambda) {
    const Cx i(0.0, 1.0);
    Eigen::Matrix2cd m;
    m << std::cos(theta / 2), -std::exp(i * lambda) * std::sin(theta / 2),
        std::exp(i * phi) * std::sin(theta / 2), std::exp(i * (phi + lambda)) * std::cos(theta / 2);
    return m;
}

Eigen::MatrixXcd full_operator(const qasm::Instruction& ins, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    if (ins.kind == qasm::OpKind::U) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
        for (std::size_t q = 0; q < n; ++q) {
            Eigen::MatrixXcd factor = q == ins.qubits[0]
                                          ? Eigen::MatrixXcd(u_matrix(ins.params[0], ins.params[1], ins.params[2]))
                                          : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity());
            acc = Eigen::kroneckerProduct(acc, factor).eval();
        }
        return acc;
    }
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    if (ins.kind != qasm::OpKind::CX) return Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
        // read bits as a string, q0 first
        std::string bits;
        for (std::size_t q = 0; q < n; ++q) bits.push_back((k >> (n - 1 - q)) & 1 ? '1' : '0');
        if (bits[ins.qubits[0]] == '1') bits[ins.qubits[1]] = bits[ins.qubits[1]] == '1' ? '0' : '1';
        const std::size_t image = std::stoull(bits, nullptr, 2);
        p(static_cast<Eigen::Index>(image), static_cast<Eigen::Index>(k)) = 1.0;
    }
    return p;
}

Eigen::MatrixXcd oracle_unitary(const qasm::CircuitIR& ir) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << ir.n_qubits);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& ins : ir.instructions) u = (full_operator(ins, ir.n_qubits) * u).eval();
    return u;
}

Eigen::VectorXcd oracle_state(const qasm::CircuitIR& ir, std::size_t index) {
    return oracle_unitary(ir).col(static_cast<Eigen::Index>(index));
}

Eigen::MatrixXcd dft_matrix(std::size_t n) {
    const Cx omega = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(n));
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
                std::pow(omega, static_cast<double>((j * k) % n)) / std::sqrt(static_cast<double>(n));
        }
    }
    return m;
}

double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
    Eigen::Index r = 0, c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(b(r, c)) == 0.0) return a.cwiseAbs().maxCoeff();
    const Cx phase = a(r, c) / b(r, c);
    const Cx unit = phase / std::abs(phase);
    return (a - unit * b).cwiseAbs().maxCoeff();
}

std::string random_circuit(std::size_t n, std::size_t n_gates, std::uint64_t seed, bool measure_all) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
    const std::vector<std::string> one{"h", "x", "y", "z", "s", "t", "sdg", "rx", "ry", "rz", "u3"};
    const std::vector<std::string> two{"cx", "cz", "swap", "cp"};
    std::ostringstream out;
    out.precision(17);
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << n << "];\n";
    if (measure_all) out << "creg c[" << n << "];\n";
    for (std::size_t g = 0; g < n_gates; ++g) {
        const bool pair = n > 1 && rng() % 3 == 0;
        if (pair) {
            const std::string& name = two[rng() % two.size()];
            std::size_t a = qubit(rng), b = qubit(rng);
            while (b == a) b = qubit(rng);
            out << name;
            if (name == "cp") out << "(" << angle(rng) << ")";
            out << " q[" << a << "],q[" << b << "];\n";
        } else {
            const std::string& name = one[rng() % one.size()];
            out << name;
            if (name == "rx" || name == "ry" || name == "rz") out << "(" << angle(rng) << ")";
            if (name == "u3") out << "(" << angle(rng) << "," << angle(rng) << "," << angle(rng) << ")";
            out << " q[" << qubit(rng) << "];\n";
        }
    }
    if (measure_all) out << "measure q -> c;\n";
    return out.str();
}

Eigen::MatrixXcd oracle_reduced(const Eigen::VectorXcd& psi, std::size_t n, const std::vector<std::size_t>& keep) {
    const std::size_t k = keep.size();
    const auto dk = static_cast<Eigen::Index>(std::size_t{1} << k);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dk, dk);
    auto sub_index = [&](std::size_t full) {
        std::size_t s = 0;
        for (std::size_t q : keep) s = (s << 1) | ((full >> (n - 1 - q)) & 1);
        return s;
    };
    auto rest = [&](std::size_t full) {
        std::size_t r = full;
        for (std::size_t q : keep) r &= ~(std::size_t{1} << (n - 1 - q));
        return r;
    };
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) {
            if (rest(a) != rest(b)) continue;
            rho(static_cast<Eigen::Index>(sub_index(a)), static_cast<Eigen::Index>(sub_index(b))) +=
                psi(static_cast<Eigen::Index>(a)) * std::conj(psi(static_cast<Eigen::Index>(b)));
        }
    }
    return rho;
}

namespace {

void factor_rec(std::uint64_t n, std::uint64_t min, std::vector<std::uint64_t>& cur,
                std::vector<std::vector<std::uint64_t>>& out) {
    if (n == 1) {
        if (!cur.empty()) out.push_back(cur);
        return;
    }
    for (std::uint64_t d = min; d <= n; ++d) {
        if (n % d) continue;
        cur.push_back(d);
        factor_rec(n / d, d, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<std::uint64_t>> factorizations(std::uint64_t n) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> cur;
    factor_rec(n, 2, cur, out);
    return out;
}

}  // namespace qdb::testing
