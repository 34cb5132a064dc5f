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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdb/errors.hpp"
#include "qdb/qasm/ast.hpp"

namespace qdb::qasm {

struct Register {
    std::string name;
    std::size_t offset = 0;  // first global index
    std::size_t size = 0;
};

/// `if (creg == value)` guard attached to an elaborated instruction.
struct Condition {
    std::string creg;
    std::size_t offset = 0;
    std::size_t size = 0;
    std::uint64_t value = 0;
};

enum class OpKind { U, CX, Measure, Reset, Barrier };

std::string_view op_kind_name(OpKind kind);

/// One primitive step. U carries (theta, phi, lambda) and one qubit; CX
/// carries (control, target).
struct Instruction {
    OpKind kind = OpKind::U;
    std::array<double, 3> params{};
    std::vector<std::size_t> qubits;
    std::size_t clbit = 0;
    std::optional<Condition> condition;

    // Source map.
    Span span;
    std::size_t statement = 0;
    /// Identifies the top-level gate application this primitive came from;
    /// all primitives inlined from one `swap q[0],q[2];` share it.
    std::size_t op_id = 0;
    std::string label;                    // call-site gate name, e.g. "swap"
    std::vector<std::size_t> op_qubits;   // call-site qubits
};

enum class DirectiveKind {
    Break,
    AssertClassical,
    AssertSuperposition,
    AssertSeparable,
    AssertEntangled,
    AssertDistribution,
};

std::string_view directive_kind_name(DirectiveKind kind);

/// A `// @qdb ...` annotation, resolved against the declared registers.
struct Directive {
    DirectiveKind kind = DirectiveKind::Break;
    std::size_t anchor = 0;  // instruction index the directive precedes
    std::string target;      // operand text as written, e.g. "q" or "q[2]"
    std::vector<std::size_t> qubits;
    /// assert-distribution over a classical register: its clbits, q0-leftmost.
    std::vector<std::size_t> clbits;
    bool classical_target = false;
    std::string expected_bits;
    std::map<std::string, double> expected_distribution;
    double tolerance = 0.05;
    std::string text;
    Span span;
};

struct CircuitIR {
    std::string file;
    std::size_t n_qubits = 0;
    std::size_t n_clbits = 0;
    std::vector<Register> qregs;
    std::vector<Register> cregs;
    std::vector<Instruction> instructions;
    std::vector<Directive> directives;  // ordered by anchor

    /// Indices of instructions whose source span starts on `line`.
    std::vector<std::size_t> instructions_at_line(std::size_t line) const;
    std::string qubit_name(std::size_t qubit) const;
    std::string clbit_name(std::size_t clbit) const;
    const Register* find_qreg(std::string_view name) const;
    const Register* find_creg(std::string_view name) const;
    bool is_unitary() const;  // no measure, reset or conditional
};

/// Expands register-level calls (broadcast), inlines every custom gate down to
/// U/CX, evaluates parameter expressions, and attaches `// @qdb` directives.
/// Throws SourceError(SemanticError) on undeclared names, arity mismatches,
/// quantum/classical operand confusion, or out-of-range indices.
CircuitIR elaborate(const Program& program);

/// Parses a single directive body (the text after `@qdb`). Register
/// references are resolved against `ir`.
Directive parse_directive(std::string_view text, const CircuitIR& ir, const Span& span = {},
                          const std::string& file = {});

struct LoadOptions {
    std::string file;
    std::vector<std::filesystem::path> include_path;
};

/// tokenize -> parse -> resolve_includes -> elaborate.
CircuitIR load_circuit(std::string_view source, const LoadOptions& options = {});

/// Reads `path` and loads it; include search path is taken from options.
CircuitIR load_circuit_file(const std::filesystem::path& path, LoadOptions options = {});

}  // namespace qdb::qasm
