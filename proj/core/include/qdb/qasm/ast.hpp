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
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qdb/errors.hpp"

namespace qdb::qasm {

/// Parameter expression. Numbers keep their source lexeme so printing is exact.
struct Expr {
    enum class Kind { Number, Pi, Param, Neg, Add, Sub, Mul, Div, Pow, Call };

    Kind kind = Kind::Number;
    double number = 0.0;
    std::string text;  // Number lexeme, Param name, or Call function name
    std::vector<Expr> operands;
    Span span;
};

/// `q` or `q[3]`.
struct Argument {
    std::string reg;
    std::optional<std::size_t> index;
    Span span;
};

struct Include {
    std::string file;
};

struct QregDecl {
    std::string name;
    std::size_t size = 0;
};

struct CregDecl {
    std::string name;
    std::size_t size = 0;
};

struct GateCall {
    std::string name;
    std::vector<Expr> params;
    std::vector<Argument> args;
    Span name_span;
};

struct Measure {
    Argument qubit;
    Argument clbit;
};

struct Reset {
    Argument qubit;
};

struct Barrier {
    std::vector<Argument> args;
};

struct BodyStatement {
    std::variant<GateCall, Barrier> node;
    Span span;
};

struct GateDecl {
    std::string name;
    std::vector<std::string> params;
    std::vector<std::string> qargs;
    std::vector<BodyStatement> body;
    bool opaque = false;
};

/// `if (creg == value) op;`
struct Conditional {
    std::string creg;
    std::uint64_t value = 0;
    std::variant<GateCall, Measure, Reset> op;
    Span creg_span;
};

struct Statement {
    std::variant<Include, QregDecl, CregDecl, GateDecl, GateCall, Measure, Reset, Barrier,
                 Conditional>
        node;
    Span span;
    /// Include file a spliced statement came from; empty for the main file.
    /// `span` then points at the include line, inner spans into this file.
    std::string origin;
};

/// A `//` comment. `next_statement` is the index of the first statement that
/// follows it, or statements.size() when it trails the program.
struct Comment {
    std::string text;
    Span span;
    std::size_t next_statement = 0;
};

struct Program {
    int major = 2;
    int minor = 0;
    std::string file;
    std::vector<Statement> statements;
    std::vector<Comment> comments;
    /// Filled by resolve_includes with every file spliced in, in order.
    std::vector<std::string> resolved_includes;

    std::vector<std::string> includes() const;
    std::vector<QregDecl> qregs() const;
    std::vector<CregDecl> cregs() const;
    std::vector<GateDecl> gate_decls() const;
};

}  // namespace qdb::qasm
