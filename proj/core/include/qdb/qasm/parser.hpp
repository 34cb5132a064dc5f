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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qdb/qasm/ast.hpp"
#include "qdb/qasm/lexer.hpp"

namespace qdb::qasm {

/// Recursive-descent parser for OpenQASM 2.0. Comment tokens are collected
/// into Program::comments; every other token must fit the grammar. Throws
/// SourceError with ParseError (span + expected set) or UnsupportedVersion.
Program parse(const std::vector<Token>& tokens, const std::string& file = {});

/// Parses an include file: same grammar, but the version header is optional.
Program parse_fragment(std::string_view source, const std::string& file = {});

/// Convenience: tokenize + parse.
Program parse_source(std::string_view source, const std::string& file = {});

struct IncludeOptions {
    /// Directories searched for non-builtin includes. Empty means only the
    /// embedded qelib1.inc is available.
    std::vector<std::filesystem::path> search_path;
};

/// Replaces every `include` statement by the statements of the named file.
/// "qelib1.inc" always resolves to the embedded standard header. A file
/// already spliced in is skipped on later includes; a file that includes
/// itself (directly or not) is a CyclicInclude error.
Program resolve_includes(Program program, const IncludeOptions& options = {});

/// The embedded standard gate library, as included by `include "qelib1.inc";`.
std::string_view qelib1_source();

/// Pretty-prints a Program back to OpenQASM 2.0 text.
std::string to_qasm(const Program& program);

/// Prints one parameter expression.
std::string to_string(const Expr& expr);

}  // namespace qdb::qasm
