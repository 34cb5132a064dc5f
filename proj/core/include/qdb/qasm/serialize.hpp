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

#include <nlohmann/json.hpp>

#include "qdb/qasm/ast.hpp"
#include "qdb/qasm/ir.hpp"
#include "qdb/qasm/lexer.hpp"

namespace qdb::qasm {

nlohmann::json span_to_json(const Span& span);
nlohmann::json token_to_json(const Token& token);

/// AST as JSON. With `with_spans == false` the output is purely structural,
/// which is what round-trip comparisons use.
nlohmann::json program_to_json(const Program& program, bool with_spans = true);

nlohmann::json directive_to_json(const Directive& directive);
nlohmann::json instruction_to_json(const Instruction& instruction);
nlohmann::json circuit_to_json(const CircuitIR& ir);

}  // namespace qdb::qasm
