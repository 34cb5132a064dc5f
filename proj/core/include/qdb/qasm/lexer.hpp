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

#include <string>
#include <string_view>
#include <vector>

#include "qdb/errors.hpp"

namespace qdb::qasm {

enum class TokenKind { Keyword, Identifier, Integer, Real, String, Symbol, Comment };

std::string_view token_kind_name(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string lexeme;
    Span span;

    bool is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
    bool is_symbol(std::string_view text) const { return is(TokenKind::Symbol, text); }
    bool is_keyword(std::string_view text) const { return is(TokenKind::Keyword, text); }
};

/// Splits OpenQASM 2.0 source into tokens. Whitespace is dropped; `//`
/// comments are kept as Comment tokens (without the trailing newline) since
/// debugger directives live in them. Throws SourceError(LexError) on the first
/// byte that cannot start a token.
std::vector<Token> tokenize(std::string_view source, const std::string& file = {});

}  // namespace qdb::qasm
