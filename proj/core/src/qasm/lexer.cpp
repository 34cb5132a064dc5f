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

#include "qdb/qasm/lexer.hpp"

#include <array>
#include <cctype>

namespace qdb::qasm {

namespace {

constexpr std::array<std::string_view, 11> kKeywords = {
    "OPENQASM", "include", "qreg", "creg", "gate", "opaque",
    "measure",  "reset",   "barrier", "if", "pi"};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
    Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                advance();
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
                advance();
                continue;
            }
            start_ = pos_;
            start_line_ = line_;
            start_col_ = col_;
            out.push_back(next_token(c));
        }
        return out;
    }

 private:
    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    Token make(TokenKind kind) const {
        return Token{kind, std::string(src_.substr(start_, pos_ - start_)),
                     Span{start_line_, start_col_, start_, pos_}};
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw SourceError(ErrorCode::LexError, message, file_,
                          Span{start_line_, start_col_, start_, start_ + 1});
    }

    Token next_token(char c) {
        if (c == '/' && peek(1) == '/') {
            while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            // CRLF: the '\r' is whitespace, not comment text.
            Token t = make(TokenKind::Comment);
            if (!t.lexeme.empty() && t.lexeme.back() == '\r') {
                t.lexeme.pop_back();
                --t.span.end;
            }
            return t;
        }
        if (is_ident_start(c)) {
            while (is_ident_char(peek())) advance();
            Token t = make(TokenKind::Identifier);
            for (auto kw : kKeywords) {
                if (t.lexeme == kw) t.kind = TokenKind::Keyword;
            }
            return t;
        }
        if (is_digit(c) || (c == '.' && is_digit(peek(1)))) return number();
        if (c == '"') {
            advance();
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') advance();
            if (peek() != '"') fail("unterminated string literal");
            advance();
            return make(TokenKind::String);
        }
        if (c == '-' && peek(1) == '>') {
            advance(2);
            return make(TokenKind::Symbol);
        }
        if (c == '=' && peek(1) == '=') {
            advance(2);
            return make(TokenKind::Symbol);
        }
        switch (c) {
            case '[': case ']': case '(': case ')': case '{': case '}':
            case ';': case ',': case '+': case '-': case '*': case '/': case '^':
                advance();
                return make(TokenKind::Symbol);
            default:
                break;
        }
        if (static_cast<unsigned char>(c) >= 0x80) fail("illegal non-ASCII character");
        fail(std::string("illegal character '") + c + "'");
    }

    Token number() {
        bool real = false;
        while (is_digit(peek())) advance();
        if (peek() == '.') {
            real = true;
            advance();
            while (is_digit(peek())) advance();
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t ahead = 1;
            if (peek(1) == '+' || peek(1) == '-') ahead = 2;
            if (is_digit(peek(ahead))) {
                real = true;
                advance(ahead);
                while (is_digit(peek())) advance();
            }
        }
        return make(real ? TokenKind::Real : TokenKind::Integer);
    }

    std::string_view src_;
    const std::string& file_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    std::size_t start_ = 0;
    std::size_t start_line_ = 1;
    std::size_t start_col_ = 1;
};

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Integer: return "integer";
        case TokenKind::Real: return "real";
        case TokenKind::String: return "string";
        case TokenKind::Symbol: return "symbol";
        case TokenKind::Comment: return "comment";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view source, const std::string& file) {
    return Lexer(source, file).run();
}

}  // namespace qdb::qasm
