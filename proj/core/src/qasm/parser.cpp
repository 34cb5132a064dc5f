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

#include "qdb/qasm/parser.hpp"

#include <charconv>
#include <cstdlib>

namespace qdb::qasm {

namespace {

class Parser {
 public:
    Parser(const std::vector<Token>& tokens, const std::string& file, bool header_required)
        : file_(file), header_required_(header_required) {
        for (const Token& t : tokens) {
            if (t.kind == TokenKind::Comment) {
                comments_.push_back(&t);
            } else {
                tokens_.push_back(&t);
            }
        }
        end_offset_ = tokens.empty() ? 0 : tokens.back().span.end;
        end_line_ = tokens.empty() ? 1 : tokens.back().span.line;
        end_column_ = tokens.empty() ? 1 : tokens.back().span.column + tokens.back().lexeme.size();
    }

    Program run() {
        Program program;
        program.file = file_;
        if (header_required_ || (peek() && peek()->is_keyword("OPENQASM"))) parse_header(program);
        while (!at_end()) {
            program.statements.push_back(statement());
        }
        // Bind every comment to the first statement that starts after it.
        std::size_t next = 0;
        for (const Token* c : comments_) {
            while (next < program.statements.size() &&
                   program.statements[next].span.begin < c->span.begin) {
                ++next;
            }
            program.comments.push_back(Comment{c->lexeme, c->span, next});
        }
        return program;
    }

 private:
    bool at_end() const { return pos_ >= tokens_.size(); }

    const Token* peek(std::size_t ahead = 0) const {
        return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : nullptr;
    }

    Span here() const {
        if (const Token* t = peek()) return t->span;
        return Span{end_line_, end_column_, end_offset_, end_offset_};
    }

    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const {
        std::string text = message;
        if (!expected.empty()) {
            text += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) text += i + 1 == expected.size() ? " or " : ", ";
                text += expected[i];
            }
            text += ")";
        }
        throw SourceError(ErrorCode::ParseError, text, file_, here(), std::move(expected));
    }

    std::string describe_current() const {
        const Token* t = peek();
        if (!t) return "unexpected end of input";
        return "unexpected " + std::string(token_kind_name(t->kind)) + " '" + t->lexeme + "'";
    }

    const Token& expect_symbol(std::string_view sym) {
        const Token* t = peek();
        if (!t || !t->is_symbol(sym)) fail(describe_current(), {"'" + std::string(sym) + "'"});
        ++pos_;
        return *t;
    }

    bool accept_symbol(std::string_view sym) {
        const Token* t = peek();
        if (t && t->is_symbol(sym)) {
            ++pos_;
            return true;
        }
        return false;
    }

    const Token& expect_kind(TokenKind kind) {
        const Token* t = peek();
        if (!t || t->kind != kind) fail(describe_current(), {std::string(token_kind_name(kind))});
        ++pos_;
        return *t;
    }

    std::size_t expect_size() {
        const Token& t = expect_kind(TokenKind::Integer);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(t.lexeme.data(), t.lexeme.data() + t.lexeme.size(), value);
        if (ec != std::errc{}) {
            throw SourceError(ErrorCode::ParseError, "integer literal out of range", file_, t.span);
        }
        return value;
    }

    Span from(const Span& first) const {
        const Token* last = tokens_[pos_ - 1];
        return Span{first.line, first.column, first.begin, last->span.end};
    }

    void parse_header(Program& program) {
        const Token* t = peek();
        if (!t || !t->is_keyword("OPENQASM")) fail(describe_current(), {"'OPENQASM'"});
        ++pos_;
        const Token* v = peek();
        if (!v || (v->kind != TokenKind::Real && v->kind != TokenKind::Integer)) {
            fail(describe_current(), {"version number"});
        }
        ++pos_;
        std::string text = v->lexeme;
        auto dot = text.find('.');
        int major = std::atoi(text.substr(0, dot).c_str());
        int minor = dot == std::string::npos ? 0 : std::atoi(text.substr(dot + 1).c_str());
        if (major != 2 || minor != 0) {
            throw SourceError(ErrorCode::UnsupportedVersion,
                              "unsupported OpenQASM version " + text + "; only 2.0 is supported",
                              file_, v->span);
        }
        program.major = major;
        program.minor = minor;
        expect_symbol(";");
    }

    Statement statement() {
        const Token* t = peek();
        Span start = t->span;
        if (t->is_keyword("include")) {
            ++pos_;
            const Token& name = expect_kind(TokenKind::String);
            expect_symbol(";");
            return {Include{name.lexeme.substr(1, name.lexeme.size() - 2)}, from(start), {}};
        }
        if (t->is_keyword("qreg") || t->is_keyword("creg")) {
            bool quantum = t->is_keyword("qreg");
            ++pos_;
            std::string name = expect_kind(TokenKind::Identifier).lexeme;
            expect_symbol("[");
            std::size_t size = expect_size();
            expect_symbol("]");
            expect_symbol(";");
            if (quantum) return {QregDecl{name, size}, from(start), {}};
            return {CregDecl{name, size}, from(start), {}};
        }
        if (t->is_keyword("gate") || t->is_keyword("opaque")) return gate_decl();
        if (t->is_keyword("if")) {
            ++pos_;
            expect_symbol("(");
            const Token& creg = expect_kind(TokenKind::Identifier);
            expect_symbol("==");
            std::uint64_t value = 0;
            const Token& v = expect_kind(TokenKind::Integer);
            auto [ptr, ec] = std::from_chars(v.lexeme.data(), v.lexeme.data() + v.lexeme.size(), value);
            if (ec != std::errc{}) {
                throw SourceError(ErrorCode::ParseError, "integer literal out of range", file_, v.span);
            }
            expect_symbol(")");
            Conditional cond;
            cond.creg = creg.lexeme;
            cond.value = value;
            cond.creg_span = creg.span;
            const Token* op = peek();
            if (op && op->is_keyword("measure")) {
                cond.op = measure();
            } else if (op && op->is_keyword("reset")) {
                cond.op = reset();
            } else if (op && op->kind == TokenKind::Identifier) {
                cond.op = gate_call();
            } else {
                fail(describe_current(), {"gate call", "'measure'", "'reset'"});
            }
            return {std::move(cond), from(start), {}};
        }
        if (t->is_keyword("measure")) {
            Measure m = measure();
            return {std::move(m), from(start), {}};
        }
        if (t->is_keyword("reset")) {
            Reset r = reset();
            return {std::move(r), from(start), {}};
        }
        if (t->is_keyword("barrier")) {
            ++pos_;
            Barrier b{argument_list()};
            expect_symbol(";");
            return {std::move(b), from(start), {}};
        }
        if (t->kind == TokenKind::Identifier) {
            GateCall call = gate_call();
            return {std::move(call), from(start), {}};
        }
        fail(describe_current(), {"statement"});
    }

    Measure measure() {
        ++pos_;  // measure
        Measure m;
        m.qubit = argument();
        expect_symbol("->");
        m.clbit = argument();
        expect_symbol(";");
        return m;
    }

    Reset reset() {
        ++pos_;  // reset
        Reset r{argument()};
        expect_symbol(";");
        return r;
    }

    GateCall gate_call() {
        GateCall call;
        const Token& name = expect_kind(TokenKind::Identifier);
        call.name = name.lexeme;
        call.name_span = name.span;
        if (accept_symbol("(")) {
            if (!accept_symbol(")")) {
                call.params.push_back(expression());
                while (accept_symbol(",")) call.params.push_back(expression());
                expect_symbol(")");
            }
        }
        call.args = argument_list();
        expect_symbol(";");
        return call;
    }

    std::vector<Argument> argument_list() {
        std::vector<Argument> args;
        args.push_back(argument());
        while (accept_symbol(",")) args.push_back(argument());
        return args;
    }

    Argument argument() {
        const Token& name = expect_kind(TokenKind::Identifier);
        Argument arg{name.lexeme, std::nullopt, name.span};
        if (accept_symbol("[")) {
            arg.index = expect_size();
            expect_symbol("]");
            arg.span = from(name.span);
        }
        return arg;
    }

    std::vector<std::string> identifier_list() {
        std::vector<std::string> ids;
        ids.push_back(expect_kind(TokenKind::Identifier).lexeme);
        while (accept_symbol(",")) ids.push_back(expect_kind(TokenKind::Identifier).lexeme);
        return ids;
    }

    Statement gate_decl() {
        Span start = peek()->span;
        GateDecl decl;
        decl.opaque = peek()->is_keyword("opaque");
        ++pos_;
        decl.name = expect_kind(TokenKind::Identifier).lexeme;
        if (accept_symbol("(")) {
            if (!accept_symbol(")")) {
                decl.params = identifier_list();
                expect_symbol(")");
            }
        }
        decl.qargs = identifier_list();
        if (decl.opaque) {
            expect_symbol(";");
            return {std::move(decl), from(start), {}};
        }
        expect_symbol("{");
        while (!accept_symbol("}")) {
            const Token* t = peek();
            if (!t) fail(describe_current(), {"'}'"});
            Span body_start = t->span;
            if (t->is_keyword("barrier")) {
                ++pos_;
                Barrier b{argument_list()};
                expect_symbol(";");
                decl.body.push_back({std::move(b), from(body_start)});
            } else if (t->kind == TokenKind::Identifier) {
                GateCall call = gate_call();
                decl.body.push_back({std::move(call), from(body_start)});
            } else {
                fail(describe_current(), {"gate call", "'barrier'", "'}'"});
            }
        }
        return {std::move(decl), from(start), {}};
    }

    // expression := term (('+' | '-') term)*
    Expr expression() {
        Expr lhs = term();
        while (true) {
            const Token* t = peek();
            if (t && (t->is_symbol("+") || t->is_symbol("-"))) {
                ++pos_;
                Expr rhs = term();
                lhs = binary(t->is_symbol("+") ? Expr::Kind::Add : Expr::Kind::Sub, std::move(lhs),
                             std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    // term := unary (('*' | '/') unary)*
    Expr term() {
        Expr lhs = unary();
        while (true) {
            const Token* t = peek();
            if (t && (t->is_symbol("*") || t->is_symbol("/"))) {
                ++pos_;
                Expr rhs = unary();
                lhs = binary(t->is_symbol("*") ? Expr::Kind::Mul : Expr::Kind::Div, std::move(lhs),
                             std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    // unary := '-' unary | power
    Expr unary() {
        const Token* t = peek();
        if (t && t->is_symbol("-")) {
            ++pos_;
            Expr operand = unary();
            Expr e;
            e.kind = Expr::Kind::Neg;
            e.span = Span{t->span.line, t->span.column, t->span.begin, operand.span.end};
            e.operands.push_back(std::move(operand));
            return e;
        }
        return power();
    }

    // power := primary ('^' unary)?   (right associative)
    Expr power() {
        Expr base = primary();
        if (accept_symbol("^")) {
            Expr exponent = unary();
            return binary(Expr::Kind::Pow, std::move(base), std::move(exponent));
        }
        return base;
    }

    Expr primary() {
        const Token* t = peek();
        if (!t) fail(describe_current(), {"expression"});
        Expr e;
        e.span = t->span;
        if (t->kind == TokenKind::Integer || t->kind == TokenKind::Real) {
            ++pos_;
            e.kind = Expr::Kind::Number;
            e.text = t->lexeme;
            e.number = std::strtod(t->lexeme.c_str(), nullptr);
            return e;
        }
        if (t->is_keyword("pi")) {
            ++pos_;
            e.kind = Expr::Kind::Pi;
            return e;
        }
        if (t->kind == TokenKind::Identifier) {
            ++pos_;
            if (accept_symbol("(")) {
                e.kind = Expr::Kind::Call;
                e.text = t->lexeme;
                e.operands.push_back(expression());
                expect_symbol(")");
                e.span = from(t->span);
                return e;
            }
            e.kind = Expr::Kind::Param;
            e.text = t->lexeme;
            return e;
        }
        if (accept_symbol("(")) {
            Expr inner = expression();
            expect_symbol(")");
            return inner;
        }
        fail(describe_current(), {"number", "'pi'", "identifier", "'('", "'-'"});
    }

    static Expr binary(Expr::Kind kind, Expr lhs, Expr rhs) {
        Expr e;
        e.kind = kind;
        e.span = Span{lhs.span.line, lhs.span.column, lhs.span.begin, rhs.span.end};
        e.operands.push_back(std::move(lhs));
        e.operands.push_back(std::move(rhs));
        return e;
    }

    const std::string& file_;
    bool header_required_;
    std::vector<const Token*> tokens_;
    std::vector<const Token*> comments_;
    std::size_t pos_ = 0;
    std::size_t end_offset_ = 0;
    std::size_t end_line_ = 1;
    std::size_t end_column_ = 1;
};

}  // namespace

Program parse(const std::vector<Token>& tokens, const std::string& file) {
    return Parser(tokens, file, true).run();
}

Program parse_fragment(std::string_view source, const std::string& file) {
    return Parser(tokenize(source, file), file, false).run();
}

Program parse_source(std::string_view source, const std::string& file) {
    return parse(tokenize(source, file), file);
}

std::vector<std::string> Program::includes() const {
    std::vector<std::string> out;
    for (const auto& s : statements) {
        if (auto* inc = std::get_if<Include>(&s.node)) out.push_back(inc->file);
    }
    return out;
}

std::vector<QregDecl> Program::qregs() const {
    std::vector<QregDecl> out;
    for (const auto& s : statements) {
        if (auto* d = std::get_if<QregDecl>(&s.node)) out.push_back(*d);
    }
    return out;
}

std::vector<CregDecl> Program::cregs() const {
    std::vector<CregDecl> out;
    for (const auto& s : statements) {
        if (auto* d = std::get_if<CregDecl>(&s.node)) out.push_back(*d);
    }
    return out;
}

std::vector<GateDecl> Program::gate_decls() const {
    std::vector<GateDecl> out;
    for (const auto& s : statements) {
        if (auto* d = std::get_if<GateDecl>(&s.node)) out.push_back(*d);
    }
    return out;
}

}  // namespace qdb::qasm
