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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "qdb/qasm/ir.hpp"
#include "qdb/qasm/parser.hpp"

namespace qdb::qasm {

namespace {

using ParamEnv = std::map<std::string, double, std::less<>>;

struct GateDef {
    std::vector<std::string> params;
    std::vector<std::string> qargs;
    const std::vector<BodyStatement>* body = nullptr;
    bool opaque = false;
};

/// Where the primitives currently being emitted come from.
struct Origin {
    Span span;
    std::size_t statement = 0;
    std::size_t op_id = 0;
    std::string label;
    std::vector<std::size_t> op_qubits;
    std::optional<Condition> condition;
};

class Elaborator {
 public:
    explicit Elaborator(const Program& program) : program_(program) {
        ir_.file = program.file;
        gates_["U"] = GateDef{{"theta", "phi", "lambda"}, {"q"}, nullptr, false};
        gates_["CX"] = GateDef{{}, {"c", "t"}, nullptr, false};
    }

    CircuitIR run() {
        std::vector<std::size_t> first_instruction(program_.statements.size() + 1, 0);
        for (std::size_t i = 0; i < program_.statements.size(); ++i) {
            first_instruction[i] = ir_.instructions.size();
            statement_ = i;
            const Statement& stmt = program_.statements[i];
            std::visit([&](const auto& node) { visit(node, stmt.span); }, stmt.node);
        }
        first_instruction.back() = ir_.instructions.size();

        for (const Comment& c : program_.comments) {
            std::string_view body = c.text;
            if (body.starts_with("//")) body.remove_prefix(2);
            while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) {
                body.remove_prefix(1);
            }
            if (!body.starts_with("@qdb")) continue;
            body.remove_prefix(4);
            Directive d = parse_directive(body, ir_, c.span, program_.file);
            d.anchor = first_instruction[std::min(c.next_statement, program_.statements.size())];
            d.text = c.text;
            ir_.directives.push_back(std::move(d));
        }
        std::stable_sort(ir_.directives.begin(), ir_.directives.end(),
                         [](const Directive& a, const Directive& b) { return a.anchor < b.anchor; });
        return std::move(ir_);
    }

 private:
    [[noreturn]] void error(const std::string& message, const Span& span) const {
        const std::string* file = &program_.file;
        if (statement_ < program_.statements.size()) {
            const Statement& stmt = program_.statements[statement_];
            if (!stmt.origin.empty() && !(span == stmt.span)) file = &stmt.origin;
        }
        throw SourceError(ErrorCode::SemanticError, message, *file, span);
    }

    bool register_exists(const std::string& name) const {
        return ir_.find_qreg(name) || ir_.find_creg(name);
    }

    void visit(const Include& inc, const Span& span) {
        error("unresolved include \"" + inc.file + "\"", span);
    }

    void visit(const QregDecl& d, const Span& span) {
        if (register_exists(d.name)) error("register '" + d.name + "' already declared", span);
        if (d.size == 0) error("register '" + d.name + "' must have positive size", span);
        ir_.qregs.push_back(Register{d.name, ir_.n_qubits, d.size});
        ir_.n_qubits += d.size;
    }

    void visit(const CregDecl& d, const Span& span) {
        if (register_exists(d.name)) error("register '" + d.name + "' already declared", span);
        if (d.size == 0) error("register '" + d.name + "' must have positive size", span);
        ir_.cregs.push_back(Register{d.name, ir_.n_clbits, d.size});
        ir_.n_clbits += d.size;
    }

    void visit(const GateDecl& d, const Span& span) {
        if (gates_.count(d.name)) error("gate '" + d.name + "' already declared", span);
        check_unique(d.params, "parameter", span);
        check_unique(d.qargs, "qubit argument", span);
        if (!d.opaque) {
            ParamEnv env;
            for (const auto& p : d.params) env[p] = 0.0;
            for (const BodyStatement& b : d.body) {
                if (const auto* call = std::get_if<GateCall>(&b.node)) {
                    const GateDef& callee = lookup_gate(*call);
                    check_call_shape(*call, callee);
                    for (const Expr& e : call->params) evaluate(e, env);
                    check_body_args(call->args, d.qargs);
                    std::set<std::string> distinct;
                    for (const auto& a : call->args) {
                        if (!distinct.insert(a.reg).second) {
                            error("duplicate qubit argument '" + a.reg + "'", a.span);
                        }
                    }
                } else {
                    check_body_args(std::get<Barrier>(b.node).args, d.qargs);
                }
            }
        }
        gates_[d.name] = GateDef{d.params, d.qargs, &d.body, d.opaque};
    }

    void visit(const GateCall& call, const Span& span) { emit_call(call, span, std::nullopt); }

    void visit(const Measure& m, const Span& span) { emit_measure(m, span, std::nullopt); }

    void visit(const Reset& r, const Span& span) { emit_reset(r, span, std::nullopt); }

    void visit(const Barrier& b, const Span& span) {
        Origin origin = top_origin(span, "barrier", {});
        std::vector<std::size_t> qubits;
        for (const Argument& a : b.args) {
            for (std::size_t q : resolve_qubits(a)) {
                if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) qubits.push_back(q);
            }
        }
        origin.op_qubits = qubits;
        Instruction ins = base(OpKind::Barrier, origin);
        ins.qubits = std::move(qubits);
        ir_.instructions.push_back(std::move(ins));
    }

    void visit(const Conditional& c, const Span& span) {
        const Register* creg = ir_.find_creg(c.creg);
        if (!creg) {
            if (ir_.find_qreg(c.creg)) {
                error("quantum register '" + c.creg + "' used in classical condition", c.creg_span);
            }
            error("undeclared classical register '" + c.creg + "'", c.creg_span);
        }
        if (creg->size < 64 && c.value >= (std::uint64_t{1} << creg->size)) {
            error("condition value " + std::to_string(c.value) + " does not fit in '" + c.creg + "'",
                  span);
        }
        Condition cond{creg->name, creg->offset, creg->size, c.value};
        std::visit(
            [&](const auto& op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, GateCall>) {
                    emit_call(op, span, cond);
                } else if constexpr (std::is_same_v<T, Measure>) {
                    emit_measure(op, span, cond);
                } else {
                    emit_reset(op, span, cond);
                }
            },
            c.op);
    }

    void check_unique(const std::vector<std::string>& names, const char* what, const Span& span) {
        std::set<std::string> seen;
        for (const auto& n : names) {
            if (!seen.insert(n).second) error(std::string("duplicate ") + what + " '" + n + "'", span);
        }
    }

    void check_body_args(const std::vector<Argument>& args, const std::vector<std::string>& qargs) {
        for (const Argument& a : args) {
            if (a.index) error("indexed argument not allowed inside a gate body", a.span);
            if (std::find(qargs.begin(), qargs.end(), a.reg) == qargs.end()) {
                error("unknown qubit argument '" + a.reg + "'", a.span);
            }
        }
    }

    const GateDef& lookup_gate(const GateCall& call) const {
        auto it = gates_.find(call.name);
        if (it == gates_.end()) {
            if (register_exists(call.name)) {
                error("'" + call.name + "' is a register, not a gate", call.name_span);
            }
            error("undeclared gate '" + call.name + "'", call.name_span);
        }
        return it->second;
    }

    void check_call_shape(const GateCall& call, const GateDef& def) const {
        if (call.params.size() != def.params.size()) {
            error("gate '" + call.name + "' expects " + std::to_string(def.params.size()) +
                      " parameter(s), got " + std::to_string(call.params.size()),
                  call.name_span);
        }
        if (call.args.size() != def.qargs.size()) {
            error("gate '" + call.name + "' expects " + std::to_string(def.qargs.size()) +
                      " qubit argument(s), got " + std::to_string(call.args.size()),
                  call.name_span);
        }
    }

    double evaluate(const Expr& e, const ParamEnv& env) const {
        switch (e.kind) {
            case Expr::Kind::Number: return e.number;
            case Expr::Kind::Pi: return std::numbers::pi;
            case Expr::Kind::Param: {
                auto it = env.find(e.text);
                if (it == env.end()) error("unknown identifier '" + e.text + "' in expression", e.span);
                return it->second;
            }
            case Expr::Kind::Neg: return -evaluate(e.operands[0], env);
            case Expr::Kind::Add: return evaluate(e.operands[0], env) + evaluate(e.operands[1], env);
            case Expr::Kind::Sub: return evaluate(e.operands[0], env) - evaluate(e.operands[1], env);
            case Expr::Kind::Mul: return evaluate(e.operands[0], env) * evaluate(e.operands[1], env);
            case Expr::Kind::Div: return evaluate(e.operands[0], env) / evaluate(e.operands[1], env);
            case Expr::Kind::Pow:
                return std::pow(evaluate(e.operands[0], env), evaluate(e.operands[1], env));
            case Expr::Kind::Call: {
                double x = evaluate(e.operands[0], env);
                if (e.text == "sin") return std::sin(x);
                if (e.text == "cos") return std::cos(x);
                if (e.text == "tan") return std::tan(x);
                if (e.text == "exp") return std::exp(x);
                if (e.text == "ln") return std::log(x);
                if (e.text == "sqrt") return std::sqrt(x);
                error("unknown function '" + e.text + "'", e.span);
            }
        }
        return 0.0;
    }

    std::vector<std::size_t> resolve_qubits(const Argument& a) const {
        const Register* reg = ir_.find_qreg(a.reg);
        if (!reg) {
            if (ir_.find_creg(a.reg)) {
                error("classical register '" + a.reg + "' used as quantum operand", a.span);
            }
            error("undeclared quantum register '" + a.reg + "'", a.span);
        }
        return expand(*reg, a);
    }

    std::vector<std::size_t> resolve_clbits(const Argument& a) const {
        const Register* reg = ir_.find_creg(a.reg);
        if (!reg) {
            if (ir_.find_qreg(a.reg)) {
                error("quantum register '" + a.reg + "' used as classical operand", a.span);
            }
            error("undeclared classical register '" + a.reg + "'", a.span);
        }
        return expand(*reg, a);
    }

    std::vector<std::size_t> expand(const Register& reg, const Argument& a) const {
        if (a.index) {
            if (*a.index >= reg.size) {
                error("index " + std::to_string(*a.index) + " out of range for '" + reg.name + "[" +
                          std::to_string(reg.size) + "]'",
                      a.span);
            }
            return {reg.offset + *a.index};
        }
        std::vector<std::size_t> out(reg.size);
        for (std::size_t i = 0; i < reg.size; ++i) out[i] = reg.offset + i;
        return out;
    }

    Origin top_origin(const Span& span, std::string label, std::optional<Condition> condition) {
        return Origin{span, statement_, next_op_id_++, std::move(label), {}, std::move(condition)};
    }

    Instruction base(OpKind kind, const Origin& origin) const {
        Instruction ins;
        ins.kind = kind;
        ins.condition = origin.condition;
        ins.span = origin.span;
        ins.statement = origin.statement;
        ins.op_id = origin.op_id;
        ins.label = origin.label;
        ins.op_qubits = origin.op_qubits;
        return ins;
    }

    void emit_call(const GateCall& call, const Span& span, const std::optional<Condition>& cond) {
        const GateDef& def = lookup_gate(call);
        check_call_shape(call, def);
        if (def.opaque) error("opaque gate '" + call.name + "' has no definition to simulate", call.name_span);

        std::vector<double> params;
        for (const Expr& e : call.params) params.push_back(evaluate(e, {}));

        std::vector<std::vector<std::size_t>> operands;
        std::size_t width = 1;
        for (const Argument& a : call.args) {
            operands.push_back(resolve_qubits(a));
            std::size_t n = operands.back().size();
            if (!a.index) {
                if (width != 1 && n != width) error("register size mismatch in broadcast", a.span);
                width = n;
            }
        }
        for (std::size_t k = 0; k < width; ++k) {
            std::vector<std::size_t> qubits;
            for (const auto& list : operands) qubits.push_back(list.size() == 1 ? list[0] : list[k]);
            std::set<std::size_t> distinct(qubits.begin(), qubits.end());
            if (distinct.size() != qubits.size()) error("gate '" + call.name + "' applied to repeated qubit", span);
            Origin origin = top_origin(span, call.name, cond);
            origin.op_qubits = qubits;
            inline_gate(call.name, params, qubits, origin);
        }
    }

    void inline_gate(const std::string& name, const std::vector<double>& params,
                     const std::vector<std::size_t>& qubits, const Origin& origin) {
        if (name == "U") {
            Instruction ins = base(OpKind::U, origin);
            ins.params = {params[0], params[1], params[2]};
            ins.qubits = qubits;
            ir_.instructions.push_back(std::move(ins));
            return;
        }
        if (name == "CX") {
            Instruction ins = base(OpKind::CX, origin);
            ins.qubits = qubits;
            ir_.instructions.push_back(std::move(ins));
            return;
        }
        const GateDef& def = gates_.at(name);
        ParamEnv env;
        for (std::size_t i = 0; i < def.params.size(); ++i) env[def.params[i]] = params[i];
        auto map_arg = [&](const Argument& a) {
            auto it = std::find(def.qargs.begin(), def.qargs.end(), a.reg);
            return qubits[static_cast<std::size_t>(it - def.qargs.begin())];
        };
        for (const BodyStatement& b : *def.body) {
            if (const auto* call = std::get_if<GateCall>(&b.node)) {
                std::vector<double> inner_params;
                for (const Expr& e : call->params) inner_params.push_back(evaluate(e, env));
                std::vector<std::size_t> inner_qubits;
                for (const Argument& a : call->args) inner_qubits.push_back(map_arg(a));
                if (gates_.at(call->name).opaque) {
                    error("gate '" + name + "' uses opaque gate '" + call->name + "'", origin.span);
                }
                inline_gate(call->name, inner_params, inner_qubits, origin);
            } else {
                Instruction ins = base(OpKind::Barrier, origin);
                for (const Argument& a : std::get<Barrier>(b.node).args) ins.qubits.push_back(map_arg(a));
                ir_.instructions.push_back(std::move(ins));
            }
        }
    }

    void emit_measure(const Measure& m, const Span& span, const std::optional<Condition>& cond) {
        std::vector<std::size_t> qs = resolve_qubits(m.qubit);
        std::vector<std::size_t> cs = resolve_clbits(m.clbit);
        if (qs.size() != cs.size()) error("measure operands differ in size", span);
        for (std::size_t k = 0; k < qs.size(); ++k) {
            Origin origin = top_origin(span, "measure", cond);
            origin.op_qubits = {qs[k]};
            Instruction ins = base(OpKind::Measure, origin);
            ins.qubits = {qs[k]};
            ins.clbit = cs[k];
            ir_.instructions.push_back(std::move(ins));
        }
    }

    void emit_reset(const Reset& r, const Span& span, const std::optional<Condition>& cond) {
        for (std::size_t q : resolve_qubits(r.qubit)) {
            Origin origin = top_origin(span, "reset", cond);
            origin.op_qubits = {q};
            Instruction ins = base(OpKind::Reset, origin);
            ins.qubits = {q};
            ir_.instructions.push_back(std::move(ins));
        }
    }

    const Program& program_;
    CircuitIR ir_;
    std::map<std::string, GateDef> gates_;
    std::size_t statement_ = 0;
    std::size_t next_op_id_ = 0;
};

// --- directive grammar ------------------------------------------------------

struct DirectiveToken {
    enum Kind { Word, Number, Symbol, End } kind;
    std::string text;
};

std::vector<DirectiveToken> scan_directive(std::string_view text) {
    std::vector<DirectiveToken> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' ||
                    (text[j] == '-' && j + 1 < text.size() && text[j + 1] != '>'))) {
                ++j;
            }
            out.push_back({DirectiveToken::Word, std::string(text.substr(i, j - i))});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '.' || text[j] == 'e' || text[j] == 'E' ||
                                       ((text[j] == '-' || text[j] == '+') && j > i &&
                                        (text[j - 1] == 'e' || text[j - 1] == 'E')))) {
                ++j;
            }
            out.push_back({DirectiveToken::Number, std::string(text.substr(i, j - i))});
            i = j;
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({DirectiveToken::Symbol, "->"});
            i += 2;
        } else {
            out.push_back({DirectiveToken::Symbol, std::string(1, c)});
            ++i;
        }
    }
    out.push_back({DirectiveToken::End, ""});
    return out;
}

class DirectiveParser {
 public:
    DirectiveParser(std::string_view text, const CircuitIR& ir, const Span& span, const std::string& file)
        : tokens_(scan_directive(text)), ir_(ir), span_(span), file_(file) {}

    Directive run() {
        Directive d;
        d.span = span_;
        const DirectiveToken& kind = next();
        if (kind.kind != DirectiveToken::Word) fail("expected directive kind");
        if (kind.text == "break") {
            d.kind = DirectiveKind::Break;
        } else if (kind.text == "assert-classical") {
            d.kind = DirectiveKind::AssertClassical;
            qubit_list(d);
            expect("->");
            d.expected_bits = bits(d.qubits.size());
        } else if (kind.text == "assert-superposition") {
            d.kind = DirectiveKind::AssertSuperposition;
            qubit_list(d);
        } else if (kind.text == "assert-separable") {
            d.kind = DirectiveKind::AssertSeparable;
            qubit_list(d);
        } else if (kind.text == "assert-entangled") {
            d.kind = DirectiveKind::AssertEntangled;
            qubit_list(d);
        } else if (kind.text == "assert-distribution") {
            d.kind = DirectiveKind::AssertDistribution;
            distribution(d);
        } else {
            fail("unknown directive '" + kind.text + "'");
        }
        if (peek().kind != DirectiveToken::End) fail("unexpected '" + peek().text + "' in directive");
        return d;
    }

 private:
    const DirectiveToken& peek() const { return tokens_[pos_]; }
    const DirectiveToken& next() {
        const DirectiveToken& t = tokens_[pos_];
        if (t.kind != DirectiveToken::End) ++pos_;
        return t;
    }
    bool accept(std::string_view sym) {
        if (peek().kind == DirectiveToken::Symbol && peek().text == sym) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(std::string_view sym) {
        if (!accept(sym)) fail("expected '" + std::string(sym) + "' in directive");
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw SourceError(ErrorCode::SemanticError, message, file_, span_);
    }

    /// `reg` or `reg[i]`, appended to `out`; returns the register.
    const Register* reference(std::vector<std::size_t>& out, bool classical, std::string& text) {
        const DirectiveToken& name = next();
        if (name.kind != DirectiveToken::Word) fail("expected register name in directive");
        const Register* reg = classical ? ir_.find_creg(name.text) : ir_.find_qreg(name.text);
        if (!reg) fail("directive references undeclared register '" + name.text + "'");
        text = name.text;
        if (accept("[")) {
            const DirectiveToken& idx = next();
            if (idx.kind != DirectiveToken::Number) fail("expected index in directive");
            std::size_t i = std::stoul(idx.text);
            if (i >= reg->size) fail("directive index out of range for '" + name.text + "'");
            expect("]");
            out.push_back(reg->offset + i);
            text += "[" + idx.text + "]";
        } else {
            for (std::size_t i = 0; i < reg->size; ++i) out.push_back(reg->offset + i);
        }
        return reg;
    }

    void qubit_list(Directive& d) {
        std::string text;
        reference(d.qubits, false, text);
        d.target = text;
        while (true) {
            accept(",");
            if (peek().kind != DirectiveToken::Word) break;
            reference(d.qubits, false, text);
            d.target += "," + text;
        }
        std::set<std::size_t> distinct(d.qubits.begin(), d.qubits.end());
        if (distinct.size() != d.qubits.size()) fail("directive names a qubit twice");
    }

    std::string bits(std::size_t width) {
        const DirectiveToken& t = next();
        if (t.kind != DirectiveToken::Number) fail("expected bitstring in directive");
        if (t.text.size() != width || t.text.find_first_not_of("01") != std::string::npos) {
            fail("bitstring '" + t.text + "' must have " + std::to_string(width) + " binary digit(s)");
        }
        return t.text;
    }

    void distribution(Directive& d) {
        const DirectiveToken& name = peek();
        if (name.kind != DirectiveToken::Word) fail("expected register name in directive");
        std::string text;
        if (ir_.find_creg(name.text)) {
            d.classical_target = true;
            reference(d.clbits, true, text);
        } else {
            reference(d.qubits, false, text);
        }
        d.target = text;
        std::size_t width = d.classical_target ? d.clbits.size() : d.qubits.size();
        expect("{");
        double total = 0.0;
        while (!accept("}")) {
            std::string key = bits(width);
            expect(":");
            const DirectiveToken& p = next();
            if (p.kind != DirectiveToken::Number) fail("expected probability in directive");
            double prob = std::stod(p.text);
            if (prob < 0.0 || prob > 1.0) fail("probability out of [0,1] in directive");
            if (d.expected_distribution.count(key)) fail("outcome '" + key + "' listed twice");
            d.expected_distribution[key] = prob;
            total += prob;
            if (!accept(",")) {
                expect("}");
                break;
            }
        }
        if (std::abs(total - 1.0) > 1e-9) fail("expected distribution must sum to 1");
        if (peek().kind == DirectiveToken::Word && peek().text == "tol") {
            next();
            const DirectiveToken& t = next();
            if (t.kind != DirectiveToken::Number) fail("expected tolerance after 'tol'");
            d.tolerance = std::stod(t.text);
            if (!(d.tolerance > 0.0 && d.tolerance < 1.0)) fail("tolerance must lie in (0,1)");
        }
    }

    std::vector<DirectiveToken> tokens_;
    std::size_t pos_ = 0;
    const CircuitIR& ir_;
    const Span& span_;
    const std::string& file_;
};

}  // namespace

std::string_view op_kind_name(OpKind kind) {
    switch (kind) {
        case OpKind::U: return "u";
        case OpKind::CX: return "cx";
        case OpKind::Measure: return "measure";
        case OpKind::Reset: return "reset";
        case OpKind::Barrier: return "barrier";
    }
    return "?";
}

std::string_view directive_kind_name(DirectiveKind kind) {
    switch (kind) {
        case DirectiveKind::Break: return "break";
        case DirectiveKind::AssertClassical: return "assert-classical";
        case DirectiveKind::AssertSuperposition: return "assert-superposition";
        case DirectiveKind::AssertSeparable: return "assert-separable";
        case DirectiveKind::AssertEntangled: return "assert-entangled";
        case DirectiveKind::AssertDistribution: return "assert-distribution";
    }
    return "?";
}

std::vector<std::size_t> CircuitIR::instructions_at_line(std::size_t line) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < instructions.size(); ++i) {
        if (instructions[i].span.line == line) out.push_back(i);
    }
    return out;
}

namespace {
std::string element_name(const std::vector<Register>& regs, std::size_t index) {
    for (const Register& r : regs) {
        if (index >= r.offset && index < r.offset + r.size) {
            return r.name + "[" + std::to_string(index - r.offset) + "]";
        }
    }
    return "#" + std::to_string(index);
}
}  // namespace

std::string CircuitIR::qubit_name(std::size_t qubit) const { return element_name(qregs, qubit); }

std::string CircuitIR::clbit_name(std::size_t clbit) const { return element_name(cregs, clbit); }

const Register* CircuitIR::find_qreg(std::string_view name) const {
    for (const Register& r : qregs) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

const Register* CircuitIR::find_creg(std::string_view name) const {
    for (const Register& r : cregs) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

bool CircuitIR::is_unitary() const {
    return std::none_of(instructions.begin(), instructions.end(), [](const Instruction& i) {
        return i.kind == OpKind::Measure || i.kind == OpKind::Reset || i.condition.has_value();
    });
}

CircuitIR elaborate(const Program& program) { return Elaborator(program).run(); }

Directive parse_directive(std::string_view text, const CircuitIR& ir, const Span& span,
                          const std::string& file) {
    return DirectiveParser(text, ir, span, file).run();
}

CircuitIR load_circuit(std::string_view source, const LoadOptions& options) {
    Program program = parse_source(source, options.file);
    program = resolve_includes(std::move(program), IncludeOptions{options.include_path});
    return elaborate(program);
}

CircuitIR load_circuit_file(const std::filesystem::path& path, LoadOptions options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SourceError(ErrorCode::IncludeNotFound, "cannot open '" + path.string() + "'",
                          path.string(), Span{});
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    options.file = path.string();
    return load_circuit(buf.str(), options);
}

}  // namespace qdb::qasm
