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

#include "qdb/qasm/serialize.hpp"

#include "qdb/qasm/parser.hpp"

namespace qdb::qasm {

using nlohmann::json;

namespace {

struct AstWriter {
    bool spans;

    json expr(const Expr& e) const {
        static const char* names[] = {"number", "pi", "param", "neg", "add",
                                      "sub",    "mul", "div",  "pow", "call"};
        json j = {{"kind", names[static_cast<int>(e.kind)]}};
        if (e.kind == Expr::Kind::Number) j["value"] = e.text;
        if (e.kind == Expr::Kind::Param || e.kind == Expr::Kind::Call) j["name"] = e.text;
        if (!e.operands.empty()) {
            j["operands"] = json::array();
            for (const auto& o : e.operands) j["operands"].push_back(expr(o));
        }
        return j;
    }

    json arg(const Argument& a) const {
        json j = {{"reg", a.reg}, {"index", a.index ? json(*a.index) : json(nullptr)}};
        if (spans) j["span"] = span_to_json(a.span);
        return j;
    }

    json args(const std::vector<Argument>& list) const {
        json j = json::array();
        for (const auto& a : list) j.push_back(arg(a));
        return j;
    }

    json operator()(const Include& s) const { return {{"kind", "include"}, {"file", s.file}}; }
    json operator()(const QregDecl& s) const {
        return {{"kind", "qreg"}, {"name", s.name}, {"size", s.size}};
    }
    json operator()(const CregDecl& s) const {
        return {{"kind", "creg"}, {"name", s.name}, {"size", s.size}};
    }
    json operator()(const GateCall& s) const {
        json params = json::array();
        for (const auto& p : s.params) params.push_back(expr(p));
        return {{"kind", "gate-call"}, {"name", s.name}, {"params", params}, {"args", args(s.args)}};
    }
    json operator()(const Measure& s) const {
        return {{"kind", "measure"}, {"qubit", arg(s.qubit)}, {"clbit", arg(s.clbit)}};
    }
    json operator()(const Reset& s) const { return {{"kind", "reset"}, {"qubit", arg(s.qubit)}}; }
    json operator()(const Barrier& s) const { return {{"kind", "barrier"}, {"args", args(s.args)}}; }
    json operator()(const Conditional& s) const {
        json op = std::visit(*this, std::variant<GateCall, Measure, Reset>(s.op));
        return {{"kind", "if"}, {"creg", s.creg}, {"value", s.value}, {"op", op}};
    }
    json operator()(const GateDecl& s) const {
        json body = json::array();
        for (const auto& b : s.body) {
            json item = std::visit(*this, b.node);
            if (spans) item["span"] = span_to_json(b.span);
            body.push_back(item);
        }
        return {{"kind", s.opaque ? "opaque" : "gate"},
                {"name", s.name},
                {"params", s.params},
                {"qargs", s.qargs},
                {"body", body}};
    }
};

}  // namespace

json span_to_json(const Span& span) {
    return {{"line", span.line}, {"column", span.column}, {"begin", span.begin}, {"end", span.end}};
}

json token_to_json(const Token& token) {
    return {{"kind", token_kind_name(token.kind)},
            {"lexeme", token.lexeme},
            {"span", span_to_json(token.span)}};
}

json program_to_json(const Program& program, bool with_spans) {
    AstWriter writer{with_spans};
    json statements = json::array();
    for (const auto& s : program.statements) {
        json item = std::visit(writer, s.node);
        if (with_spans) item["span"] = span_to_json(s.span);
        statements.push_back(item);
    }
    json comments = json::array();
    for (const auto& c : program.comments) {
        json item = {{"text", c.text}, {"next_statement", c.next_statement}};
        if (with_spans) item["span"] = span_to_json(c.span);
        comments.push_back(item);
    }
    json j = {{"version", {{"major", program.major}, {"minor", program.minor}}},
              {"includes", program.includes()},
              {"statements", statements},
              {"comments", comments}};
    if (with_spans) j["file"] = program.file;
    return j;
}

json directive_to_json(const Directive& d) {
    json j = {{"kind", directive_kind_name(d.kind)},
              {"anchor", d.anchor},
              {"target", d.target},
              {"qubits", d.qubits},
              {"span", span_to_json(d.span)}};
    if (d.kind == DirectiveKind::AssertClassical) j["expected"] = d.expected_bits;
    if (d.kind == DirectiveKind::AssertDistribution) {
        j["clbits"] = d.clbits;
        j["classical_target"] = d.classical_target;
        j["expected"] = d.expected_distribution;
        j["tolerance"] = d.tolerance;
    }
    return j;
}

json instruction_to_json(const Instruction& ins) {
    json j = {{"kind", op_kind_name(ins.kind)}, {"qubits", ins.qubits}};
    if (ins.kind == OpKind::U) j["params"] = ins.params;
    if (ins.kind == OpKind::Measure) j["clbit"] = ins.clbit;
    j["label"] = ins.label;
    j["op_id"] = ins.op_id;
    j["statement"] = ins.statement;
    j["span"] = span_to_json(ins.span);
    if (ins.condition) {
        // Conditionals wrap the guarded primitive.
        json inner = j;
        inner.erase("span");
        return {{"kind", "conditional"},
                {"creg", ins.condition->creg},
                {"value", ins.condition->value},
                {"inner", inner},
                {"span", j["span"]}};
    }
    return j;
}

json circuit_to_json(const CircuitIR& ir) {
    auto regs = [](const std::vector<Register>& list) {
        json out = json::array();
        for (const auto& r : list) out.push_back({{"name", r.name}, {"offset", r.offset}, {"size", r.size}});
        return out;
    };
    json instructions = json::array();
    for (const auto& ins : ir.instructions) instructions.push_back(instruction_to_json(ins));
    json directives = json::array();
    for (const auto& d : ir.directives) directives.push_back(directive_to_json(d));
    return {{"file", ir.file},
            {"n_qubits", ir.n_qubits},
            {"n_clbits", ir.n_clbits},
            {"qregs", regs(ir.qregs)},
            {"cregs", regs(ir.cregs)},
            {"instructions", instructions},
            {"directives", directives}};
}

}  // namespace qdb::qasm
