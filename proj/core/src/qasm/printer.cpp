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

#include <sstream>

#include "qdb/qasm/parser.hpp"

namespace qdb::qasm {

namespace {

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

std::string wrap(const Expr& e, bool parens) {
    return parens ? "(" + to_string(e) + ")" : to_string(e);
}

std::string argument(const Argument& a) {
    return a.index ? a.reg + "[" + std::to_string(*a.index) + "]" : a.reg;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += items[i];
    }
    return out;
}

std::string gate_call(const GateCall& call) {
    std::string out = call.name;
    if (!call.params.empty()) {
        out += "(";
        for (std::size_t i = 0; i < call.params.size(); ++i) {
            if (i) out += ",";
            out += to_string(call.params[i]);
        }
        out += ")";
    }
    out += " ";
    for (std::size_t i = 0; i < call.args.size(); ++i) {
        if (i) out += ",";
        out += argument(call.args[i]);
    }
    return out + ";";
}

std::string barrier(const Barrier& b) {
    std::string out = "barrier ";
    for (std::size_t i = 0; i < b.args.size(); ++i) {
        if (i) out += ",";
        out += argument(b.args[i]);
    }
    return out + ";";
}

std::string measure(const Measure& m) {
    return "measure " + argument(m.qubit) + " -> " + argument(m.clbit) + ";";
}

struct StatementPrinter {
    std::ostringstream& out;

    void operator()(const Include& s) { out << "include \"" << s.file << "\";\n"; }
    void operator()(const QregDecl& s) { out << "qreg " << s.name << "[" << s.size << "];\n"; }
    void operator()(const CregDecl& s) { out << "creg " << s.name << "[" << s.size << "];\n"; }
    void operator()(const GateCall& s) { out << gate_call(s) << "\n"; }
    void operator()(const Measure& s) { out << measure(s) << "\n"; }
    void operator()(const Reset& s) { out << "reset " << argument(s.qubit) << ";\n"; }
    void operator()(const Barrier& s) { out << barrier(s) << "\n"; }
    void operator()(const Conditional& s) {
        out << "if(" << s.creg << "==" << s.value << ") ";
        std::visit(
            [this](const auto& op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, GateCall>) {
                    out << gate_call(op);
                } else if constexpr (std::is_same_v<T, Measure>) {
                    out << measure(op);
                } else {
                    out << "reset " << argument(op.qubit) << ";";
                }
            },
            s.op);
        out << "\n";
    }
    void operator()(const GateDecl& s) {
        out << (s.opaque ? "opaque " : "gate ") << s.name;
        if (!s.params.empty()) out << "(" << join(s.params) << ")";
        out << " " << join(s.qargs);
        if (s.opaque) {
            out << ";\n";
            return;
        }
        out << " {\n";
        for (const auto& b : s.body) {
            out << "  ";
            if (auto* call = std::get_if<GateCall>(&b.node)) {
                out << gate_call(*call);
            } else {
                out << barrier(std::get<Barrier>(b.node));
            }
            out << "\n";
        }
        out << "}\n";
    }
};

}  // namespace

std::string to_string(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number: return e.text;
        case Expr::Kind::Pi: return "pi";
        case Expr::Kind::Param: return e.text;
        case Expr::Kind::Call: return e.text + "(" + to_string(e.operands[0]) + ")";
        case Expr::Kind::Neg: return "-" + wrap(e.operands[0], precedence(e.operands[0]) < 3);
        case Expr::Kind::Pow:
            return wrap(e.operands[0], precedence(e.operands[0]) <= 4) + "^" +
                   wrap(e.operands[1], precedence(e.operands[1]) < 3);
        default: break;
    }
    const char* op = e.kind == Expr::Kind::Add   ? "+"
                     : e.kind == Expr::Kind::Sub ? "-"
                     : e.kind == Expr::Kind::Mul ? "*"
                                                 : "/";
    int p = precedence(e);
    return wrap(e.operands[0], precedence(e.operands[0]) < p) + op +
           wrap(e.operands[1], precedence(e.operands[1]) <= p);
}

std::string to_qasm(const Program& program) {
    std::ostringstream out;
    out << "OPENQASM " << program.major << "." << program.minor << ";\n";
    StatementPrinter printer{out};
    std::size_t c = 0;
    for (std::size_t i = 0; i <= program.statements.size(); ++i) {
        while (c < program.comments.size() && program.comments[c].next_statement <= i) {
            out << program.comments[c].text << "\n";
            ++c;
        }
        if (i < program.statements.size()) std::visit(printer, program.statements[i].node);
    }
    return out.str();
}

}  // namespace qdb::qasm
