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
#include <fstream>
#include <sstream>

#include "qdb/qasm/parser.hpp"

namespace qdb::qasm {

namespace {

constexpr std::string_view kStandardHeader = "qelib1.inc";

struct Resolver {
    const IncludeOptions& options;
    std::vector<std::string> stack;
    std::vector<std::string> seen;

    std::vector<Statement> splice(const Program& program, std::vector<std::size_t>* old_to_new) {
        std::vector<Statement> out;
        if (old_to_new) old_to_new->assign(program.statements.size() + 1, 0);
        for (std::size_t i = 0; i < program.statements.size(); ++i) {
            if (old_to_new) (*old_to_new)[i] = out.size();
            const Statement& stmt = program.statements[i];
            const auto* inc = std::get_if<Include>(&stmt.node);
            if (!inc) {
                out.push_back(stmt);
                continue;
            }
            auto [key, text] = load(*inc, program.file, stmt.span);
            if (std::find(stack.begin(), stack.end(), key) != stack.end()) {
                throw SourceError(ErrorCode::CyclicInclude, "cyclic include of \"" + inc->file + "\"",
                                  program.file, stmt.span);
            }
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
            seen.push_back(key);

            Program child = parse_fragment(text, key);
            stack.push_back(key);
            std::vector<Statement> nested = splice(child, nullptr);
            stack.pop_back();
            for (Statement& s : nested) {
                // Keep the source map pointing into the including file.
                if (s.origin.empty()) s.origin = key;
                s.span = stmt.span;
                out.push_back(std::move(s));
            }
        }
        if (old_to_new) old_to_new->back() = out.size();
        return out;
    }

    std::pair<std::string, std::string> load(const Include& inc, const std::string& from,
                                             const Span& span) {
        if (inc.file == kStandardHeader) {
            return {std::string(kStandardHeader), std::string(qelib1_source())};
        }
        for (const auto& dir : options.search_path) {
            std::filesystem::path candidate = dir / inc.file;
            std::error_code ec;
            if (!std::filesystem::is_regular_file(candidate, ec)) continue;
            std::ifstream in(candidate, std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            return {std::filesystem::weakly_canonical(candidate, ec).string(), buf.str()};
        }
        throw SourceError(ErrorCode::IncludeNotFound, "include file \"" + inc.file + "\" not found",
                          from, span);
    }
};

}  // namespace

Program resolve_includes(Program program, const IncludeOptions& options) {
    Resolver resolver{options, {}, {}};
    resolver.stack.push_back(program.file.empty() ? "<main>" : program.file);
    std::error_code ec;
    if (!program.file.empty()) {
        resolver.stack.back() = std::filesystem::weakly_canonical(program.file, ec).string();
        if (ec) resolver.stack.back() = program.file;
    }

    std::vector<std::size_t> old_to_new;
    std::vector<Statement> statements = resolver.splice(program, &old_to_new);
    for (Comment& c : program.comments) c.next_statement = old_to_new[c.next_statement];
    program.statements = std::move(statements);
    program.resolved_includes = resolver.seen;
    return program;
}

}  // namespace qdb::qasm
