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

#include "qdb/harness/validation.hpp"

#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

namespace qdb::harness {

namespace {

using BigInt = boost::multiprecision::cpp_int;

std::optional<BigInt> parse_int(const std::string& text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    if (i == text.size()) return std::nullopt;
    for (std::size_t j = i; j < text.size(); ++j) {
        if (text[j] < '0' || text[j] > '9') return std::nullopt;
    }
    return BigInt(text);
}

}  // namespace

nlohmann::json to_json(const ValidationOutcome& v) {
    nlohmann::json j = {{"valid", v.valid}};
    if (!v.valid) j["witness"] = v.witness;
    return j;
}

ValidationOutcome validate_shor_factors(const std::string& n_text, const std::vector<std::string>& factors) {
    const auto n = parse_int(n_text);
    if (!n) return {false, "N is not an integer: " + n_text};
    if (*n < 2) return {false, "N must be at least 2"};
    if (factors.empty()) return {false, "empty factor list"};

    BigInt product = 1;
    for (const auto& text : factors) {
        const auto l = parse_int(text);
        if (!l) return {false, "factor is not an integer: " + text};
        if (*l <= 1 || *l >= *n) return {false, "factor " + l->str() + " not strictly between 1 and N"};
        product *= *l;
    }
    if (product != *n) return {false, "product " + product.str() + " ≠ " + n->str()};
    return {true, {}};
}

ValidationOutcome validate_shor_factors(std::uint64_t n, const std::vector<std::uint64_t>& factors) {
    std::vector<std::string> text;
    text.reserve(factors.size());
    for (auto f : factors) text.push_back(std::to_string(f));
    return validate_shor_factors(std::to_string(n), text);
}

}  // namespace qdb::harness
