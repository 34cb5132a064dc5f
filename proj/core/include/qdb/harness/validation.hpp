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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdb/errors.hpp"

namespace qdb::harness {

struct ValidationOutcome {
    bool valid = false;
    /// Why the answer was rejected; empty when valid.
    std::string witness;
};

nlohmann::json to_json(const ValidationOutcome& v);

/// Checks a claimed factorization: every factor strictly between 1 and N and
/// their product equal to N. Integers are decimal strings of any length.
/// Never throws on bad input; malformed numbers yield valid = false.
ValidationOutcome validate_shor_factors(const std::string& n, const std::vector<std::string>& factors);
ValidationOutcome validate_shor_factors(std::uint64_t n, const std::vector<std::uint64_t>& factors);

/// Accepts index i iff predicate(items[i]); the predicate runs exactly once.
/// Throws IndexOutOfRange.
template <typename Item, typename Predicate>
ValidationOutcome validate_grover(std::span<const Item> items, std::size_t i, Predicate&& predicate) {
    if (i >= items.size()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "index " + std::to_string(i) + " outside " + std::to_string(items.size()) + " items");
    }
    if (predicate(items[i])) return {true, {}};
    return {false, "item " + std::to_string(i) + " does not satisfy the predicate"};
}

template <typename Item, typename Predicate>
ValidationOutcome validate_grover(const std::vector<Item>& items, std::size_t i, Predicate&& predicate) {
    return validate_grover(std::span<const Item>(items), i, std::forward<Predicate>(predicate));
}

}  // namespace qdb::harness
