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

#include "qdb/harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "qdb/errors.hpp"

namespace qdb::harness {

namespace {

struct Bin {
    double observed = 0.0;
    double expected = 0.0;
};

// Merges every bin below the threshold into one; if that pooled bin is still
// too small it is folded into the smallest remaining bin.
std::vector<Bin> pool(std::vector<Bin> bins) {
    std::vector<Bin> big;
    Bin small;
    bool have_small = false;
    for (const Bin& b : bins) {
        if (b.expected >= kMinExpectedCount) {
            big.push_back(b);
        } else {
            small.observed += b.observed;
            small.expected += b.expected;
            have_small = true;
        }
    }
    if (!have_small) return big;
    if (small.expected >= kMinExpectedCount || big.empty()) {
        big.push_back(small);
        return big;
    }
    auto smallest = std::min_element(big.begin(), big.end(),
                                     [](const Bin& x, const Bin& y) { return x.expected < y.expected; });
    smallest->observed += small.observed;
    smallest->expected += small.expected;
    return big;
}

std::uint64_t total(const Counts& c) {
    std::uint64_t n = 0;
    for (const auto& [k, v] : c) n += v;
    return n;
}

}  // namespace

RepetitionPlan chernoff_shots(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw Error(ErrorCode::OutOfRange, "epsilon and delta must lie in (0, 1)");
    }
    const double raw = std::log(2.0 / delta) / (2.0 * epsilon * epsilon);
    // snap results within rounding noise of an integer
    const double rounded = std::round(raw);
    const double shots = std::abs(raw - rounded) < 1e-9 * std::max(1.0, raw) ? rounded : std::ceil(raw);
    return {epsilon, delta, static_cast<std::uint64_t>(shots)};
}

double chi_square_sf(double statistic, std::size_t dof) {
    if (dof == 0) return statistic > 0.0 ? 0.0 : 1.0;
    if (!std::isfinite(statistic)) return 0.0;
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

Distribution normalize_counts(const Counts& counts) {
    Distribution d;
    const double n = static_cast<double>(total(counts));
    if (n == 0.0) return d;
    for (const auto& [k, v] : counts) d[k] = static_cast<double>(v) / n;
    return d;
}

double total_variation(const Distribution& p, const Distribution& q) {
    std::set<std::string> keys;
    for (const auto& [k, v] : p) keys.insert(k);
    for (const auto& [k, v] : q) keys.insert(k);
    double sum = 0.0;
    for (const auto& k : keys) {
        const auto a = p.find(k);
        const auto b = q.find(k);
        sum += std::abs((a == p.end() ? 0.0 : a->second) - (b == q.end() ? 0.0 : b->second));
    }
    return std::clamp(sum / 2.0, 0.0, 1.0);
}

DistributionVerdict compare_distributions(const Counts& observed, const Distribution& expected, double alpha) {
    const std::uint64_t n = total(observed);
    if (n == 0) throw Error(ErrorCode::EmptyObservation, "no observations");
    double mass = 0.0;
    for (const auto& [k, p] : expected) {
        if (p < 0.0) throw Error(ErrorCode::OutOfRange, "negative probability for " + k);
        mass += p;
    }
    if (std::abs(mass - 1.0) > 1e-9) throw Error(ErrorCode::OutOfRange, "expected probabilities do not sum to 1");

    DistributionVerdict v;
    v.shots = n;
    v.alpha = alpha;
    v.tvd = total_variation(normalize_counts(observed), expected);

    std::vector<Bin> bins;
    for (const auto& [k, p] : expected) {
        const auto it = observed.find(k);
        bins.push_back({it == observed.end() ? 0.0 : static_cast<double>(it->second), p * static_cast<double>(n)});
    }
    bool impossible = false;
    for (const auto& [k, c] : observed) {
        if (!expected.count(k) && c > 0) impossible = true;
    }
    for (const Bin& b : bins) impossible = impossible || (b.expected == 0.0 && b.observed > 0.0);
    std::erase_if(bins, [](const Bin& b) { return b.expected == 0.0; });
    bins = pool(std::move(bins));

    double stat = 0.0;
    for (const Bin& b : bins) {
        const double d = b.observed - b.expected;
        stat += d * d / b.expected;
    }
    if (impossible) stat = std::numeric_limits<double>::infinity();
    v.chi_square = stat;
    v.dof = bins.empty() ? 0 : bins.size() - 1;
    v.p_value = chi_square_sf(stat, v.dof);
    v.pass = v.p_value >= alpha;
    return v;
}

DistributionVerdict compare_samples(const Counts& a, const Counts& b, double alpha) {
    const double na = static_cast<double>(total(a));
    const double nb = static_cast<double>(total(b));
    if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::EmptyObservation, "no observations");

    DistributionVerdict v;
    v.shots = static_cast<std::uint64_t>(na + nb);
    v.alpha = alpha;
    v.tvd = total_variation(normalize_counts(a), normalize_counts(b));

    std::set<std::string> keys;
    for (const auto& [k, c] : a) keys.insert(k);
    for (const auto& [k, c] : b) keys.insert(k);
    // Bin "observed" holds the count from a, "expected" the pooled total.
    std::vector<Bin> bins;
    for (const auto& k : keys) {
        const auto x = a.find(k);
        const auto y = b.find(k);
        const double ca = x == a.end() ? 0.0 : static_cast<double>(x->second);
        const double cb = y == b.end() ? 0.0 : static_cast<double>(y->second);
        if (ca + cb > 0.0) bins.push_back({ca, ca + cb});
    }
    bins = pool(std::move(bins));

    double stat = 0.0;
    for (const Bin& bin : bins) {
        const double ca = bin.observed;
        const double cb = bin.expected - ca;
        const double d = std::sqrt(nb / na) * ca - std::sqrt(na / nb) * cb;
        stat += d * d / bin.expected;
    }
    v.chi_square = stat;
    v.dof = bins.empty() ? 0 : bins.size() - 1;
    v.p_value = chi_square_sf(stat, v.dof);
    v.pass = v.p_value >= alpha;
    return v;
}

nlohmann::json to_json(const DistributionVerdict& v) {
    return {{"tvd", v.tvd},
            {"chi_square", std::isfinite(v.chi_square) ? nlohmann::json(v.chi_square) : nlohmann::json("inf")},
            {"dof", v.dof},
            {"p_value", v.p_value},
            {"alpha", v.alpha},
            {"verdict", v.pass ? "pass" : "fail"},
            {"shots", v.shots}};
}

}  // namespace qdb::harness
