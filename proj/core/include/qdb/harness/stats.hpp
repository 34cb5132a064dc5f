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
#include <map>
#include <string>

#include <nlohmann/json.hpp>

namespace qdb::harness {

/// Shot count that bounds the error on any single outcome probability.
struct RepetitionPlan {
    double epsilon = 0.0;
    double delta = 0.0;
    std::uint64_t shots = 0;
};

/// shots = ceil(ln(2/delta) / (2 epsilon^2)), the two-sided Hoeffding form.
/// Throws OutOfRange unless both arguments lie in (0, 1).
RepetitionPlan chernoff_shots(double epsilon, double delta);

inline constexpr double kDefaultAlpha = 0.01;
/// Bins expected to hold fewer counts than this are pooled.
inline constexpr double kMinExpectedCount = 5.0;

struct DistributionVerdict {
    double tvd = 0.0;
    double chi_square = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
    double alpha = kDefaultAlpha;
    bool pass = true;
    std::uint64_t shots = 0;
};

nlohmann::json to_json(const DistributionVerdict& v);

using Counts = std::map<std::string, std::uint64_t>;
using Distribution = std::map<std::string, double>;

/// Goodness of fit of observed counts against an expected distribution.
/// Passes iff p_value >= alpha. Throws EmptyObservation when counts sum to 0
/// and OutOfRange when the expected probabilities do not sum to 1 (1e-9).
DistributionVerdict compare_distributions(const Counts& observed, const Distribution& expected,
                                          double alpha = kDefaultAlpha);

/// Two-sample chi-square homogeneity test; tvd compares the two empirical
/// distributions.
DistributionVerdict compare_samples(const Counts& a, const Counts& b, double alpha = kDefaultAlpha);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, std::size_t dof);

double total_variation(const Distribution& p, const Distribution& q);
Distribution normalize_counts(const Counts& counts);

}  // namespace qdb::harness
