/*
 * Copyright (C) 2026 The apkscreen Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "apkscreen/decision_tree.hpp"
#include "apkscreen/matrix.hpp"
#include "apkscreen/posterior.hpp"

namespace apkscreen {

/// One conjunct of a rule: the vector must have `bit` at `feature`.
struct RuleLiteral {
    std::int32_t feature = 0;
    std::uint8_t bit = 0;

    bool operator==(const RuleLiteral&) const = default;
};

/// Conjunction rule with the class counts it covered when emitted.
struct Rule {
    std::vector<RuleLiteral> literals;
    std::uint32_t n_sus = 0;
    std::uint32_t n_ben = 0;

    bool matches(const FeatureVector& v) const;
    bool operator==(const Rule&) const = default;
};

/// Ordered decision list with first-match semantics; the default rule
/// (always-true) carries its own counts.
struct RuleListModel {
    std::vector<Rule> rules;
    std::uint32_t default_sus = 0;
    std::uint32_t default_ben = 0;

    bool operator==(const RuleListModel&) const = default;
};

/// Separate-and-conquer: repeatedly build a pruned tree on the instances not
/// yet covered, turn the leaf covering the most of them into a rule, remove
/// what it covers. Throws SingleClassData.
RuleListModel train_part(const SampleMatrix& m, const DecisionTreeOptions& opts = {});

/// Laplace posterior of the first matching rule (or the default).
/// Throws DimensionMismatch.
Posterior predict(const RuleListModel& model, const FeatureVector& v);

}  // namespace apkscreen
