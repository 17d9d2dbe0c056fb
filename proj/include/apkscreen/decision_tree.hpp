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

#include "apkscreen/matrix.hpp"
#include "apkscreen/posterior.hpp"

namespace apkscreen {

/// One node of a binary-feature decision tree, stored flat. feature == -1
/// marks a leaf; otherwise zero/one index the children for that bit value.
/// Counts are the training instances that reached the node.
struct TreeNode {
    std::int32_t feature = -1;
    std::int32_t zero = -1;
    std::int32_t one = -1;
    std::uint32_t n_sus = 0;
    std::uint32_t n_ben = 0;

    bool is_leaf() const { return feature < 0; }
    bool operator==(const TreeNode&) const = default;
};

struct DecisionTreeModel {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    std::size_t leaf_count() const;
    bool operator==(const DecisionTreeModel&) const = default;
};

struct DecisionTreeOptions {
    double confidence = 0.25;    // pessimistic-error confidence factor
    std::uint32_t min_leaf = 2;  // nodes smaller than this are not split
};

/// Top-down induction on gain ratio with pessimistic-error subtree collapse.
/// Throws SingleClassData.
DecisionTreeModel train_decision_tree(const SampleMatrix& m, const DecisionTreeOptions& opts = {});

/// Laplace posterior of the leaf the vector routes to. Throws DimensionMismatch
/// when a tested feature index is out of range.
Posterior predict(const DecisionTreeModel& model, const FeatureVector& v);

/// Upper confidence bound on additional errors for a node with n instances
/// and e observed errors (normal approximation; exact binomial at e == 0,
/// linearly interpolated below one error).
double pessimistic_extra_errors(double n, double e, double confidence);

/// Inverse standard-normal CDF (Acklam's rational approximation, |err| < 1.2e-9).
double inverse_normal_cdf(double p);

}  // namespace apkscreen
