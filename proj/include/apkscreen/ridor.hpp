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
#include "apkscreen/part.hpp"
#include "apkscreen/posterior.hpp"

namespace apkscreen {

/// One node of a ripple-down rule tree, stored flat. The root is the default
/// rule (empty conjunction); every other node is an exception to its parent,
/// predicting the opposite class. Counts are the training instances that
/// terminate at the node (covered by it, claimed by none of its children).
struct RidorNode {
    Label cls = Label::benign;
    std::vector<RuleLiteral> literals;   // empty at the root
    std::uint32_t n_sus = 0;
    std::uint32_t n_ben = 0;
    std::vector<std::int32_t> children;  // exception nodes, first match wins

    bool operator==(const RidorNode&) const = default;
};

struct RippleDownModel {
    std::vector<RidorNode> nodes;  // nodes[0] is the default rule

    std::size_t exception_count() const { return nodes.size() - 1; }
    bool operator==(const RippleDownModel&) const = default;
};

struct RidorOptions {
    std::uint32_t max_depth = 10;  // exception nesting bound
};

/// Default rule = majority class (tie -> benign); exceptions grown greedily
/// to minimize weighted error on the instances a node still gets wrong.
/// Throws SingleClassData.
RippleDownModel train_ridor(const SampleMatrix& m, const RidorOptions& opts = {});

/// Routes the vector down the exception tree (first matching child, deepest
/// match decides) and returns the Laplace posterior of the final node.
/// Throws DimensionMismatch.
Posterior predict(const RippleDownModel& model, const FeatureVector& v);

}  // namespace apkscreen
