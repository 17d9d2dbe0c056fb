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

#include "apkscreen/part.hpp"

#include "apkscreen/errors.hpp"

namespace apkscreen {

bool Rule::matches(const FeatureVector& v) const {
    for (const RuleLiteral& lit : literals) {
        if (static_cast<std::size_t>(lit.feature) >= v.bits.size()) {
            throw Error(ErrorCode::dimension_mismatch,
                        "vector has " + std::to_string(v.bits.size()) + " bits, rule tests feature " +
                            std::to_string(lit.feature));
        }
        if (v.bits[static_cast<std::size_t>(lit.feature)] != lit.bit) return false;
    }
    return true;
}

namespace {

// Leaf with the largest instance count, preferring the zero branch and the
// first maximum encountered; returns the root-to-leaf literal path.
void best_leaf(const DecisionTreeModel& tree, std::int32_t at, std::vector<RuleLiteral>& path,
               std::uint32_t& best_total, Rule& best) {
    const TreeNode& nd = tree.nodes[static_cast<std::size_t>(at)];
    if (nd.is_leaf()) {
        const std::uint32_t total = nd.n_sus + nd.n_ben;
        if (total > best_total) {
            best_total = total;
            best.literals = path;
            best.n_sus = nd.n_sus;
            best.n_ben = nd.n_ben;
        }
        return;
    }
    path.push_back({nd.feature, 0});
    best_leaf(tree, nd.zero, path, best_total, best);
    path.back().bit = 1;
    best_leaf(tree, nd.one, path, best_total, best);
    path.pop_back();
}

}  // namespace

RuleListModel train_part(const SampleMatrix& m, const DecisionTreeOptions& opts) {
    const std::size_t total_sus = m.count(Label::suspicious);
    if (total_sus == 0 || total_sus == m.samples.size()) {
        throw Error(ErrorCode::single_class_data, "rule induction needs both classes");
    }

    RuleListModel model;
    SampleMatrix remaining;
    remaining.catalog = m.catalog;
    remaining.samples = m.samples;

    while (!remaining.samples.empty()) {
        const std::size_t rem_sus = remaining.count(Label::suspicious);
        DecisionTreeModel tree;
        if (rem_sus == 0 || rem_sus == remaining.samples.size()) {
            // Single-class remainder: the tree is a bare leaf by construction.
            tree.nodes.push_back(
                {-1, -1, -1, static_cast<std::uint32_t>(rem_sus),
                 static_cast<std::uint32_t>(remaining.samples.size() - rem_sus)});
        } else {
            tree = train_decision_tree(remaining, opts);
        }

        if (tree.nodes[0].is_leaf()) {
            model.default_sus = tree.nodes[0].n_sus;
            model.default_ben = tree.nodes[0].n_ben;
            return model;
        }

        Rule rule;
        std::uint32_t best_total = 0;
        std::vector<RuleLiteral> path;
        best_leaf(tree, 0, path, best_total, rule);
        model.rules.push_back(rule);

        std::vector<LabelledSample> kept;
        kept.reserve(remaining.samples.size() - best_total);
        for (LabelledSample& s : remaining.samples) {
            if (!rule.matches(s.vector)) kept.push_back(std::move(s));
        }
        remaining.samples = std::move(kept);
    }

    // Every instance was claimed by a rule; fall back to global counts so the
    // default still carries a usable class distribution.
    model.default_sus = static_cast<std::uint32_t>(total_sus);
    model.default_ben = static_cast<std::uint32_t>(m.samples.size() - total_sus);
    return model;
}

Posterior predict(const RuleListModel& model, const FeatureVector& v) {
    for (const Rule& rule : model.rules) {
        if (rule.matches(v)) return laplace_posterior(rule.n_sus, rule.n_ben);
    }
    return laplace_posterior(model.default_sus, model.default_ben);
}

}  // namespace apkscreen
