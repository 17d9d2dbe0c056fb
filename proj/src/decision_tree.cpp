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

#include "apkscreen/decision_tree.hpp"

#include <algorithm>
#include <cmath>

#include "apkscreen/errors.hpp"

namespace apkscreen {

double inverse_normal_cdf(double p) {
    // Acklam's piecewise rational approximation.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p <= 0.0 || p >= 1.0) {
        throw Error(ErrorCode::bad_value, "inverse_normal_cdf requires p in (0,1)");
    }
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

double pessimistic_extra_errors(double n, double e, double confidence) {
    if (n <= 0.0) return 0.0;
    if (e < 1.0) {
        // Exact upper bound of a zero-error binomial, interpolated up to e = 1.
        const double base = n * (1.0 - std::pow(confidence, 1.0 / n));
        if (e <= 0.0) return base;
        return base + e * (pessimistic_extra_errors(n, 1.0, confidence) - base);
    }
    if (e + 0.5 >= n) return std::max(n - e, 0.0);
    const double z = inverse_normal_cdf(1.0 - confidence);
    const double f = (e + 0.5) / n;
    const double r =
        (f + (z * z) / (2.0 * n) + z * std::sqrt(f / n - f * f / n + (z * z) / (4.0 * n * n))) /
        (1.0 + (z * z) / n);
    return r * n - e;
}

std::size_t DecisionTreeModel::leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

namespace {

double entropy2(double n_sus, double n_ben) {
    const double n = n_sus + n_ben;
    if (n <= 0.0) return 0.0;
    double h = 0.0;
    for (double k : {n_sus, n_ben}) {
        if (k > 0.0) {
            const double p = k / n;
            h -= p * std::log2(p);
        }
    }
    return h;
}

struct Builder {
    const SampleMatrix& m;
    const DecisionTreeOptions& opts;
    std::vector<TreeNode> nodes;

    std::uint32_t count_label(const std::vector<std::uint32_t>& idx, Label l) const {
        std::uint32_t c = 0;
        for (std::uint32_t i : idx) c += (m.samples[i].label == l) ? 1u : 0u;
        return c;
    }

    // Builds the subtree for the given instance set; returns its node index.
    std::int32_t build(const std::vector<std::uint32_t>& idx) {
        const std::int32_t self = static_cast<std::int32_t>(nodes.size());
        nodes.emplace_back();
        nodes[self].n_sus = count_label(idx, Label::suspicious);
        nodes[self].n_ben = static_cast<std::uint32_t>(idx.size()) - nodes[self].n_sus;

        if (nodes[self].n_sus == 0 || nodes[self].n_ben == 0 || idx.size() < opts.min_leaf) {
            return self;  // pure or too small
        }

        const double h_node = entropy2(nodes[self].n_sus, nodes[self].n_ben);
        const double n = static_cast<double>(idx.size());
        std::int32_t best_feature = -1;
        double best_ratio = 0.0;
        for (std::size_t f = 0; f < m.feature_count(); ++f) {
            double sus1 = 0.0, ben1 = 0.0;
            for (std::uint32_t i : idx) {
                if (m.samples[i].vector.bits[f]) {
                    (m.samples[i].label == Label::suspicious ? sus1 : ben1) += 1.0;
                }
            }
            const double n1 = sus1 + ben1;
            const double n0 = n - n1;
            if (n1 == 0.0 || n0 == 0.0) continue;  // uninformative split
            const double sus0 = static_cast<double>(nodes[self].n_sus) - sus1;
            const double ben0 = static_cast<double>(nodes[self].n_ben) - ben1;
            const double gain = h_node - (n0 / n) * entropy2(sus0, ben0) - (n1 / n) * entropy2(sus1, ben1);
            if (gain <= 1e-12) continue;
            const double split_info = entropy2(n0, n1);
            const double ratio = gain / split_info;
            if (ratio > best_ratio + 1e-12) {
                best_ratio = ratio;
                best_feature = static_cast<std::int32_t>(f);
            }
        }
        if (best_feature < 0) return self;  // no informative split

        std::vector<std::uint32_t> zero_idx, one_idx;
        for (std::uint32_t i : idx) {
            (m.samples[i].vector.bits[static_cast<std::size_t>(best_feature)] ? one_idx : zero_idx)
                .push_back(i);
        }
        nodes[self].feature = best_feature;
        nodes[self].zero = build(zero_idx);
        nodes[self].one = build(one_idx);
        return self;
    }

    std::uint32_t node_errors(const TreeNode& nd) const {
        return std::min(nd.n_sus, nd.n_ben);  // majority vote at the node
    }

    // Pessimistic subtree error estimate; prunes (collapses to a leaf) when
    // the leaf estimate is no worse than the subtree estimate plus slack.
    double prune(std::int32_t at) {
        TreeNode& nd = nodes[at];
        const double n = static_cast<double>(nd.n_sus) + static_cast<double>(nd.n_ben);
        const double e_leaf = static_cast<double>(node_errors(nd));
        const double leaf_est = e_leaf + pessimistic_extra_errors(n, e_leaf, opts.confidence);
        if (nd.is_leaf()) return leaf_est;

        const double subtree_est = prune(nd.zero) + prune(nd.one);
        if (leaf_est <= subtree_est + 0.1) {  // slack favors the simpler model on near-ties
            nd.feature = -1;
            nd.zero = -1;
            nd.one = -1;
            return leaf_est;
        }
        return subtree_est;
    }

    // Drops nodes orphaned by pruning and remaps child indices.
    DecisionTreeModel compact() const {
        DecisionTreeModel model;
        std::vector<std::int32_t> map(nodes.size(), -1);
        std::vector<std::int32_t> stack = {0};
        // Preorder renumber: deterministic layout independent of pruning order.
        std::vector<std::int32_t> order;
        while (!stack.empty()) {
            const std::int32_t at = stack.back();
            stack.pop_back();
            map[at] = static_cast<std::int32_t>(order.size());
            order.push_back(at);
            if (!nodes[at].is_leaf()) {
                stack.push_back(nodes[at].one);   // zero child popped first
                stack.push_back(nodes[at].zero);
            }
        }
        model.nodes.reserve(order.size());
        for (std::int32_t at : order) {
            TreeNode nd = nodes[at];
            if (!nd.is_leaf()) {
                nd.zero = map[nd.zero];
                nd.one = map[nd.one];
            }
            model.nodes.push_back(nd);
        }
        return model;
    }
};

}  // namespace

DecisionTreeModel train_decision_tree(const SampleMatrix& m, const DecisionTreeOptions& opts) {
    std::vector<std::uint32_t> all(m.samples.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;

    Builder builder{m, opts, {}};
    const std::uint32_t n_sus = builder.count_label(all, Label::suspicious);
    if (n_sus == 0 || n_sus == m.samples.size()) {
        throw Error(ErrorCode::single_class_data, "decision tree needs both classes");
    }
    builder.build(all);
    builder.prune(0);
    return builder.compact();
}

Posterior predict(const DecisionTreeModel& model, const FeatureVector& v) {
    std::int32_t at = 0;
    while (!model.nodes[static_cast<std::size_t>(at)].is_leaf()) {
        const TreeNode& nd = model.nodes[static_cast<std::size_t>(at)];
        if (static_cast<std::size_t>(nd.feature) >= v.bits.size()) {
            throw Error(ErrorCode::dimension_mismatch,
                        "vector has " + std::to_string(v.bits.size()) + " bits, tree tests feature " +
                            std::to_string(nd.feature));
        }
        at = v.bits[static_cast<std::size_t>(nd.feature)] ? nd.one : nd.zero;
    }
    const TreeNode& leaf = model.nodes[static_cast<std::size_t>(at)];
    return laplace_posterior(leaf.n_sus, leaf.n_ben);
}

}  // namespace apkscreen
