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

#include "apkscreen/ridor.hpp"

#include <algorithm>
#include <limits>

#include "apkscreen/errors.hpp"

namespace apkscreen {
namespace {

Label flip(Label l) { return l == Label::suspicious ? Label::benign : Label::suspicious; }

bool matches_literals(const std::vector<RuleLiteral>& literals, const FeatureVector& v) {
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

struct Candidate {
    std::vector<RuleLiteral> literals;
    double error = std::numeric_limits<double>::infinity();
    std::uint32_t corrected = 0;   // covered instances the exception fixes
    std::uint32_t introduced = 0;  // covered instances it newly gets wrong
};

struct Builder {
    const SampleMatrix& m;
    const RidorOptions& opts;
    std::vector<RidorNode> nodes;

    // Greedy conjunction growth for an exception predicting `target` on the
    // node's instances. The objective per candidate is
    //   (errors introduced + errors left uncorrected) / instances covered;
    // a literal is appended only on strict improvement (ties keep the rule
    // shorter; among literals, lower feature index then bit 0 wins).
    Candidate grow_rule(const std::vector<std::uint32_t>& idx, Label target,
                        std::uint32_t total_wrong) const {
        Candidate best;
        std::vector<std::uint32_t> current = idx;  // instances matching best.literals
        std::vector<std::uint8_t> feature_used(m.feature_count(), 0);

        while (best.literals.size() < m.feature_count()) {
            double round_error = best.error;
            std::int32_t pick_feature = -1;
            std::uint8_t pick_bit = 0;
            std::uint32_t pick_corrected = 0, pick_introduced = 0;

            for (std::size_t f = 0; f < m.feature_count(); ++f) {
                if (feature_used[f]) continue;
                for (int b = 0; b < 2; ++b) {
                    const std::uint8_t bit = static_cast<std::uint8_t>(b);
                    std::uint32_t corrected = 0, introduced = 0, covered = 0;
                    for (std::uint32_t i : current) {
                        const LabelledSample& s = m.samples[i];
                        if (s.vector.bits[f] != bit) continue;
                        ++covered;
                        (s.label == target ? corrected : introduced) += 1;
                    }
                    if (covered == 0) continue;
                    const double err =
                        static_cast<double>(introduced + (total_wrong - corrected)) / covered;
                    if (err + 1e-12 < round_error) {
                        round_error = err;
                        pick_feature = static_cast<std::int32_t>(f);
                        pick_bit = bit;
                        pick_corrected = corrected;
                        pick_introduced = introduced;
                    }
                }
            }
            if (pick_feature < 0) break;

            best.literals.push_back({pick_feature, pick_bit});
            best.error = round_error;
            best.corrected = pick_corrected;
            best.introduced = pick_introduced;
            feature_used[static_cast<std::size_t>(pick_feature)] = 1;
            std::erase_if(current, [&](std::uint32_t i) {
                return m.samples[i].vector.bits[static_cast<std::size_t>(pick_feature)] != pick_bit;
            });
        }
        return best;
    }

    // Builds the node covering `covered` and predicting `cls`; attaches
    // exceptions while they repay themselves. Returns the node index.
    std::int32_t build(std::vector<std::uint32_t> covered, Label cls, std::uint32_t depth) {
        const std::int32_t self = static_cast<std::int32_t>(nodes.size());
        nodes.emplace_back();
        nodes[self].cls = cls;

        while (depth < opts.max_depth) {
            std::uint32_t wrong = 0;
            for (std::uint32_t i : covered) wrong += (m.samples[i].label != cls) ? 1u : 0u;
            if (wrong == 0) break;

            const Candidate c = grow_rule(covered, flip(cls), wrong);
            if (c.literals.empty() || c.corrected <= c.introduced) break;

            std::vector<std::uint32_t> child_covered, kept;
            for (std::uint32_t i : covered) {
                (matches_literals(c.literals, m.samples[i].vector) ? child_covered : kept).push_back(i);
            }
            const std::int32_t child = build(std::move(child_covered), flip(cls), depth + 1);
            nodes[child].literals = c.literals;
            nodes[self].children.push_back(child);
            covered = std::move(kept);
        }

        for (std::uint32_t i : covered) {
            (m.samples[i].label == Label::suspicious ? nodes[self].n_sus : nodes[self].n_ben) += 1;
        }
        return self;
    }
};

}  // namespace

RippleDownModel train_ridor(const SampleMatrix& m, const RidorOptions& opts) {
    std::uint32_t n_sus = 0;
    for (const LabelledSample& s : m.samples) n_sus += (s.label == Label::suspicious) ? 1u : 0u;
    if (n_sus == 0 || n_sus == m.samples.size()) {
        throw Error(ErrorCode::single_class_data, "ripple-down rules need both classes");
    }

    const std::uint32_t n_ben = static_cast<std::uint32_t>(m.samples.size()) - n_sus;
    const Label default_class = (n_sus > n_ben) ? Label::suspicious : Label::benign;

    std::vector<std::uint32_t> all(m.samples.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;

    Builder builder{m, opts, {}};
    builder.build(std::move(all), default_class, 0);

    RippleDownModel model;
    model.nodes = std::move(builder.nodes);
    return model;
}

Posterior predict(const RippleDownModel& model, const FeatureVector& v) {
    std::int32_t at = 0;
    bool descended = true;
    while (descended) {
        descended = false;
        for (std::int32_t child : model.nodes[static_cast<std::size_t>(at)].children) {
            if (matches_literals(model.nodes[static_cast<std::size_t>(child)].literals, v)) {
                at = child;
                descended = true;
                break;
            }
        }
    }
    const RidorNode& nd = model.nodes[static_cast<std::size_t>(at)];
    return laplace_posterior(nd.n_sus, nd.n_ben);
}

}  // namespace apkscreen
