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

#include "apkscreen/metrics.hpp"

#include <algorithm>
#include <limits>

#include "apkscreen/errors.hpp"

namespace apkscreen {

double rank_auc(const std::vector<ScoredLabel>& scores) {
    std::size_t n_pos = 0;
    for (const ScoredLabel& s : scores) n_pos += (s.truth == Label::suspicious) ? 1u : 0u;
    const std::size_t n_neg = scores.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) return 0.5;

    std::vector<std::size_t> order(scores.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a].score_sus < scores[b].score_sus;
    });

    // Midranks over tie groups; sum the positives' ranks.
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]].score_sus == scores[order[i]].score_sus) ++j;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) {
            if (scores[order[t]].truth == Label::suspicious) pos_rank_sum += midrank;
        }
        i = j;
    }
    const double np = static_cast<double>(n_pos);
    const double nn = static_cast<double>(n_neg);
    return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

std::vector<RocPoint> roc_curve(const std::vector<ScoredLabel>& scores) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::size_t n_pos = 0;
    for (const ScoredLabel& s : scores) n_pos += (s.truth == Label::suspicious) ? 1u : 0u;
    const std::size_t n_neg = scores.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        return {{inf, 0.0, 0.0}, {-inf, 1.0, 1.0}};
    }

    std::vector<ScoredLabel> sorted = scores;
    std::sort(sorted.begin(), sorted.end(), [](const ScoredLabel& a, const ScoredLabel& b) {
        return a.score_sus > b.score_sus;
    });

    std::vector<RocPoint> roc;
    roc.push_back({inf, 0.0, 0.0});
    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        const double threshold = sorted[i].score_sus;
        while (i < sorted.size() && sorted[i].score_sus == threshold) {
            (sorted[i].truth == Label::suspicious ? tp : fp) += 1;
            ++i;
        }
        roc.push_back({threshold, static_cast<double>(fp) / static_cast<double>(n_neg),
                       static_cast<double>(tp) / static_cast<double>(n_pos)});
    }
    roc.push_back({-inf, 1.0, 1.0});
    return roc;
}

double trapezoid_auc(const std::vector<RocPoint>& roc) {
    double area = 0.0;
    for (std::size_t i = 1; i < roc.size(); ++i) {
        area += (roc[i].fpr - roc[i - 1].fpr) * (roc[i].tpr + roc[i - 1].tpr) / 2.0;
    }
    return area;
}

MetricsReport compute_metrics(const ConfusionCounts& c, const std::vector<ScoredLabel>& scores) {
    if (c.tp + c.fn == 0) throw Error(ErrorCode::empty_class, "no suspicious samples in counts");
    if (c.tn + c.fp == 0) throw Error(ErrorCode::empty_class, "no benign samples in counts");

    MetricsReport r;
    r.counts = c;
    const double pos = static_cast<double>(c.tp + c.fn);
    const double neg = static_cast<double>(c.tn + c.fp);
    r.tpr = static_cast<double>(c.tp) / pos;
    r.tnr = static_cast<double>(c.tn) / neg;
    r.fpr = static_cast<double>(c.fp) / neg;
    r.fnr = static_cast<double>(c.fn) / pos;
    r.acc = (r.tpr + r.tnr) / 2.0;
    r.err = 1.0 - r.acc;
    r.auc = rank_auc(scores);
    r.roc = roc_curve(scores);
    return r;
}

}  // namespace apkscreen
