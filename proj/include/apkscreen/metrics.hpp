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

namespace apkscreen {

/// Positive class = suspicious throughout.
struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    bool operator==(const ConfusionCounts&) const = default;
};

struct ScoredLabel {
    double score_sus = 0.0;
    Label truth = Label::benign;
};

struct RocPoint {
    double threshold = 0.0;  // classify suspicious iff score >= threshold
    double fpr = 0.0;
    double tpr = 0.0;
};

struct MetricsReport {
    double tpr = 0.0, tnr = 0.0, fpr = 0.0, fnr = 0.0;
    double acc = 0.0, err = 0.0, auc = 0.5;
    ConfusionCounts counts;
    std::vector<RocPoint> roc;
    std::vector<MetricsReport> per_fold;  // populated on cross-validation headlines
};

/// Ratio metrics from the counts (acc is the class-balanced mean of TPR and
/// TNR); AUC by rank statistic over the scores, ROC by threshold sweep.
/// Scores may be empty (AUC 0.5, trivial ROC). Throws EmptyClass when either
/// class count is zero.
MetricsReport compute_metrics(const ConfusionCounts& c, const std::vector<ScoredLabel>& scores);

/// Mann-Whitney AUC with ties counted half; 0.5 when a class is absent.
double rank_auc(const std::vector<ScoredLabel>& scores);

/// ROC points swept over +inf, each unique score descending, -inf.
std::vector<RocPoint> roc_curve(const std::vector<ScoredLabel>& scores);

/// Trapezoidal area under a ROC polyline (cross-check for rank_auc).
double trapezoid_auc(const std::vector<RocPoint>& roc);

}  // namespace apkscreen
