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

#include <string>
#include <vector>

#include "apkscreen/ensemble.hpp"
#include "apkscreen/folds.hpp"
#include "apkscreen/metrics.hpp"
#include "apkscreen/model.hpp"

namespace apkscreen {

/// One evaluated configuration: a base algorithm ("nb".."part") or a
/// combination scheme ("avg".."vote").
struct ConfigReport {
    std::string name;
    MetricsReport headline;  // per-fold means; per_fold holds the breakdown
    MetricsReport pooled;    // secondary view over summed counts / all scores
};

struct CrossValidationResult {
    FoldPlan plan;
    std::vector<ConfigReport> configs;  // canonical order: algorithms then schemes
};

/// Stratified k-fold cross-validation of the requested base classifiers and
/// combination schemes. Scheme evaluation needs the full five-classifier
/// committee, so `schemes` non-empty requires all five algorithms.
/// `jobs` bounds fold-level parallelism; results are independent of it.
CrossValidationResult cross_validate(const SampleMatrix& m, std::vector<Algorithm> algos,
                                     std::vector<Scheme> schemes, std::uint32_t k,
                                     std::uint64_t seed, const TrainOptions& train_opts = {},
                                     unsigned jobs = 1);

/// JSON report (metrics only) plus one `<stem>.roc.<config>.csv` per
/// configuration next to it.
void write_report(const CrossValidationResult& result, const std::string& path);

/// Re-reads a written report's headline metrics (for round-trip checks).
std::vector<ConfigReport> read_report(const std::string& path);

/// Plain-text tables (base classifiers, then schemes), metric columns in the
/// order TPR, TNR, FPR, FNR, ACC, ERR, AUC.
std::string render_tables(const CrossValidationResult& result);

}  // namespace apkscreen
