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

/// Additive logistic model: p_sus = logistic(intercept + sum w_i * bit_i).
/// Only features picked by boosting carry nonzero weight.
struct SimpleLogisticModel {
    double intercept = 0.0;
    std::vector<double> weights;
    std::uint32_t iterations_used = 0;

    bool operator==(const SimpleLogisticModel&) const = default;
};

struct SimpleLogisticOptions {
    std::uint32_t max_iter = 200;  // boosting iterations considered
    std::uint32_t cv_folds = 5;    // internal folds picking iterations_used
};

/// LogitBoost with one-feature weighted least squares as the base learner;
/// the iteration count minimizing internal cross-validated misclassifications
/// (ties -> fewest iterations) is used for the final fit on all data.
/// Throws SingleClassData; NoConvergence if the additive model goes non-finite.
SimpleLogisticModel train_simple_logistic(const SampleMatrix& m,
                                          const SimpleLogisticOptions& opts = {});

/// Logistic posterior of the linear score. Throws DimensionMismatch.
Posterior predict(const SimpleLogisticModel& model, const FeatureVector& v);

}  // namespace apkscreen
