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

#include <vector>

#include "apkscreen/matrix.hpp"
#include "apkscreen/posterior.hpp"

namespace apkscreen {

/// Bernoulli naive Bayes over binary features with add-one smoothing.
struct NaiveBayesModel {
    double prior_sus = 0.5;
    double prior_ben = 0.5;
    std::vector<double> cond_sus;  // P(bit_i = 1 | suspicious)
    std::vector<double> cond_ben;  // P(bit_i = 1 | benign)

    bool operator==(const NaiveBayesModel&) const = default;
};

/// Priors from class frequencies; conditionals (n_1c + 1) / (n_c + 2).
/// Throws SingleClassData.
NaiveBayesModel train_naive_bayes(const SampleMatrix& m);

/// Log-space Bayes posterior. Throws DimensionMismatch.
Posterior predict(const NaiveBayesModel& model, const FeatureVector& v);

}  // namespace apkscreen
