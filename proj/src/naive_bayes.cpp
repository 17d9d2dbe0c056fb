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

#include "apkscreen/naive_bayes.hpp"

#include <cmath>

#include "apkscreen/errors.hpp"

namespace apkscreen {

NaiveBayesModel train_naive_bayes(const SampleMatrix& m) {
    const std::size_t n_sus = m.count(Label::suspicious);
    const std::size_t n_ben = m.samples.size() - n_sus;
    if (n_sus == 0 || n_ben == 0) {
        throw Error(ErrorCode::single_class_data, "naive Bayes needs both classes");
    }

    NaiveBayesModel model;
    const double n = static_cast<double>(m.samples.size());
    model.prior_sus = static_cast<double>(n_sus) / n;
    model.prior_ben = static_cast<double>(n_ben) / n;

    const std::size_t d = m.feature_count();
    std::vector<std::size_t> ones_sus(d, 0), ones_ben(d, 0);
    for (const LabelledSample& s : m.samples) {
        auto& ones = (s.label == Label::suspicious) ? ones_sus : ones_ben;
        for (std::size_t i = 0; i < d; ++i) ones[i] += s.vector.bits[i];
    }
    model.cond_sus.resize(d);
    model.cond_ben.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        model.cond_sus[i] = (static_cast<double>(ones_sus[i]) + 1.0) / (static_cast<double>(n_sus) + 2.0);
        model.cond_ben[i] = (static_cast<double>(ones_ben[i]) + 1.0) / (static_cast<double>(n_ben) + 2.0);
    }
    return model;
}

Posterior predict(const NaiveBayesModel& model, const FeatureVector& v) {
    if (v.bits.size() != model.cond_sus.size()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "vector has " + std::to_string(v.bits.size()) + " bits, model expects " +
                        std::to_string(model.cond_sus.size()));
    }
    double log_sus = std::log(model.prior_sus);
    double log_ben = std::log(model.prior_ben);
    for (std::size_t i = 0; i < v.bits.size(); ++i) {
        if (v.bits[i]) {
            log_sus += std::log(model.cond_sus[i]);
            log_ben += std::log(model.cond_ben[i]);
        } else {
            log_sus += std::log1p(-model.cond_sus[i]);
            log_ben += std::log1p(-model.cond_ben[i]);
        }
    }
    // Normalize in log-space against the larger term to dodge underflow.
    const double peak = std::max(log_sus, log_ben);
    const double e_sus = std::exp(log_sus - peak);
    const double e_ben = std::exp(log_ben - peak);
    return {e_sus / (e_sus + e_ben), e_ben / (e_sus + e_ben)};
}

}  // namespace apkscreen
