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

#include "apkscreen/simple_logistic.hpp"

#include <cmath>

#include "apkscreen/errors.hpp"

namespace apkscreen {
namespace {

constexpr double kMinWorkingWeight = 1e-10;

// One boosting step: a simple regression of the working response on a single
// feature (or on nothing, for the intercept-only fallback), halved into the
// additive model per the two-class LogitBoost update.
struct Step {
    std::int32_t feature = -1;  // -1: intercept-only
    double intercept = 0.0;     // fitted value on the bit=0 side
    double slope = 0.0;         // added on the bit=1 side
};

// Fits one LogitBoost iteration on (rows, y) given the additive scores F;
// returns the least-squares-best step. Rows index into `samples`.
Step fit_step(const std::vector<const FeatureVector*>& rows, const std::vector<double>& y,
              const std::vector<double>& f_scores, std::size_t feature_count) {
    const std::size_t n = rows.size();
    std::vector<double> w(n), z(n);
    double w_total = 0.0, wz_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = 1.0 / (1.0 + std::exp(-2.0 * f_scores[i]));
        w[i] = std::max(p * (1.0 - p), kMinWorkingWeight);
        z[i] = (y[i] - p) / w[i];
        w_total += w[i];
        wz_total += w[i] * z[i];
    }

    Step best;
    best.intercept = wz_total / w_total;  // intercept-only fit
    // SSE = sum w z^2 - explained; the z^2 term is common to all candidates,
    // so candidates compare on the explained part alone.
    double best_sse_drop = wz_total * wz_total / w_total;

    for (std::size_t f = 0; f < feature_count; ++f) {
        double w1 = 0.0, wz1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i]->bits[f]) {
                w1 += w[i];
                wz1 += w[i] * z[i];
            }
        }
        const double w0 = w_total - w1;
        const double wz0 = wz_total - wz1;
        if (w1 <= 0.0 || w0 <= 0.0) continue;  // constant column: same as intercept-only
        const double explained = wz0 * wz0 / w0 + wz1 * wz1 / w1;
        if (explained > best_sse_drop + 1e-12) {
            best_sse_drop = explained;
            best.feature = static_cast<std::int32_t>(f);
            best.intercept = wz0 / w0;
            best.slope = wz1 / w1 - wz0 / w0;
        }
    }
    return best;
}

void apply_step(const Step& step, const std::vector<const FeatureVector*>& rows,
                std::vector<double>& f_scores) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double fit = (step.feature >= 0 && rows[i]->bits[static_cast<std::size_t>(step.feature)])
                               ? step.intercept + step.slope
                               : step.intercept;
        f_scores[i] += 0.5 * fit;
        if (!std::isfinite(f_scores[i])) {
            throw Error(ErrorCode::no_convergence, "additive model diverged");
        }
    }
}

// Boosts up to max_iter steps on the training rows; after each step counts
// misclassifications on the holdout rows into errors_by_iter (1-based).
void boost_and_score(const std::vector<const FeatureVector*>& train_rows,
                     const std::vector<double>& train_y,
                     const std::vector<const FeatureVector*>& val_rows,
                     const std::vector<double>& val_y, std::size_t feature_count,
                     std::uint32_t max_iter, std::vector<std::uint32_t>& errors_by_iter) {
    std::vector<double> f_train(train_rows.size(), 0.0), f_val(val_rows.size(), 0.0);
    for (std::uint32_t it = 1; it <= max_iter; ++it) {
        const Step step = fit_step(train_rows, train_y, f_train, feature_count);
        apply_step(step, train_rows, f_train);
        apply_step(step, val_rows, f_val);
        std::uint32_t errors = 0;
        for (std::size_t i = 0; i < val_rows.size(); ++i) {
            const bool call_sus = f_val[i] > 0.0;  // p > 0.5; ties go benign
            errors += (call_sus != (val_y[i] > 0.5)) ? 1u : 0u;
        }
        errors_by_iter[it] += errors;
    }
}

}  // namespace

SimpleLogisticModel train_simple_logistic(const SampleMatrix& m, const SimpleLogisticOptions& opts) {
    const std::size_t n = m.samples.size();
    const std::size_t n_sus = m.count(Label::suspicious);
    if (n_sus == 0 || n_sus == n) {
        throw Error(ErrorCode::single_class_data, "logistic boosting needs both classes");
    }

    std::vector<const FeatureVector*> rows(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i] = &m.samples[i].vector;
        y[i] = (m.samples[i].label == Label::suspicious) ? 1.0 : 0.0;
    }

    // Stratified fold ids in data order (round-robin within each class), so
    // the internal split is deterministic and seed-free.
    const std::uint32_t k = opts.cv_folds;
    std::vector<std::uint32_t> fold(n);
    std::uint32_t next_sus = 0, next_ben = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t& cursor = (m.samples[i].label == Label::suspicious) ? next_sus : next_ben;
        fold[i] = cursor;
        cursor = (cursor + 1) % k;
    }

    std::vector<std::uint32_t> errors_by_iter(opts.max_iter + 1, 0);
    for (std::uint32_t held = 0; held < k; ++held) {
        std::vector<const FeatureVector*> train_rows, val_rows;
        std::vector<double> train_y, val_y;
        for (std::size_t i = 0; i < n; ++i) {
            if (fold[i] == held) {
                val_rows.push_back(rows[i]);
                val_y.push_back(y[i]);
            } else {
                train_rows.push_back(rows[i]);
                train_y.push_back(y[i]);
            }
        }
        if (train_rows.empty() || val_rows.empty()) continue;
        boost_and_score(train_rows, train_y, val_rows, val_y, m.feature_count(), opts.max_iter,
                        errors_by_iter);
    }

    std::uint32_t best_iter = 1;
    for (std::uint32_t it = 2; it <= opts.max_iter; ++it) {
        if (errors_by_iter[it] < errors_by_iter[best_iter]) best_iter = it;
    }

    // Final fit on all data for the chosen number of iterations.
    SimpleLogisticModel model;
    model.weights.assign(m.feature_count(), 0.0);
    model.iterations_used = best_iter;
    std::vector<double> f_scores(n, 0.0);
    for (std::uint32_t it = 0; it < best_iter; ++it) {
        const Step step = fit_step(rows, y, f_scores, m.feature_count());
        apply_step(step, rows, f_scores);
        // p = logistic(2F), so the stored linear form accumulates the
        // un-halved fits.
        model.intercept += step.intercept;
        if (step.feature >= 0) model.weights[static_cast<std::size_t>(step.feature)] += step.slope;
    }
    if (!std::isfinite(model.intercept)) {
        throw Error(ErrorCode::no_convergence, "intercept diverged");
    }
    return model;
}

Posterior predict(const SimpleLogisticModel& model, const FeatureVector& v) {
    if (v.bits.size() != model.weights.size()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "vector has " + std::to_string(v.bits.size()) + " bits, model expects " +
                        std::to_string(model.weights.size()));
    }
    double score = model.intercept;
    for (std::size_t i = 0; i < v.bits.size(); ++i) {
        if (v.bits[i]) score += model.weights[i];
    }
    const double p_sus = 1.0 / (1.0 + std::exp(-score));
    return {p_sus, 1.0 - p_sus};
}

}  // namespace apkscreen
