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
#include <string_view>
#include <variant>

#include "apkscreen/decision_tree.hpp"
#include "apkscreen/naive_bayes.hpp"
#include "apkscreen/part.hpp"
#include "apkscreen/ridor.hpp"
#include "apkscreen/simple_logistic.hpp"

namespace apkscreen {

enum class Algorithm { nb, sl, dt, part, ridor };

std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);  // throws SchemaMismatch

struct TrainOptions {
    std::uint64_t seed = 42;  // reserved for seeded trainers; current ones are seed-free
    DecisionTreeOptions tree;
    RidorOptions ridor;
    SimpleLogisticOptions logistic;
};

/// A trained classifier plus the catalog layout it was fitted to.
struct TrainedModel {
    Algorithm algorithm = Algorithm::nb;
    std::string catalog_version;
    std::uint32_t feature_count = 0;
    std::variant<NaiveBayesModel, SimpleLogisticModel, DecisionTreeModel, RuleListModel,
                 RippleDownModel>
        payload;

    bool operator==(const TrainedModel&) const = default;
};

/// Dispatches to the requested trainer. Throws SingleClassData and whatever
/// the trainer itself raises.
TrainedModel train(Algorithm a, const SampleMatrix& m, const TrainOptions& opts = {});

/// Posterior for one vector. Throws DimensionMismatch when the vector length
/// does not match the model's layout.
Posterior predict(const TrainedModel& model, const FeatureVector& v);

/// Versioned JSON persistence; round-trip identity including exact reals.
/// Throws SchemaMismatch (unknown schema/algorithm tag) and CorruptModel
/// (unparseable or truncated content).
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

std::string serialize_model(const TrainedModel& model);
TrainedModel deserialize_model(std::string_view text);

}  // namespace apkscreen
