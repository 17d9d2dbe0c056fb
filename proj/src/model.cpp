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

#include "apkscreen/model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "apkscreen/errors.hpp"

namespace apkscreen {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

json literals_to_json(const std::vector<RuleLiteral>& literals) {
    json arr = json::array();
    for (const RuleLiteral& lit : literals) arr.push_back({lit.feature, lit.bit});
    return arr;
}

std::vector<RuleLiteral> literals_from_json(const json& arr) {
    std::vector<RuleLiteral> literals;
    for (const json& j : arr) {
        literals.push_back({j.at(0).get<std::int32_t>(),
                            static_cast<std::uint8_t>(j.at(1).get<int>() ? 1 : 0)});
    }
    return literals;
}

json payload_to_json(const TrainedModel& model) {
    json payload;
    switch (model.algorithm) {
        case Algorithm::nb: {
            const auto& nb = std::get<NaiveBayesModel>(model.payload);
            payload = {{"prior_sus", nb.prior_sus},
                       {"prior_ben", nb.prior_ben},
                       {"cond_sus", nb.cond_sus},
                       {"cond_ben", nb.cond_ben}};
            break;
        }
        case Algorithm::sl: {
            const auto& sl = std::get<SimpleLogisticModel>(model.payload);
            payload = {{"intercept", sl.intercept},
                       {"weights", sl.weights},
                       {"iterations_used", sl.iterations_used}};
            break;
        }
        case Algorithm::dt: {
            const auto& dt = std::get<DecisionTreeModel>(model.payload);
            json nodes = json::array();
            for (const TreeNode& nd : dt.nodes) {
                nodes.push_back({nd.feature, nd.zero, nd.one, nd.n_sus, nd.n_ben});
            }
            payload = {{"nodes", std::move(nodes)}};
            break;
        }
        case Algorithm::part: {
            const auto& rl = std::get<RuleListModel>(model.payload);
            json rules = json::array();
            for (const Rule& r : rl.rules) {
                rules.push_back({{"literals", literals_to_json(r.literals)},
                                 {"n_sus", r.n_sus},
                                 {"n_ben", r.n_ben}});
            }
            payload = {{"rules", std::move(rules)},
                       {"default_sus", rl.default_sus},
                       {"default_ben", rl.default_ben}};
            break;
        }
        case Algorithm::ridor: {
            const auto& rd = std::get<RippleDownModel>(model.payload);
            json nodes = json::array();
            for (const RidorNode& nd : rd.nodes) {
                nodes.push_back({{"class", std::string(label_name(nd.cls))},
                                 {"literals", literals_to_json(nd.literals)},
                                 {"n_sus", nd.n_sus},
                                 {"n_ben", nd.n_ben},
                                 {"children", nd.children}});
            }
            payload = {{"nodes", std::move(nodes)}};
            break;
        }
    }
    return payload;
}

void payload_from_json(const json& payload, TrainedModel& model) {
    switch (model.algorithm) {
        case Algorithm::nb: {
            NaiveBayesModel nb;
            nb.prior_sus = payload.at("prior_sus").get<double>();
            nb.prior_ben = payload.at("prior_ben").get<double>();
            nb.cond_sus = payload.at("cond_sus").get<std::vector<double>>();
            nb.cond_ben = payload.at("cond_ben").get<std::vector<double>>();
            model.payload = std::move(nb);
            break;
        }
        case Algorithm::sl: {
            SimpleLogisticModel sl;
            sl.intercept = payload.at("intercept").get<double>();
            sl.weights = payload.at("weights").get<std::vector<double>>();
            sl.iterations_used = payload.at("iterations_used").get<std::uint32_t>();
            model.payload = std::move(sl);
            break;
        }
        case Algorithm::dt: {
            DecisionTreeModel dt;
            for (const json& j : payload.at("nodes")) {
                dt.nodes.push_back({j.at(0).get<std::int32_t>(), j.at(1).get<std::int32_t>(),
                                    j.at(2).get<std::int32_t>(), j.at(3).get<std::uint32_t>(),
                                    j.at(4).get<std::uint32_t>()});
            }
            model.payload = std::move(dt);
            break;
        }
        case Algorithm::part: {
            RuleListModel rl;
            for (const json& j : payload.at("rules")) {
                Rule r;
                r.literals = literals_from_json(j.at("literals"));
                r.n_sus = j.at("n_sus").get<std::uint32_t>();
                r.n_ben = j.at("n_ben").get<std::uint32_t>();
                rl.rules.push_back(std::move(r));
            }
            rl.default_sus = payload.at("default_sus").get<std::uint32_t>();
            rl.default_ben = payload.at("default_ben").get<std::uint32_t>();
            model.payload = std::move(rl);
            break;
        }
        case Algorithm::ridor: {
            RippleDownModel rd;
            for (const json& j : payload.at("nodes")) {
                RidorNode nd;
                nd.cls = parse_label(j.at("class").get<std::string>());
                nd.literals = literals_from_json(j.at("literals"));
                nd.n_sus = j.at("n_sus").get<std::uint32_t>();
                nd.n_ben = j.at("n_ben").get<std::uint32_t>();
                nd.children = j.at("children").get<std::vector<std::int32_t>>();
                rd.nodes.push_back(std::move(nd));
            }
            model.payload = std::move(rd);
            break;
        }
    }
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::nb: return "nb";
        case Algorithm::sl: return "sl";
        case Algorithm::dt: return "dt";
        case Algorithm::part: return "part";
        case Algorithm::ridor: return "ridor";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "nb") return Algorithm::nb;
    if (name == "sl") return Algorithm::sl;
    if (name == "dt") return Algorithm::dt;
    if (name == "part") return Algorithm::part;
    if (name == "ridor") return Algorithm::ridor;
    throw Error(ErrorCode::schema_mismatch, "unknown algorithm '" + std::string(name) + "'");
}

TrainedModel train(Algorithm a, const SampleMatrix& m, const TrainOptions& opts) {
    TrainedModel model;
    model.algorithm = a;
    model.catalog_version = m.catalog.version;
    model.feature_count = static_cast<std::uint32_t>(m.feature_count());
    switch (a) {
        case Algorithm::nb: model.payload = train_naive_bayes(m); break;
        case Algorithm::sl: model.payload = train_simple_logistic(m, opts.logistic); break;
        case Algorithm::dt: model.payload = train_decision_tree(m, opts.tree); break;
        case Algorithm::part: model.payload = train_part(m, opts.tree); break;
        case Algorithm::ridor: model.payload = train_ridor(m, opts.ridor); break;
    }
    return model;
}

Posterior predict(const TrainedModel& model, const FeatureVector& v) {
    if (v.bits.size() != model.feature_count) {
        throw Error(ErrorCode::dimension_mismatch,
                    "vector has " + std::to_string(v.bits.size()) + " bits, model expects " +
                        std::to_string(model.feature_count));
    }
    return std::visit([&](const auto& payload) { return predict(payload, v); }, model.payload);
}

std::string serialize_model(const TrainedModel& model) {
    json doc = {{"schema_version", kSchemaVersion},
                {"algorithm", std::string(algorithm_name(model.algorithm))},
                {"catalog_version", model.catalog_version},
                {"feature_count", model.feature_count},
                {"payload", payload_to_json(model)}};
    return doc.dump(2) + "\n";
}

TrainedModel deserialize_model(std::string_view text) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
        throw Error(ErrorCode::corrupt_model, "model file is not valid JSON");
    }
    try {
        const int schema = doc.at("schema_version").get<int>();
        if (schema != kSchemaVersion) {
            throw Error(ErrorCode::schema_mismatch,
                        "unsupported schema_version " + std::to_string(schema));
        }
        TrainedModel model;
        model.algorithm = parse_algorithm(doc.at("algorithm").get<std::string>());
        model.catalog_version = doc.at("catalog_version").get<std::string>();
        model.feature_count = doc.at("feature_count").get<std::uint32_t>();
        payload_from_json(doc.at("payload"), model);
        return model;
    } catch (const Error&) {
        throw;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::corrupt_model, std::string("model content malformed: ") + e.what());
    }
}

void save_model(const TrainedModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot open for writing: " + path);
    const std::string text = serialize_model(model);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorCode::io_error, "write failed: " + path);
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_model(buf.str());
}

}  // namespace apkscreen
