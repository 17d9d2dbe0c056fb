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

#include "apkscreen/evaluate.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "apkscreen/errors.hpp"

namespace apkscreen {

using nlohmann::json;

namespace {

constexpr Algorithm kCommitteeOrder[] = {Algorithm::nb, Algorithm::sl, Algorithm::dt,
                                         Algorithm::ridor, Algorithm::part};
constexpr Scheme kSchemeOrder[] = {Scheme::average, Scheme::product, Scheme::maximum, Scheme::vote};

// Per-configuration outcome of scoring one fold's holdout.
struct FoldOutcome {
    ConfusionCounts counts;
    std::vector<ScoredLabel> scores;
};

// One fold's outcomes for every evaluated configuration, config-name keyed
// positionally (same order as the final report).
using FoldRow = std::vector<FoldOutcome>;

FoldRow evaluate_fold(const SampleMatrix& m, const FoldPlan& plan, std::uint32_t held,
                      const std::vector<Algorithm>& algos, const std::vector<Scheme>& schemes,
                      const TrainOptions& train_opts) {
    SampleMatrix train_split;
    train_split.catalog = m.catalog;
    std::vector<std::uint32_t> test_idx;
    for (std::uint32_t i = 0; i < m.samples.size(); ++i) {
        if (plan.assignments[i] == held) {
            test_idx.push_back(i);
        } else {
            train_split.samples.push_back(m.samples[i]);
        }
    }

    std::vector<TrainedModel> models;
    models.reserve(algos.size());
    for (Algorithm a : algos) models.push_back(train(a, train_split, train_opts));

    FoldRow row(algos.size() + schemes.size());
    for (std::uint32_t i : test_idx) {
        const LabelledSample& s = m.samples[i];
        PosteriorSet committee;
        committee.posteriors.reserve(models.size());
        for (std::size_t a = 0; a < models.size(); ++a) {
            const Posterior p = predict(models[a], s.vector);
            committee.posteriors.push_back(p);
            FoldOutcome& out = row[a];
            const bool call_sus = verdict(p) == Label::suspicious;
            const bool is_sus = s.label == Label::suspicious;
            (is_sus ? (call_sus ? out.counts.tp : out.counts.fn)
                    : (call_sus ? out.counts.fp : out.counts.tn)) += 1;
            out.scores.push_back({p.p_sus, s.label});
        }
        for (std::size_t sc = 0; sc < schemes.size(); ++sc) {
            const EnsembleVerdict v = combine(committee, schemes[sc]);
            FoldOutcome& out = row[algos.size() + sc];
            const bool call_sus = v.decision == Label::suspicious;
            const bool is_sus = s.label == Label::suspicious;
            (is_sus ? (call_sus ? out.counts.tp : out.counts.fn)
                    : (call_sus ? out.counts.fp : out.counts.tn)) += 1;
            out.scores.push_back({v.score_sus, s.label});
        }
    }
    return row;
}

MetricsReport mean_of_folds(const std::vector<MetricsReport>& folds) {
    MetricsReport mean;
    mean.auc = 0.0;  // default is the 0.5 no-information value; accumulate from zero
    const double k = static_cast<double>(folds.size());
    for (const MetricsReport& f : folds) {
        mean.tpr += f.tpr / k;
        mean.tnr += f.tnr / k;
        mean.fpr += f.fpr / k;
        mean.fnr += f.fnr / k;
        mean.acc += f.acc / k;
        mean.err += f.err / k;
        mean.auc += f.auc / k;
    }
    return mean;
}

json metrics_to_json(const MetricsReport& r) {
    return {{"tpr", r.tpr},
            {"tnr", r.tnr},
            {"fpr", r.fpr},
            {"fnr", r.fnr},
            {"acc", r.acc},
            {"err", r.err},
            {"auc", r.auc},
            {"counts", {{"tp", r.counts.tp}, {"tn", r.counts.tn}, {"fp", r.counts.fp}, {"fn", r.counts.fn}}}};
}

MetricsReport metrics_from_json(const json& j) {
    MetricsReport r;
    r.tpr = j.at("tpr").get<double>();
    r.tnr = j.at("tnr").get<double>();
    r.fpr = j.at("fpr").get<double>();
    r.fnr = j.at("fnr").get<double>();
    r.acc = j.at("acc").get<double>();
    r.err = j.at("err").get<double>();
    r.auc = j.at("auc").get<double>();
    const json& c = j.at("counts");
    r.counts = {c.at("tp").get<std::uint64_t>(), c.at("tn").get<std::uint64_t>(),
                c.at("fp").get<std::uint64_t>(), c.at("fn").get<std::uint64_t>()};
    return r;
}

}  // namespace

CrossValidationResult cross_validate(const SampleMatrix& m, std::vector<Algorithm> algos,
                                     std::vector<Scheme> schemes, std::uint32_t k,
                                     std::uint64_t seed, const TrainOptions& train_opts,
                                     unsigned jobs) {
    // Canonicalize request order and drop duplicates.
    auto keep_in = [](auto requested, auto const& canon) {
        std::decay_t<decltype(requested)> ordered;
        for (auto item : canon) {
            if (std::find(requested.begin(), requested.end(), item) != requested.end()) {
                ordered.push_back(item);
            }
        }
        return ordered;
    };
    algos = keep_in(std::move(algos), kCommitteeOrder);
    schemes = keep_in(std::move(schemes), kSchemeOrder);
    if (algos.empty()) throw Error(ErrorCode::bad_value, "no algorithms requested");
    if (!schemes.empty() && algos.size() != std::size(kCommitteeOrder)) {
        throw Error(ErrorCode::bad_value,
                    "combination schemes need the full five-classifier committee");
    }

    CrossValidationResult result;
    result.plan = make_folds(m, k, seed);

    std::vector<FoldRow> rows(k);
    if (jobs <= 1) {
        for (std::uint32_t f = 0; f < k; ++f) {
            rows[f] = evaluate_fold(m, result.plan, f, algos, schemes, train_opts);
        }
    } else {
        // Waves of indexed futures: results land by fold index, so the merge
        // order (and therefore every output byte) is independent of timing.
        for (std::uint32_t start = 0; start < k; start += jobs) {
            const std::uint32_t end = std::min(k, start + jobs);
            std::vector<std::future<FoldRow>> wave;
            for (std::uint32_t f = start; f < end; ++f) {
                wave.push_back(std::async(std::launch::async, [&, f] {
                    return evaluate_fold(m, result.plan, f, algos, schemes, train_opts);
                }));
            }
            for (std::uint32_t f = start; f < end; ++f) rows[f] = wave[f - start].get();
        }
    }

    std::vector<std::string> names;
    for (Algorithm a : algos) names.emplace_back(algorithm_name(a));
    for (Scheme s : schemes) names.emplace_back(scheme_name(s));

    for (std::size_t cfg = 0; cfg < names.size(); ++cfg) {
        ConfigReport report;
        report.name = names[cfg];

        ConfusionCounts pooled_counts;
        std::vector<ScoredLabel> pooled_scores;
        std::vector<MetricsReport> fold_reports;
        for (std::uint32_t f = 0; f < k; ++f) {
            const FoldOutcome& out = rows[f][cfg];
            fold_reports.push_back(compute_metrics(out.counts, out.scores));
            pooled_counts.tp += out.counts.tp;
            pooled_counts.tn += out.counts.tn;
            pooled_counts.fp += out.counts.fp;
            pooled_counts.fn += out.counts.fn;
            pooled_scores.insert(pooled_scores.end(), out.scores.begin(), out.scores.end());
        }
        report.pooled = compute_metrics(pooled_counts, pooled_scores);
        report.headline = mean_of_folds(fold_reports);
        report.headline.counts = pooled_counts;
        report.headline.roc = report.pooled.roc;
        report.headline.per_fold = std::move(fold_reports);
        result.configs.push_back(std::move(report));
    }
    return result;
}

void write_report(const CrossValidationResult& result, const std::string& path) {
    json configs = json::array();
    for (const ConfigReport& cfg : result.configs) {
        json per_fold = json::array();
        for (const MetricsReport& f : cfg.headline.per_fold) per_fold.push_back(metrics_to_json(f));
        configs.push_back({{"name", cfg.name},
                           {"headline", metrics_to_json(cfg.headline)},
                           {"pooled", metrics_to_json(cfg.pooled)},
                           {"per_fold", std::move(per_fold)}});
    }
    json doc = {{"schema_version", 1},
                {"k", result.plan.k},
                {"seed", result.plan.seed},
                {"configurations", std::move(configs)}};

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot open for writing: " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw Error(ErrorCode::io_error, "write failed: " + path);

    // One ROC CSV per configuration, named after the report file.
    const std::size_t dot = path.rfind('.');
    const std::string stem = (dot == std::string::npos) ? path : path.substr(0, dot);
    for (const ConfigReport& cfg : result.configs) {
        const std::string roc_path = stem + ".roc." + cfg.name + ".csv";
        std::ofstream roc(roc_path, std::ios::binary | std::ios::trunc);
        if (!roc) throw Error(ErrorCode::io_error, "cannot open for writing: " + roc_path);
        roc << "threshold,fpr,tpr\n" << std::setprecision(17);
        for (const RocPoint& p : cfg.pooled.roc) {
            roc << p.threshold << ',' << p.fpr << ',' << p.tpr << '\n';
        }
        if (!roc) throw Error(ErrorCode::io_error, "write failed: " + roc_path);
    }
}

std::vector<ConfigReport> read_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open report file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::schema_mismatch, std::string("report unparseable: ") + e.what());
    }
    std::vector<ConfigReport> configs;
    for (const json& j : doc.at("configurations")) {
        ConfigReport cfg;
        cfg.name = j.at("name").get<std::string>();
        cfg.headline = metrics_from_json(j.at("headline"));
        cfg.pooled = metrics_from_json(j.at("pooled"));
        for (const json& f : j.at("per_fold")) cfg.headline.per_fold.push_back(metrics_from_json(f));
        configs.push_back(std::move(cfg));
    }
    return configs;
}

std::string render_tables(const CrossValidationResult& result) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3);

    auto table = [&](const char* title, bool schemes_section) {
        bool any = false;
        for (const ConfigReport& cfg : result.configs) {
            const bool is_scheme = cfg.name == "avg" || cfg.name == "prod" || cfg.name == "max" ||
                                   cfg.name == "vote";
            if (is_scheme != schemes_section) continue;
            if (!any) {
                out << title << "\n";
                out << std::left << std::setw(12) << (schemes_section ? "Scheme" : "Algorithm")
                    << std::right << std::setw(7) << "TPR" << std::setw(7) << "TNR" << std::setw(7)
                    << "FPR" << std::setw(7) << "FNR" << std::setw(7) << "ACC" << std::setw(7)
                    << "ERR" << std::setw(7) << "AUC" << "\n";
                any = true;
            }
            const MetricsReport& r = cfg.headline;
            out << std::left << std::setw(12) << cfg.name << std::right << std::setw(7) << r.tpr
                << std::setw(7) << r.tnr << std::setw(7) << r.fpr << std::setw(7) << r.fnr
                << std::setw(7) << r.acc << std::setw(7) << r.err << std::setw(7) << r.auc << "\n";
        }
        if (any) out << "\n";
    };
    table("Base classifiers (fold means)", false);
    table("Combination schemes (fold means)", true);
    return out.str();
}

}  // namespace apkscreen
