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

#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "apkscreen/apk.hpp"
#include "apkscreen/catalog.hpp"
#include "apkscreen/ensemble.hpp"
#include "apkscreen/errors.hpp"
#include "apkscreen/evaluate.hpp"
#include "apkscreen/evidence.hpp"
#include "apkscreen/matrix.hpp"
#include "apkscreen/model.hpp"

namespace fs = std::filesystem;
using namespace apkscreen;

namespace {

// Exit codes: 0 success, 1 usage, 2 no input, 3 data error, 4 version mismatch.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoInput = 2;
constexpr int kExitDataError = 3;
constexpr int kExitVersionMismatch = 4;

void log_err(const std::string& message) { std::cerr << "apkscreen: " << message << '\n'; }

int map_error(const Error& e) {
    log_err(std::string(error_code_name(e.code())) + ": " + e.what());
    return e.code() == ErrorCode::io_error ? kExitUsage : kExitDataError;
}

std::vector<fs::path> list_files_sorted(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    return files;
}

std::map<std::string, Label> read_labels_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open labels file: " + path);
    std::map<std::string, Label> labels;
    std::string line;
    bool first = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first && line == "sample_id,label") {
            first = false;
            continue;
        }
        first = false;
        const std::size_t comma = line.rfind(',');
        if (comma == std::string::npos) {
            throw Error(ErrorCode::bad_label, path + ":" + std::to_string(line_no) + ": expected sample_id,label");
        }
        labels[line.substr(0, comma)] = parse_label(line.substr(comma + 1));
    }
    return labels;
}

struct ExtractedRow {
    std::string sample_id;
    std::optional<FeatureVector> vector;  // empty on parse failure
    std::string error;
};

ExtractedRow extract_one(const fs::path& file, const FeatureCatalog& catalog,
                         std::size_t min_string_len) {
    ExtractedRow row;
    row.sample_id = file.stem().string();
    try {
        const ApkPackage pkg = open_package(file.string());
        const EvidenceBundle evidence = harvest_evidence(pkg, min_string_len);
        for (const Diagnostic& d : evidence.diagnostics) {
            log_err(file.filename().string() + ": " + std::string(error_code_name(d.code)) + ": " +
                    d.message);
        }
        row.vector = vectorize(evidence, catalog, row.sample_id);
    } catch (const Error& e) {
        row.error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    return row;
}

std::vector<ExtractedRow> extract_dir(const fs::path& dir, const FeatureCatalog& catalog,
                                      std::size_t min_string_len, unsigned jobs) {
    const std::vector<fs::path> files = list_files_sorted(dir);
    std::vector<ExtractedRow> rows(files.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < files.size(); ++i) {
            rows[i] = extract_one(files[i], catalog, min_string_len);
        }
    } else {
        for (std::size_t start = 0; start < files.size(); start += jobs) {
            const std::size_t end = std::min(files.size(), start + jobs);
            std::vector<std::future<ExtractedRow>> wave;
            for (std::size_t i = start; i < end; ++i) {
                wave.push_back(std::async(std::launch::async, [&, i] {
                    return extract_one(files[i], catalog, min_string_len);
                }));
            }
            for (std::size_t i = start; i < end; ++i) rows[i] = wave[i - start].get();
        }
    }
    return rows;
}

int cmd_extract(const std::string& apk_dir, const std::string& catalog_path,
                const std::string& labels_path, const std::string& out_path,
                std::size_t min_string_len, unsigned jobs) {
    FeatureCatalog catalog;
    try {
        catalog = load_catalog(catalog_path);
    } catch (const Error& e) {
        log_err(std::string(error_code_name(e.code())) + ": " + e.what());
        return kExitUsage;  // an unusable catalog argument is an invocation problem
    }

    std::map<std::string, Label> labels;
    const bool have_labels = !labels_path.empty();
    try {
        if (have_labels) labels = read_labels_csv(labels_path);
    } catch (const Error& e) {
        return map_error(e);
    }
    if (!have_labels) {
        log_err("no labels file given; labelling every sample 'benign' as a placeholder");
    }

    SampleMatrix matrix;
    matrix.catalog = catalog;
    std::set<std::string> seen_ids;
    try {
        for (ExtractedRow& row : extract_dir(apk_dir, catalog, min_string_len, jobs)) {
            if (!row.vector) {
                log_err(row.sample_id + ": skipped: " + row.error);
                continue;
            }
            if (!seen_ids.insert(row.sample_id).second) {
                log_err("duplicate sample_id '" + row.sample_id + "' (file stems must be unique)");
                return kExitDataError;
            }
            LabelledSample sample;
            sample.vector = std::move(*row.vector);
            sample.label = Label::benign;
            if (have_labels) {
                const auto it = labels.find(row.sample_id);
                if (it == labels.end()) {
                    log_err("no label for '" + row.sample_id + "'; defaulting to benign");
                } else {
                    sample.label = it->second;
                }
            }
            matrix.samples.push_back(std::move(sample));
        }
    } catch (const Error& e) {
        return map_error(e);
    } catch (const fs::filesystem_error& e) {
        log_err(e.what());
        return kExitUsage;
    }

    if (matrix.samples.empty()) {
        log_err("no packages parsed");
        return kExitNoInput;
    }
    try {
        write_matrix(matrix, out_path);
    } catch (const Error& e) {
        return map_error(e);
    }
    log_err("wrote " + std::to_string(matrix.samples.size()) + " rows to " + out_path);
    return kExitOk;
}

std::string model_summary(const TrainedModel& model) {
    std::ostringstream out;
    out << algorithm_name(model.algorithm) << ' ';
    switch (model.algorithm) {
        case Algorithm::nb:
            out << "features: " << std::get<NaiveBayesModel>(model.payload).cond_sus.size();
            break;
        case Algorithm::sl: {
            const auto& sl = std::get<SimpleLogisticModel>(model.payload);
            const std::size_t nonzero = static_cast<std::size_t>(
                std::count_if(sl.weights.begin(), sl.weights.end(), [](double w) { return w != 0.0; }));
            out << "nonzero weights: " << nonzero << " (iterations: " << sl.iterations_used << ")";
            break;
        }
        case Algorithm::dt: {
            const auto& dt = std::get<DecisionTreeModel>(model.payload);
            out << "leaves: " << dt.leaf_count() << " (nodes: " << dt.nodes.size() << ")";
            break;
        }
        case Algorithm::part:
            out << "rules: " << std::get<RuleListModel>(model.payload).rules.size();
            break;
        case Algorithm::ridor:
            out << "exceptions: " << std::get<RippleDownModel>(model.payload).exception_count();
            break;
    }
    return out.str();
}

int cmd_train(const std::string& matrix_path, const std::string& algo_arg,
              const std::string& out_dir, std::uint64_t seed) {
    std::vector<Algorithm> algos;
    if (algo_arg == "all") {
        algos = {Algorithm::nb, Algorithm::sl, Algorithm::dt, Algorithm::part, Algorithm::ridor};
    } else {
        try {
            algos.push_back(parse_algorithm(algo_arg));
        } catch (const Error&) {
            log_err("unknown --algo '" + algo_arg + "' (expected nb|sl|dt|part|ridor|all)");
            return kExitUsage;
        }
    }

    try {
        const SampleMatrix matrix = read_matrix(matrix_path);
        fs::create_directories(out_dir);
        TrainOptions opts;
        opts.seed = seed;
        for (Algorithm a : algos) {
            const TrainedModel model = train(a, matrix, opts);
            const std::string path =
                (fs::path(out_dir) / (std::string(algorithm_name(a)) + ".model.json")).string();
            save_model(model, path);
            std::cout << model_summary(model) << '\n';
        }
    } catch (const Error& e) {
        return map_error(e);
    } catch (const fs::filesystem_error& e) {
        log_err(e.what());
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_classify(const std::string& model_dir, const std::string& catalog_path,
                 const std::string& apk_dir, const std::string& matrix_path,
                 const std::string& scheme_arg, std::size_t min_string_len, unsigned jobs) {
    Scheme scheme;
    try {
        scheme = parse_scheme(scheme_arg);
    } catch (const Error&) {
        log_err("unknown --scheme '" + scheme_arg + "' (expected avg|prod|max|vote)");
        return kExitUsage;
    }

    FeatureCatalog catalog;
    try {
        catalog = load_catalog(catalog_path);
    } catch (const Error& e) {
        log_err(std::string(error_code_name(e.code())) + ": " + e.what());
        return kExitUsage;
    }

    // The committee needs all five models, trained against this catalog.
    std::vector<TrainedModel> models;
    try {
        for (Algorithm a : {Algorithm::nb, Algorithm::sl, Algorithm::dt, Algorithm::ridor,
                            Algorithm::part}) {
            const std::string path =
                (fs::path(model_dir) / (std::string(algorithm_name(a)) + ".model.json")).string();
            models.push_back(load_model(path));
        }
    } catch (const Error& e) {
        return map_error(e);
    }
    for (const TrainedModel& model : models) {
        if (model.catalog_version != catalog.version) {
            log_err("model " + std::string(algorithm_name(model.algorithm)) + " was trained under " +
                    model.catalog_version + " but the catalog is " + catalog.version);
            return kExitVersionMismatch;
        }
    }

    std::vector<FeatureVector> vectors;
    if (!matrix_path.empty()) {
        try {
            SampleMatrix matrix = read_matrix(matrix_path);
            if (matrix.catalog.version != catalog.version) {
                log_err("matrix was written under " + matrix.catalog.version + " but the catalog is " +
                        catalog.version);
                return kExitVersionMismatch;
            }
            for (LabelledSample& s : matrix.samples) vectors.push_back(std::move(s.vector));
        } catch (const Error& e) {
            return map_error(e);
        }
    } else {
        try {
            for (ExtractedRow& row : extract_dir(apk_dir, catalog, min_string_len, jobs)) {
                if (!row.vector) {
                    log_err(row.sample_id + ": skipped: " + row.error);
                    continue;
                }
                vectors.push_back(std::move(*row.vector));
            }
        } catch (const fs::filesystem_error& e) {
            log_err(e.what());
            return kExitUsage;
        }
    }
    if (vectors.empty()) {
        log_err("no samples to classify");
        return kExitNoInput;
    }

    std::cout << "sample_id,verdict,score_sus,p_nb,p_sl,p_dt,p_ridor,p_part\n"
              << std::setprecision(6);
    try {
        for (const FeatureVector& v : vectors) {
            PosteriorSet committee;
            for (const TrainedModel& model : models) {
                committee.posteriors.push_back(predict(model, v));
            }
            const EnsembleVerdict result = combine(committee, scheme);
            std::cout << v.sample_id << ',' << label_name(result.decision) << ',' << result.score_sus;
            for (const Posterior& p : committee.posteriors) std::cout << ',' << p.p_sus;
            std::cout << '\n';
        }
    } catch (const Error& e) {
        return map_error(e);
    }
    return kExitOk;
}

int cmd_evaluate(const std::string& matrix_path, std::uint32_t folds, std::uint64_t seed,
                 const std::string& report_path, const std::string& algos_arg,
                 const std::string& schemes_arg, unsigned jobs) {
    std::vector<Algorithm> algos;
    std::vector<Scheme> schemes;
    try {
        auto split = [](const std::string& s) {
            std::vector<std::string> parts;
            std::istringstream in(s);
            std::string part;
            while (std::getline(in, part, ',')) parts.push_back(part);
            return parts;
        };
        if (algos_arg == "all") {
            algos = {Algorithm::nb, Algorithm::sl, Algorithm::dt, Algorithm::ridor, Algorithm::part};
        } else {
            for (const std::string& name : split(algos_arg)) algos.push_back(parse_algorithm(name));
        }
        if (schemes_arg == "all") {
            schemes = {Scheme::average, Scheme::product, Scheme::maximum, Scheme::vote};
        } else if (schemes_arg != "none") {
            for (const std::string& name : split(schemes_arg)) schemes.push_back(parse_scheme(name));
        }
    } catch (const Error& e) {
        log_err(e.what());
        return kExitUsage;
    }

    try {
        const SampleMatrix matrix = read_matrix(matrix_path);
        TrainOptions opts;
        opts.seed = seed;
        const CrossValidationResult result =
            cross_validate(matrix, algos, schemes, folds, seed, opts, jobs);
        write_report(result, report_path);
        std::cout << render_tables(result);
    } catch (const Error& e) {
        return map_error(e);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Static APK screening: keyword evidence, five classifiers, combined verdicts"};
    app.require_subcommand(1);

    std::string apk_dir, catalog_path, labels_path, out_path, matrix_path, model_dir, report_path;
    std::string algo_arg = "all", scheme_arg = "prod", algos_arg = "all", schemes_arg = "all";
    std::uint64_t seed = 42;
    std::uint32_t folds = 10;
    std::size_t min_string_len = 4;
    unsigned jobs = 1;

    CLI::App* extract = app.add_subcommand("extract", "Build a feature matrix from a directory of APKs");
    extract->add_option("--apk-dir", apk_dir, "Directory of APK files")->required()
        ->check(CLI::ExistingDirectory);
    extract->add_option("--catalog", catalog_path, "Feature catalog file")->required();
    extract->add_option("--labels", labels_path, "CSV of sample_id,label");
    extract->add_option("--out", out_path, "Output matrix CSV")->required();
    extract->add_option("--min-string-len", min_string_len, "Minimum printable-run length");
    extract->add_option("--jobs", jobs, "Parallel extraction workers");

    CLI::App* train_cmd = app.add_subcommand("train", "Train classifiers on a labelled matrix");
    train_cmd->add_option("--matrix", matrix_path, "Labelled matrix CSV")->required();
    train_cmd->add_option("--algo", algo_arg, "nb|sl|dt|part|ridor|all");
    train_cmd->add_option("--out-dir", out_path, "Directory for model files")->required();
    train_cmd->add_option("--seed", seed, "Deterministic seed");

    CLI::App* classify = app.add_subcommand("classify", "Score APKs or matrix rows with trained models");
    classify->add_option("--model-dir", model_dir, "Directory holding the five model files")->required();
    classify->add_option("--catalog", catalog_path, "Feature catalog file")->required();
    CLI::Option* classify_apks = classify->add_option("--apk-dir", apk_dir, "Directory of APK files")
        ->check(CLI::ExistingDirectory);
    classify->add_option("--matrix", matrix_path, "Matrix CSV to classify")->excludes(classify_apks);
    classify->add_option("--scheme", scheme_arg, "avg|prod|max|vote");
    classify->add_option("--min-string-len", min_string_len, "Minimum printable-run length");
    classify->add_option("--jobs", jobs, "Parallel extraction workers");

    CLI::App* evaluate = app.add_subcommand("evaluate", "Cross-validate classifiers and schemes");
    evaluate->add_option("--matrix", matrix_path, "Labelled matrix CSV")->required();
    evaluate->add_option("--folds", folds, "Fold count (>= 2)")->check(CLI::Range(2u, 1000000u));
    evaluate->add_option("--seed", seed, "Deterministic seed");
    evaluate->add_option("--report", report_path, "Output report JSON")->required();
    evaluate->add_option("--algos", algos_arg, "Comma list of nb|sl|dt|ridor|part, or 'all'");
    evaluate->add_option("--schemes", schemes_arg, "Comma list of avg|prod|max|vote, 'all' or 'none'");
    evaluate->add_option("--jobs", jobs, "Parallel fold workers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (extract->parsed()) {
        return cmd_extract(apk_dir, catalog_path, labels_path, out_path, min_string_len, jobs);
    }
    if (train_cmd->parsed()) {
        return cmd_train(matrix_path, algo_arg, out_path, seed);
    }
    if (classify->parsed()) {
        if (apk_dir.empty() && matrix_path.empty()) {
            log_err("classify needs --apk-dir or --matrix");
            return kExitUsage;
        }
        return cmd_classify(model_dir, catalog_path, apk_dir, matrix_path, scheme_arg,
                            min_string_len, jobs);
    }
    if (evaluate->parsed()) {
        return cmd_evaluate(matrix_path, folds, seed, report_path, algos_arg, schemes_arg, jobs);
    }
    return kExitUsage;
}
