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

#include "apkscreen/matrix.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "apkscreen/errors.hpp"

namespace apkscreen {

std::string_view label_name(Label l) {
    return l == Label::suspicious ? "suspicious" : "benign";
}

Label parse_label(std::string_view text) {
    if (text == "suspicious") return Label::suspicious;
    if (text == "benign") return Label::benign;
    throw Error(ErrorCode::bad_label, "unknown label '" + std::string(text) + "'");
}

std::size_t SampleMatrix::count(Label l) const {
    return static_cast<std::size_t>(
        std::count_if(samples.begin(), samples.end(),
                      [l](const LabelledSample& s) { return s.label == l; }));
}

FeatureVector vectorize(const EvidenceBundle& evidence, const FeatureCatalog& catalog,
                        const std::string& sample_id) {
    FeatureVector v;
    v.sample_id = sample_id;
    v.bits.resize(catalog.size(), 0);
    for (std::size_t i = 0; i < catalog.features.size(); ++i) {
        const Feature& f = catalog.features[i];
        bool hit = false;
        if (f.category == FeatureCategory::permission) {
            hit = evidence.manifest_permissions.count(f.keyword) != 0;
        } else {
            auto contains = [&](const std::set<std::string>& pool) {
                for (const std::string& s : pool) {
                    if (s.find(f.keyword) != std::string::npos) return true;
                }
                return false;
            };
            hit = contains(evidence.dex_strings) || contains(evidence.raw_strings);
        }
        v.bits[i] = hit ? 1 : 0;
    }
    return v;
}

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(pos));
            break;
        }
        cells.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return cells;
}

}  // namespace

void write_matrix(const SampleMatrix& m, const std::string& path) {
    std::ostringstream out;
    out << "sample_id";
    for (const Feature& f : m.catalog.features) {
        out << ',' << category_tag(f.category) << ':' << f.keyword;
    }
    out << ",label\n";
    for (const LabelledSample& s : m.samples) {
        out << s.vector.sample_id;
        for (std::uint8_t b : s.vector.bits) out << ',' << (b ? '1' : '0');
        out << ',' << label_name(s.label) << '\n';
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::io_error, "cannot open for writing: " + path);
    const std::string text = out.str();
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!file) throw Error(ErrorCode::io_error, "write failed: " + path);
}

SampleMatrix parse_matrix(std::string_view text, const std::string& context) {
    SampleMatrix m;
    std::set<std::string> ids;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = nl + 1;
        ++line_no;
        if (line.empty()) continue;
        const std::string where = context + ":" + std::to_string(line_no);

        const std::vector<std::string_view> cells = split_csv(line);
        if (!header_seen) {
            if (cells.size() < 3 || cells.front() != "sample_id" || cells.back() != "label") {
                throw Error(ErrorCode::schema_mismatch, where + ": bad header row");
            }
            std::vector<Feature> features;
            for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
                const std::string_view cell = cells[i];
                const std::size_t colon = cell.find(':');
                if (colon == std::string_view::npos) {
                    throw Error(ErrorCode::schema_mismatch,
                                where + ": header cell '" + std::string(cell) + "' lacks category");
                }
                const std::string_view tag = cell.substr(0, colon);
                FeatureCategory category;
                if (tag == "api") {
                    category = FeatureCategory::api;
                } else if (tag == "cmd") {
                    category = FeatureCategory::command;
                } else if (tag == "perm") {
                    category = FeatureCategory::permission;
                } else {
                    throw Error(ErrorCode::schema_mismatch,
                                where + ": unknown category in header cell '" + std::string(cell) + "'");
                }
                features.push_back({std::string(cell.substr(colon + 1)), category});
            }
            m.catalog.features = std::move(features);
            m.catalog.version = catalog_version_of(m.catalog.features);
            header_seen = true;
            continue;
        }

        if (cells.size() != m.catalog.size() + 2) {
            throw Error(ErrorCode::schema_mismatch,
                        where + ": expected " + std::to_string(m.catalog.size() + 2) + " cells, got " +
                            std::to_string(cells.size()));
        }
        LabelledSample s;
        s.vector.sample_id = std::string(cells.front());
        if (!ids.insert(s.vector.sample_id).second) {
            throw Error(ErrorCode::duplicate_sample_id, where + ": duplicate sample_id '" + s.vector.sample_id + "'");
        }
        s.vector.bits.reserve(m.catalog.size());
        for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
            if (cells[i] == "0") {
                s.vector.bits.push_back(0);
            } else if (cells[i] == "1") {
                s.vector.bits.push_back(1);
            } else {
                throw Error(ErrorCode::bad_value, where + ": cell '" + std::string(cells[i]) + "' is not 0/1");
            }
        }
        try {
            s.label = parse_label(cells.back());
        } catch (const Error& e) {
            throw Error(ErrorCode::bad_label, where + ": " + e.what());
        }
        m.samples.push_back(std::move(s));
    }

    if (!header_seen) throw Error(ErrorCode::schema_mismatch, context + ": missing header row");
    return m;
}

SampleMatrix read_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open matrix file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str(), path);
}

}  // namespace apkscreen
