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

#include "apkscreen/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "apkscreen/apk.hpp"
#include "apkscreen/errors.hpp"

namespace apkscreen {

std::string_view category_tag(FeatureCategory c) {
    switch (c) {
        case FeatureCategory::api: return "api";
        case FeatureCategory::command: return "cmd";
        case FeatureCategory::permission: return "perm";
    }
    return "?";
}

std::size_t FeatureCatalog::count(FeatureCategory c) const {
    return static_cast<std::size_t>(
        std::count_if(features.begin(), features.end(),
                      [c](const Feature& f) { return f.category == c; }));
}

std::string catalog_version_of(const std::vector<Feature>& features) {
    std::string canon;
    for (const Feature& f : features) {
        canon += category_tag(f.category);
        canon += ':';
        canon += f.keyword;
        canon += '\n';
    }
    const std::string digest = sha256_hex(
        std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(canon.data()), canon.size()));
    return "v1:" + digest.substr(0, 16);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

FeatureCatalog parse_catalog(std::string_view text, const std::string& context) {
    FeatureCatalog catalog;
    std::set<std::string> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t colon = line.find(':');
        const std::string where = context + ":" + std::to_string(line_no);
        if (colon == std::string_view::npos) {
            throw Error(ErrorCode::unknown_category, where + ": missing ':' separator");
        }
        const std::string_view tag = trim(line.substr(0, colon));
        const std::string_view keyword = trim(line.substr(colon + 1));
        FeatureCategory category;
        if (tag == "api") {
            category = FeatureCategory::api;
        } else if (tag == "cmd") {
            category = FeatureCategory::command;
        } else if (tag == "perm") {
            category = FeatureCategory::permission;
        } else {
            throw Error(ErrorCode::unknown_category, where + ": unknown category '" + std::string(tag) + "'");
        }
        if (keyword.empty()) {
            throw Error(ErrorCode::unknown_category, where + ": empty keyword");
        }
        if (keyword.find(',') != std::string_view::npos) {
            throw Error(ErrorCode::unknown_category, where + ": keyword may not contain ','");
        }
        if (!seen.insert(std::string(keyword)).second) {
            throw Error(ErrorCode::duplicate_keyword, where + ": duplicate keyword '" + std::string(keyword) + "'");
        }
        catalog.features.push_back({std::string(keyword), category});
    }

    if (catalog.features.empty()) {
        throw Error(ErrorCode::empty_catalog, context + ": no features defined");
    }
    catalog.version = catalog_version_of(catalog.features);
    return catalog;
}

FeatureCatalog load_catalog(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open catalog file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str(), path);
}

}  // namespace apkscreen
