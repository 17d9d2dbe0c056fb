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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace apkscreen {

enum class FeatureCategory { api, command, permission };

std::string_view category_tag(FeatureCategory c);  // "api" / "cmd" / "perm"

struct Feature {
    std::string keyword;
    FeatureCategory category;

    bool operator==(const Feature&) const = default;
};

/// Ordered keyword inventory; the order fixes the feature-vector layout.
/// The version string is content-derived, so two catalogs agree on layout
/// iff their versions compare equal.
struct FeatureCatalog {
    std::vector<Feature> features;
    std::string version;

    std::size_t size() const { return features.size(); }
    std::size_t count(FeatureCategory c) const;
};

/// Derives the content version ("v1:" + truncated digest of the canonical
/// line form). Called by the parsers; exposed for tests.
std::string catalog_version_of(const std::vector<Feature>& features);

/// Parses catalog text: one `<category>:<keyword>` per line, category in
/// {api, cmd, perm}, `#` starts a comment, blank lines ignored.
/// Throws DuplicateKeyword / UnknownCategory / EmptyCatalog.
FeatureCatalog parse_catalog(std::string_view text, const std::string& context = "<memory>");

/// parse_catalog over a file. Throws IoError if unreadable.
FeatureCatalog load_catalog(const std::string& path);

}  // namespace apkscreen
