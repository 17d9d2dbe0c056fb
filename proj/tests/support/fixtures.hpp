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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "apkscreen/catalog.hpp"
#include "apkscreen/matrix.hpp"
#include "apkscreen/rng.hpp"

namespace apkscreen::testsupport {

// ---------------------------------------------------------------------------
// Container / parser fixtures. These are independent writers for the formats
// the library reads: tests plant known content and assert exact recovery.
// ---------------------------------------------------------------------------

struct ZipEntrySpec {
    std::string name;
    std::vector<std::uint8_t> data;
    bool deflate = false;
};

std::vector<std::uint8_t> build_zip(const std::vector<ZipEntrySpec>& entries);

/// Minimal but well-formed DEX: header with correct checksum, a string_ids
/// table, and MUTF-8 string data items for exactly the given strings.
std::vector<std::uint8_t> build_dex(const std::vector<std::string>& strings);

/// Binary AndroidManifest.xml with one uses-permission element per entry.
/// Permission names are given in full (e.g. "android.permission.SEND_SMS").
/// utf8_pool selects the UTF-8 string-pool encoding; default is UTF-16.
std::vector<std::uint8_t> build_binary_manifest(const std::vector<std::string>& permissions,
                                                bool utf8_pool = false);

/// Smashes the first element chunk's header so structured parsing fails while
/// the string pool stays intact (exercises the token-scan fallback).
std::vector<std::uint8_t> corrupt_element_chunk(std::vector<std::uint8_t> manifest);

std::string build_text_manifest(const std::vector<std::string>& permissions);

/// Assembles a package: binary manifest + one classes.dex + extra entries.
std::vector<std::uint8_t> build_apk(const std::vector<std::string>& dex_strings,
                                    const std::vector<std::string>& permissions,
                                    const std::vector<ZipEntrySpec>& extra = {},
                                    bool deflate = false, bool utf8_pool = false);

// ---------------------------------------------------------------------------
// Filesystem helpers.
// ---------------------------------------------------------------------------

/// Self-deleting unique directory under the system temp root.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);
void write_file(const std::filesystem::path& path, const std::string& text);
std::string read_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Synthetic learning problems.
// ---------------------------------------------------------------------------

/// Catalog of `f` synthetic api-category keywords kw0..kw{f-1}.
FeatureCatalog make_synthetic_catalog(int feature_count);

/// Matrix over a synthetic catalog from explicit rows.
SampleMatrix make_matrix(int feature_count,
                         const std::vector<std::pair<std::vector<std::uint8_t>, Label>>& rows);

struct ConceptLiteral {
    int feature;
    std::uint8_t bit;
};

/// A 3-rule decision list over binary features: rules fire first-match, each
/// tests a single literal; classes follow a one-alternation pattern (a prefix
/// of rules predicts one class, the remaining rules and the default predict
/// the other), which keeps the concept learnable by every committee member.
struct DecisionListConcept {
    std::vector<ConceptLiteral> literals;  // one per rule
    std::vector<Label> rule_class;         // one per rule
    Label default_class = Label::benign;

    Label classify(const std::vector<std::uint8_t>& bits) const;
};

DecisionListConcept random_decision_list(Rng& rng, int feature_count);

/// Noise-free corpus labelled by a random decision list; resamples (with
/// derived seeds) until both classes have at least `min_class` members.
SampleMatrix decision_list_corpus(std::uint64_t seed, int feature_count, int n_samples,
                                  std::size_t min_class = 30);

// ---------------------------------------------------------------------------
// End-to-end mini-package corpus.
// ---------------------------------------------------------------------------

struct MiniCorpus {
    std::filesystem::path apk_dir;
    std::filesystem::path labels_csv;
    int suspicious_count = 0;
    int benign_count = 0;
};

/// Writes `n` tiny packages under dir/apks plus dir/labels.csv. Suspicious
/// samples plant a discriminative catalog keyword pair; all samples carry
/// class-independent noise keywords and keyword-free decoy strings. The
/// catalog file is consulted so every planted keyword is a real feature and
/// every decoy is feature-free.
MiniCorpus build_mini_corpus(const std::filesystem::path& dir, const std::string& catalog_path,
                             std::uint64_t seed, int n);

// ---------------------------------------------------------------------------
// CLI subprocess driver.
// ---------------------------------------------------------------------------

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Runs the apkscreen binary with the given argument string.
CliResult run_cli(const std::string& args);

/// Path of the apkscreen binary under test (compiled in by the build).
std::string cli_binary();

/// Path of the repository's default catalog file.
std::string default_catalog_path();

}  // namespace apkscreen::testsupport
