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
#include <string>
#include <vector>

#include "apkscreen/catalog.hpp"
#include "apkscreen/evidence.hpp"

namespace apkscreen {

enum class Label : std::uint8_t { benign = 0, suspicious = 1 };

std::string_view label_name(Label l);
Label parse_label(std::string_view text);  // throws BadLabel

/// One row of the input matrix: presence bits laid out per catalog order.
struct FeatureVector {
    std::string sample_id;
    std::vector<std::uint8_t> bits;  // each 0 or 1

    bool operator==(const FeatureVector&) const = default;
};

struct LabelledSample {
    FeatureVector vector;
    Label label = Label::benign;

    bool operator==(const LabelledSample&) const = default;
};

struct SampleMatrix {
    FeatureCatalog catalog;
    std::vector<LabelledSample> samples;

    std::size_t feature_count() const { return catalog.size(); }
    std::size_t count(Label l) const;
};

/// Presence bit per feature: permissions match manifest declarations exactly;
/// api/cmd keywords match as case-sensitive substrings of any mined string.
FeatureVector vectorize(const EvidenceBundle& evidence, const FeatureCatalog& catalog,
                        const std::string& sample_id = {});

/// CSV persistence: header `sample_id,<category>:<keyword>...,label`, cells
/// 0/1, labels suspicious/benign, LF line endings. read(write(m)) == m.
void write_matrix(const SampleMatrix& m, const std::string& path);
SampleMatrix read_matrix(const std::string& path);

/// read_matrix over in-memory text (exposed for tests).
SampleMatrix parse_matrix(std::string_view text, const std::string& context = "<memory>");

}  // namespace apkscreen
