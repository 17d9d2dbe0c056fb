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
#include <set>
#include <string>

#include "apkscreen/apk.hpp"
#include "apkscreen/errors.hpp"

namespace apkscreen {

/// Everything a package discloses statically: strings mined from its DEX
/// tables, the permissions it declares, and printable runs from all entries.
struct EvidenceBundle {
    std::set<std::string> dex_strings;
    std::set<std::string> manifest_permissions;  // bare names, prefix stripped
    std::set<std::string> raw_strings;           // entry paths + printable runs
    bool fallback_used = false;                  // manifest recovered by token scan
    DiagnosticList diagnostics;
};

/// All entry paths plus every maximal run of >= min_len printable ASCII
/// bytes (0x20..0x7E) in any entry payload.
std::set<std::string> harvest_raw_strings(const ApkPackage& pkg, std::size_t min_len = 4);

/// Runs all three extractors over a package. Per-entry problems land in the
/// bundle's diagnostics; only a hard container failure throws.
EvidenceBundle harvest_evidence(const ApkPackage& pkg, std::size_t min_len = 4);

}  // namespace apkscreen
