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

#include "apkscreen/evidence.hpp"

#include "apkscreen/axml.hpp"
#include "apkscreen/dex.hpp"

namespace apkscreen {
namespace {

bool printable(std::uint8_t b) { return b >= 0x20 && b <= 0x7E; }

}  // namespace

std::set<std::string> harvest_raw_strings(const ApkPackage& pkg, std::size_t min_len) {
    std::set<std::string> out;
    for (const PackageEntry& entry : pkg.entries) {
        out.insert(entry.path);
        const auto& p = entry.payload;
        std::size_t start = 0;
        while (start < p.size()) {
            while (start < p.size() && !printable(p[start])) ++start;
            std::size_t end = start;
            while (end < p.size() && printable(p[end])) ++end;
            if (end - start >= min_len) {
                out.emplace(reinterpret_cast<const char*>(p.data()) + start, end - start);
            }
            start = end;
        }
    }
    return out;
}

EvidenceBundle harvest_evidence(const ApkPackage& pkg, std::size_t min_len) {
    EvidenceBundle bundle;
    bundle.dex_strings = extract_dex_strings(pkg, &bundle.diagnostics);
    PermissionExtraction perms = extract_manifest_permissions(pkg, &bundle.diagnostics);
    bundle.manifest_permissions = std::move(perms.permissions);
    bundle.fallback_used = perms.fallback_used;
    bundle.raw_strings = harvest_raw_strings(pkg, min_len);
    return bundle;
}

}  // namespace apkscreen
