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

#include "apkscreen/axml.hpp"

#include <cstring>
#include <optional>
#include <vector>

namespace apkscreen {
namespace {

// Chunk types, matching frameworks/base ResourceTypes.h.
constexpr std::uint16_t kResXmlType = 0x0003;
constexpr std::uint16_t kResStringPoolType = 0x0001;
constexpr std::uint16_t kResXmlStartElementType = 0x0102;

constexpr std::uint32_t kUtf8Flag = 1u << 8;
constexpr std::uint32_t kNoEntry = 0xFFFFFFFFu;
constexpr std::uint8_t kTypeString = 0x03;

std::uint16_t read_u16(std::span<const std::uint8_t> d, std::size_t off) {
    return static_cast<std::uint16_t>(d[off] | (d[off + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> d, std::size_t off) {
    return static_cast<std::uint32_t>(d[off]) | (static_cast<std::uint32_t>(d[off + 1]) << 8) |
           (static_cast<std::uint32_t>(d[off + 2]) << 16) |
           (static_cast<std::uint32_t>(d[off + 3]) << 24);
}

void append_utf8_cp(std::uint32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Decoded string pool of a binary manifest.
class StringPool {
public:
    static StringPool parse(std::span<const std::uint8_t> chunk);

    const std::string* get(std::uint32_t index) const {
        if (index >= strings_.size()) return nullptr;
        return &strings_[index];
    }

private:
    std::vector<std::string> strings_;
};

StringPool StringPool::parse(std::span<const std::uint8_t> chunk) {
    // header: type u2, headerSize u2, size u4, stringCount u4, styleCount u4,
    // flags u4, stringsStart u4, stylesStart u4 -> 0x1C bytes.
    if (chunk.size() < 0x1C) throw Error(ErrorCode::malformed_manifest, "string pool truncated");
    const std::uint16_t header_size = read_u16(chunk, 2);
    const std::uint32_t chunk_size = read_u32(chunk, 4);
    const std::uint32_t string_count = read_u32(chunk, 8);
    const std::uint32_t flags = read_u32(chunk, 16);
    const std::uint32_t strings_start = read_u32(chunk, 20);
    if (header_size < 0x1C || chunk_size > chunk.size() || strings_start > chunk_size) {
        throw Error(ErrorCode::malformed_manifest, "string pool header inconsistent");
    }
    if (string_count > (chunk_size - header_size) / 4) {
        throw Error(ErrorCode::malformed_manifest, "string pool count exceeds chunk");
    }
    const bool utf8 = (flags & kUtf8Flag) != 0;

    StringPool pool;
    pool.strings_.reserve(string_count);
    for (std::uint32_t i = 0; i < string_count; ++i) {
        const std::size_t idx_off = header_size + 4ull * i;
        const std::uint32_t rel = read_u32(chunk, idx_off);
        std::size_t off = static_cast<std::size_t>(strings_start) + rel;
        if (off >= chunk_size) throw Error(ErrorCode::malformed_manifest, "string offset out of range");

        std::string s;
        if (utf8) {
            // Two lengths (UTF-16 units then bytes), each u1 with a high-bit
            // extension to two bytes.
            auto read_len8 = [&](std::size_t& pos) -> std::uint32_t {
                if (pos >= chunk_size) throw Error(ErrorCode::malformed_manifest, "string length truncated");
                std::uint32_t len = chunk[pos++];
                if (len & 0x80u) {
                    if (pos >= chunk_size) throw Error(ErrorCode::malformed_manifest, "string length truncated");
                    len = ((len & 0x7Fu) << 8) | chunk[pos++];
                }
                return len;
            };
            (void)read_len8(off);  // length in UTF-16 units, unused
            const std::uint32_t byte_len = read_len8(off);
            if (off + byte_len > chunk_size) {
                throw Error(ErrorCode::malformed_manifest, "string data out of range");
            }
            s.assign(reinterpret_cast<const char*>(chunk.data() + off), byte_len);
        } else {
            // u2 length with a high-bit extension to two u2 words, then
            // UTF-16LE code units.
            if (off + 2 > chunk_size) throw Error(ErrorCode::malformed_manifest, "string length truncated");
            std::uint32_t len = read_u16(chunk, off);
            off += 2;
            if (len & 0x8000u) {
                if (off + 2 > chunk_size) throw Error(ErrorCode::malformed_manifest, "string length truncated");
                len = ((len & 0x7FFFu) << 16) | read_u16(chunk, off);
                off += 2;
            }
            if (off + 2ull * len > chunk_size) {
                throw Error(ErrorCode::malformed_manifest, "string data out of range");
            }
            for (std::uint32_t u = 0; u < len; ++u) {
                std::uint32_t cp = read_u16(chunk, off + 2ull * u);
                if (cp >= 0xD800 && cp < 0xDC00 && u + 1 < len) {
                    const std::uint32_t lo = read_u16(chunk, off + 2ull * (u + 1));
                    if (lo >= 0xDC00 && lo < 0xE000) {
                        cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
                        ++u;
                    }
                }
                append_utf8_cp(cp, s);
            }
        }
        pool.strings_.push_back(std::move(s));
    }
    return pool;
}

// Walks the chunk stream of a binary manifest and collects uses-permission
// android:name values. Throws Error(malformed_manifest) on structural damage.
std::set<std::string> parse_binary_manifest(std::span<const std::uint8_t> d) {
    if (d.size() < 8) throw Error(ErrorCode::malformed_manifest, "document truncated");
    const std::uint32_t doc_size = read_u32(d, 4);
    const std::size_t limit = std::min<std::size_t>(doc_size, d.size());

    std::optional<StringPool> pool;
    std::set<std::string> out;

    std::size_t pos = 8;
    while (pos + 8 <= limit) {
        const std::uint16_t type = read_u16(d, pos);
        const std::uint16_t header_size = read_u16(d, pos + 2);
        const std::uint32_t size = read_u32(d, pos + 4);
        if (header_size < 8 || size < header_size || pos + size > limit) {
            throw Error(ErrorCode::malformed_manifest, "chunk header inconsistent");
        }
        if (type == kResStringPoolType && !pool) {
            pool = StringPool::parse(d.subspan(pos, size));
        } else if (type == kResXmlStartElementType) {
            if (!pool) throw Error(ErrorCode::malformed_manifest, "element before string pool");
            // Node header (16 bytes: chunk header + lineNumber + comment),
            // then ns u4, name u4, attributeStart u2, attributeSize u2,
            // attributeCount u2.
            if (size < 16 + 14) throw Error(ErrorCode::malformed_manifest, "element chunk truncated");
            const std::size_t ext = pos + 16;
            const std::uint32_t name_idx = read_u32(d, ext + 4);
            const std::uint16_t attr_start = read_u16(d, ext + 8);
            const std::uint16_t attr_size = read_u16(d, ext + 10);
            const std::uint16_t attr_count = read_u16(d, ext + 12);

            const std::string* elem = pool->get(name_idx);
            if (elem && *elem == "uses-permission") {
                if (attr_size < 20 ||
                    attr_start + static_cast<std::size_t>(attr_size) * attr_count > size - 16) {
                    throw Error(ErrorCode::malformed_manifest, "attribute block inconsistent");
                }
                for (std::uint16_t a = 0; a < attr_count; ++a) {
                    const std::size_t at = ext + attr_start + static_cast<std::size_t>(attr_size) * a;
                    const std::uint32_t attr_name_idx = read_u32(d, at + 4);
                    const std::uint32_t raw_value = read_u32(d, at + 8);
                    const std::uint8_t data_type = d[at + 15];
                    const std::uint32_t typed_data = read_u32(d, at + 16);

                    const std::string* attr_name = pool->get(attr_name_idx);
                    if (!attr_name || *attr_name != "name") continue;
                    const std::string* value = nullptr;
                    if (raw_value != kNoEntry) {
                        value = pool->get(raw_value);
                    } else if (data_type == kTypeString) {
                        value = pool->get(typed_data);
                    }
                    if (value && !value->empty()) out.insert(strip_permission_prefix(*value));
                }
            }
        }
        pos += size;
    }
    return out;
}

// Minimal scanner for plain text manifests: finds <uses-permission ...>
// elements and their name / android:name attribute.
std::set<std::string> parse_text_manifest(std::span<const std::uint8_t> d) {
    const std::string_view text(reinterpret_cast<const char*>(d.data()), d.size());
    std::set<std::string> out;

    std::size_t pos = 0;
    while ((pos = text.find('<', pos)) != std::string_view::npos) {
        ++pos;
        if (pos >= text.size()) break;
        if (text[pos] == '?' || text[pos] == '!' || text[pos] == '/') continue;

        const std::size_t close = text.find('>', pos);
        if (close == std::string_view::npos) {
            throw Error(ErrorCode::malformed_manifest, "unterminated element");
        }
        std::string_view tag = text.substr(pos, close - pos);
        // Element name runs to the first whitespace or slash.
        std::size_t name_end = tag.find_first_of(" \t\r\n/");
        const std::string_view elem = tag.substr(0, name_end);
        if (elem == "uses-permission") {
            // key="value" pairs, double or single quoted.
            std::size_t p = (name_end == std::string_view::npos) ? tag.size() : name_end;
            while (p < tag.size()) {
                while (p < tag.size() && (std::isspace(static_cast<unsigned char>(tag[p])) || tag[p] == '/')) ++p;
                const std::size_t eq = tag.find('=', p);
                if (eq == std::string_view::npos) break;
                std::string_view key = tag.substr(p, eq - p);
                while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.remove_suffix(1);
                std::size_t v = eq + 1;
                while (v < tag.size() && std::isspace(static_cast<unsigned char>(tag[v]))) ++v;
                if (v >= tag.size() || (tag[v] != '"' && tag[v] != '\'')) {
                    throw Error(ErrorCode::malformed_manifest, "unquoted attribute value");
                }
                const char quote = tag[v];
                const std::size_t vend = tag.find(quote, v + 1);
                if (vend == std::string_view::npos) {
                    throw Error(ErrorCode::malformed_manifest, "unterminated attribute value");
                }
                const std::string_view value = tag.substr(v + 1, vend - v - 1);
                // Match the local attribute name regardless of namespace prefix.
                const std::size_t colon = key.rfind(':');
                const std::string_view local = (colon == std::string_view::npos) ? key : key.substr(colon + 1);
                if (local == "name" && !value.empty()) {
                    out.insert(strip_permission_prefix(std::string(value)));
                }
                p = vend + 1;
            }
        }
        pos = close + 1;
    }
    return out;
}

bool is_permission_char(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }

void scan_tokens(std::string_view text, std::set<std::string>& out) {
    static constexpr std::string_view kPrefix = "android.permission.";
    std::size_t pos = 0;
    while ((pos = text.find(kPrefix, pos)) != std::string_view::npos) {
        std::size_t end = pos + kPrefix.size();
        while (end < text.size() && is_permission_char(text[end])) ++end;
        if (end > pos + kPrefix.size()) {
            out.insert(std::string(text.substr(pos + kPrefix.size(), end - pos - kPrefix.size())));
        }
        pos = end;
    }
}

// Last-resort scan: permission tokens in the raw bytes, plus in the low bytes
// of UTF-16LE runs (how they appear inside an intact binary string pool).
std::set<std::string> fallback_scan(std::span<const std::uint8_t> d) {
    std::set<std::string> out;
    scan_tokens(std::string_view(reinterpret_cast<const char*>(d.data()), d.size()), out);

    std::string low;
    low.reserve(d.size() / 2);
    for (std::size_t i = 0; i + 1 < d.size(); i += 2) {
        if (d[i + 1] == 0 && d[i] != 0) {
            low.push_back(static_cast<char>(d[i]));
        } else {
            low.push_back('\n');  // break runs so tokens cannot jump gaps
        }
    }
    scan_tokens(low, out);
    return out;
}

}  // namespace

std::string strip_permission_prefix(const std::string& name) {
    static constexpr std::string_view kPrefix = "android.permission.";
    if (name.size() > kPrefix.size() && name.compare(0, kPrefix.size(), kPrefix) == 0) {
        return name.substr(kPrefix.size());
    }
    return name;
}

PermissionExtraction parse_manifest(std::span<const std::uint8_t> payload, DiagnosticList& diags) {
    PermissionExtraction result;
    const bool binary = payload.size() >= 8 && read_u16(payload, 0) == kResXmlType;
    try {
        result.permissions = binary ? parse_binary_manifest(payload) : parse_text_manifest(payload);
        return result;
    } catch (const Error& e) {
        diags.push_back({e.code(), "AndroidManifest.xml", e.what()});
    }
    result.fallback_used = true;
    result.permissions = fallback_scan(payload);
    return result;
}

PermissionExtraction extract_manifest_permissions(const ApkPackage& pkg, DiagnosticList* diags) {
    DiagnosticList local;
    DiagnosticList& sink = diags ? *diags : local;

    const PackageEntry* manifest = pkg.find("AndroidManifest.xml");
    if (!manifest) {
        sink.push_back({ErrorCode::no_manifest, pkg.source_path, "no AndroidManifest.xml entry"});
        return {};
    }
    return parse_manifest(std::span<const std::uint8_t>(manifest->payload), sink);
}

}  // namespace apkscreen
