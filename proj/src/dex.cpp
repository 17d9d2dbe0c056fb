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

#include "apkscreen/dex.hpp"

namespace apkscreen {

namespace {

constexpr std::size_t kHeaderSize = 0x70;
constexpr std::size_t kStringIdsSizeOff = 0x38;
constexpr std::size_t kStringIdsOffOff = 0x3c;

std::uint32_t read_u32(std::span<const std::uint8_t> d, std::size_t off) {
    return static_cast<std::uint32_t>(d[off]) | (static_cast<std::uint32_t>(d[off + 1]) << 8) |
           (static_cast<std::uint32_t>(d[off + 2]) << 16) |
           (static_cast<std::uint32_t>(d[off + 3]) << 24);
}

// uleb128, at most 5 bytes. Returns false on truncation/overlong input.
bool read_uleb128(std::span<const std::uint8_t> d, std::size_t& pos, std::uint32_t& value) {
    value = 0;
    for (int shift = 0; shift < 35; shift += 7) {
        if (pos >= d.size()) return false;
        const std::uint8_t byte = d[pos++];
        value |= static_cast<std::uint32_t>(byte & 0x7f) << shift;
        if ((byte & 0x80) == 0) return true;
    }
    return false;
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

}  // namespace

bool looks_like_dex(std::span<const std::uint8_t> payload) {
    if (payload.size() < 8) return false;
    if (payload[0] != 'd' || payload[1] != 'e' || payload[2] != 'x' || payload[3] != '\n') {
        return false;
    }
    if (payload[7] != 0) return false;
    const char a = static_cast<char>(payload[4]);
    const char b = static_cast<char>(payload[5]);
    const char c = static_cast<char>(payload[6]);
    return a == '0' && b == '3' && (c >= '5' && c <= '8');
}

bool decode_mutf8(std::span<const std::uint8_t> bytes, std::string& out) {
    out.clear();
    out.reserve(bytes.size());
    std::size_t i = 0;
    std::uint32_t pending_high = 0;  // pending high surrogate, 0 = none

    while (i < bytes.size()) {
        const std::uint8_t b0 = bytes[i];
        std::uint32_t cp;
        if ((b0 & 0x80) == 0) {
            if (b0 == 0) return false;  // NUL is always encoded as C0 80
            cp = b0;
            i += 1;
        } else if ((b0 & 0xe0) == 0xc0) {
            if (i + 1 >= bytes.size() || (bytes[i + 1] & 0xc0) != 0x80) return false;
            cp = (static_cast<std::uint32_t>(b0 & 0x1f) << 6) | (bytes[i + 1] & 0x3f);
            i += 2;
        } else if ((b0 & 0xf0) == 0xe0) {
            if (i + 2 >= bytes.size() || (bytes[i + 1] & 0xc0) != 0x80 ||
                (bytes[i + 2] & 0xc0) != 0x80) {
                return false;
            }
            cp = (static_cast<std::uint32_t>(b0 & 0x0f) << 12) |
                 (static_cast<std::uint32_t>(bytes[i + 1] & 0x3f) << 6) | (bytes[i + 2] & 0x3f);
            i += 3;
        } else {
            return false;  // 4-byte forms do not occur in MUTF-8
        }

        if (pending_high != 0) {
            if (cp >= 0xdc00 && cp <= 0xdfff) {
                append_utf8(out, 0x10000 + ((pending_high - 0xd800) << 10) + (cp - 0xdc00));
                pending_high = 0;
                continue;
            }
            return false;  // high surrogate not followed by a low one
        }
        if (cp >= 0xd800 && cp <= 0xdbff) {
            pending_high = cp;
            continue;
        }
        if (cp >= 0xdc00 && cp <= 0xdfff) return false;  // stray low surrogate
        append_utf8(out, cp);
    }
    return pending_high == 0;
}

std::set<std::string> dex_string_table(std::span<const std::uint8_t> d,
                                       DiagnosticList& diags,
                                       const std::string& context) {
    if (d.size() < kHeaderSize) {
        throw Error(ErrorCode::malformed_dex, "payload smaller than a DEX header");
    }
    const std::uint32_t count = read_u32(d, kStringIdsSizeOff);
    const std::uint32_t table_off = read_u32(d, kStringIdsOffOff);
    if (count != 0) {
        const std::uint64_t table_end =
            static_cast<std::uint64_t>(table_off) + 4ull * count;
        if (table_off < kHeaderSize || table_end > d.size()) {
            throw Error(ErrorCode::malformed_dex, "string_ids table out of bounds");
        }
    }

    std::set<std::string> strings;
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint32_t data_off = read_u32(d, table_off + 4ull * i);
        if (data_off >= d.size()) {
            diags.push_back({ErrorCode::malformed_dex, context,
                             "string_data_off out of bounds at index " + std::to_string(i)});
            continue;
        }
        std::size_t pos = data_off;
        std::uint32_t utf16_len = 0;
        if (!read_uleb128(d, pos, utf16_len)) {
            diags.push_back({ErrorCode::malformed_dex, context,
                             "bad string length at index " + std::to_string(i)});
            continue;
        }
        // data runs to the NUL terminator; utf16_len is advisory only
        std::size_t end = pos;
        while (end < d.size() && d[end] != 0) ++end;
        if (end == d.size()) {
            diags.push_back({ErrorCode::malformed_dex, context,
                             "unterminated string at index " + std::to_string(i)});
            continue;
        }
        std::string decoded;
        if (!decode_mutf8(d.subspan(pos, end - pos), decoded)) {
            diags.push_back({ErrorCode::malformed_dex, context,
                             "invalid MUTF-8 at index " + std::to_string(i)});
            continue;
        }
        strings.insert(std::move(decoded));
    }
    return strings;
}

std::set<std::string> extract_dex_strings(const ApkPackage& pkg, DiagnosticList* diags) {
    DiagnosticList local;
    DiagnosticList& sink = diags ? *diags : local;
    std::set<std::string> all;
    for (const auto& entry : pkg.entries) {
        if (!looks_like_dex(entry.payload)) continue;
        try {
            auto strings = dex_string_table(entry.payload, sink, entry.path);
            all.merge(strings);
        } catch (const Error& e) {
            sink.push_back({ErrorCode::malformed_dex, entry.path, e.what()});
        }
    }
    return all;
}

}  // namespace apkscreen
