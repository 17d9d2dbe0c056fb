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

#include "fixtures.hpp"

#include <sys/wait.h>
#include <zlib.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef APKSCREEN_BIN
#error "APKSCREEN_BIN must point at the CLI binary"
#endif
#ifndef APKSCREEN_SOURCE_DIR
#error "APKSCREEN_SOURCE_DIR must point at the repository root"
#endif

namespace apkscreen::testsupport {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

void patch_u32(std::vector<std::uint8_t>& out, std::size_t off, std::uint32_t v) {
    out[off] = static_cast<std::uint8_t>(v & 0xff);
    out[off + 1] = static_cast<std::uint8_t>((v >> 8) & 0xff);
    out[off + 2] = static_cast<std::uint8_t>((v >> 16) & 0xff);
    out[off + 3] = static_cast<std::uint8_t>((v >> 24) & 0xff);
}

std::vector<std::uint8_t> deflate_raw(const std::vector<std::uint8_t>& in) {
    z_stream zs;
    std::memset(&zs, 0, sizeof(zs));
    if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
        throw std::runtime_error("deflateInit2 failed");
    }
    std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(in.size())));
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    if (deflate(&zs, Z_FINISH) != Z_STREAM_END) {
        deflateEnd(&zs);
        throw std::runtime_error("deflate failed");
    }
    out.resize(zs.total_out);
    deflateEnd(&zs);
    return out;
}

// Decodes one UTF-8 code point; test inputs are trusted to be valid UTF-8.
std::uint32_t next_code_point(const std::string& s, std::size_t& i) {
    const auto b0 = static_cast<std::uint8_t>(s[i]);
    if (b0 < 0x80) {
        i += 1;
        return b0;
    }
    if ((b0 & 0xe0) == 0xc0) {
        const std::uint32_t cp = ((b0 & 0x1fu) << 6) | (static_cast<std::uint8_t>(s[i + 1]) & 0x3fu);
        i += 2;
        return cp;
    }
    if ((b0 & 0xf0) == 0xe0) {
        const std::uint32_t cp = ((b0 & 0x0fu) << 12) |
                                 ((static_cast<std::uint8_t>(s[i + 1]) & 0x3fu) << 6) |
                                 (static_cast<std::uint8_t>(s[i + 2]) & 0x3fu);
        i += 3;
        return cp;
    }
    const std::uint32_t cp = ((b0 & 0x07u) << 18) |
                             ((static_cast<std::uint8_t>(s[i + 1]) & 0x3fu) << 12) |
                             ((static_cast<std::uint8_t>(s[i + 2]) & 0x3fu) << 6) |
                             (static_cast<std::uint8_t>(s[i + 3]) & 0x3fu);
    i += 4;
    return cp;
}

void append_mutf8(std::vector<std::uint8_t>& out, std::uint32_t cp) {
    if (cp != 0 && cp < 0x80) {
        out.push_back(static_cast<std::uint8_t>(cp));
    } else if (cp < 0x800) {  // includes the two-byte form of NUL
        out.push_back(static_cast<std::uint8_t>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<std::uint8_t>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<std::uint8_t>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<std::uint8_t>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<std::uint8_t>(0x80 | (cp & 0x3f)));
    } else {  // surrogate pair, each half encoded as three bytes
        const std::uint32_t high = 0xd800 + ((cp - 0x10000) >> 10);
        const std::uint32_t low = 0xdc00 + ((cp - 0x10000) & 0x3ff);
        append_mutf8(out, high);
        append_mutf8(out, low);
    }
}

void append_uleb128(std::vector<std::uint8_t>& out, std::uint32_t v) {
    do {
        std::uint8_t byte = v & 0x7f;
        v >>= 7;
        if (v != 0) byte |= 0x80;
        out.push_back(byte);
    } while (v != 0);
}

std::vector<std::uint16_t> to_utf16(const std::string& s) {
    std::vector<std::uint16_t> units;
    std::size_t i = 0;
    while (i < s.size()) {
        const std::uint32_t cp = next_code_point(s, i);
        if (cp < 0x10000) {
            units.push_back(static_cast<std::uint16_t>(cp));
        } else {
            units.push_back(static_cast<std::uint16_t>(0xd800 + ((cp - 0x10000) >> 10)));
            units.push_back(static_cast<std::uint16_t>(0xdc00 + ((cp - 0x10000) & 0x3ff)));
        }
    }
    return units;
}

std::vector<std::uint8_t> build_string_pool(const std::vector<std::string>& strings,
                                            bool utf8_pool) {
    std::vector<std::uint8_t> data;  // string bytes, offsets relative to stringsStart
    std::vector<std::uint32_t> offsets;
    for (const std::string& s : strings) {
        offsets.push_back(static_cast<std::uint32_t>(data.size()));
        if (utf8_pool) {
            const std::size_t utf16_len = to_utf16(s).size();
            if (utf16_len >= 0x80 || s.size() >= 0x80) {
                throw std::runtime_error("pool fixture strings must stay below 128 units");
            }
            data.push_back(static_cast<std::uint8_t>(utf16_len));
            data.push_back(static_cast<std::uint8_t>(s.size()));
            data.insert(data.end(), s.begin(), s.end());
            data.push_back(0);
        } else {
            const std::vector<std::uint16_t> units = to_utf16(s);
            if (units.size() >= 0x8000) throw std::runtime_error("fixture string too long");
            std::vector<std::uint8_t>& d = data;
            put_u16(d, static_cast<std::uint16_t>(units.size()));
            for (std::uint16_t u : units) put_u16(d, u);
            put_u16(d, 0);
        }
    }
    while (data.size() % 4 != 0) data.push_back(0);

    const std::uint32_t header_size = 0x1c;
    const auto count = static_cast<std::uint32_t>(strings.size());
    const std::uint32_t strings_start = header_size + 4 * count;
    const std::uint32_t chunk_size = strings_start + static_cast<std::uint32_t>(data.size());

    std::vector<std::uint8_t> chunk;
    put_u16(chunk, 0x0001);  // RES_STRING_POOL_TYPE
    put_u16(chunk, static_cast<std::uint16_t>(header_size));
    put_u32(chunk, chunk_size);
    put_u32(chunk, count);
    put_u32(chunk, 0);  // styleCount
    put_u32(chunk, utf8_pool ? 0x100 : 0);
    put_u32(chunk, strings_start);
    put_u32(chunk, 0);  // stylesStart
    for (std::uint32_t off : offsets) put_u32(chunk, off);
    chunk.insert(chunk.end(), data.begin(), data.end());
    return chunk;
}

void append_start_element(std::vector<std::uint8_t>& out, std::uint32_t name_idx,
                          const std::vector<std::pair<std::uint32_t, std::uint32_t>>& attrs,
                          bool use_raw_value) {
    const std::uint32_t size = 16 + 20 + 20 * static_cast<std::uint32_t>(attrs.size());
    put_u16(out, 0x0102);  // RES_XML_START_ELEMENT_TYPE
    put_u16(out, 16);
    put_u32(out, size);
    put_u32(out, 1);           // line number
    put_u32(out, 0xffffffff);  // comment
    put_u32(out, 0xffffffff);  // element namespace
    put_u32(out, name_idx);
    put_u16(out, 20);  // attributeStart
    put_u16(out, 20);  // attributeSize
    put_u16(out, static_cast<std::uint16_t>(attrs.size()));
    put_u16(out, 0);  // idIndex
    put_u16(out, 0);  // classIndex
    put_u16(out, 0);  // styleIndex
    for (const auto& [attr_name_idx, value_idx] : attrs) {
        put_u32(out, 0xffffffff);  // attribute namespace
        put_u32(out, attr_name_idx);
        put_u32(out, use_raw_value ? value_idx : 0xffffffff);
        put_u16(out, 8);  // Res_value size
        out.push_back(0);  // res0
        out.push_back(0x03);  // TYPE_STRING
        put_u32(out, value_idx);
    }
}

void append_end_element(std::vector<std::uint8_t>& out, std::uint32_t name_idx) {
    put_u16(out, 0x0103);  // RES_XML_END_ELEMENT_TYPE
    put_u16(out, 16);
    put_u32(out, 24);
    put_u32(out, 1);
    put_u32(out, 0xffffffff);
    put_u32(out, 0xffffffff);
    put_u32(out, name_idx);
}

}  // namespace

std::vector<std::uint8_t> build_zip(const std::vector<ZipEntrySpec>& entries) {
    std::vector<std::uint8_t> out;
    struct Placed {
        const ZipEntrySpec* spec;
        std::vector<std::uint8_t> stored;
        std::uint32_t crc;
        std::uint32_t offset;
    };
    std::vector<Placed> placed;

    for (const ZipEntrySpec& e : entries) {
        Placed p;
        p.spec = &e;
        p.crc = static_cast<std::uint32_t>(
            ::crc32(0L, e.data.data(), static_cast<uInt>(e.data.size())));
        p.stored = e.deflate ? deflate_raw(e.data) : e.data;
        p.offset = static_cast<std::uint32_t>(out.size());

        put_u32(out, 0x04034b50);  // local header signature
        put_u16(out, 20);          // version needed
        put_u16(out, 0);           // flags
        put_u16(out, e.deflate ? 8 : 0);
        put_u16(out, 0);       // mod time
        put_u16(out, 0x21);    // mod date
        put_u32(out, p.crc);
        put_u32(out, static_cast<std::uint32_t>(p.stored.size()));
        put_u32(out, static_cast<std::uint32_t>(e.data.size()));
        put_u16(out, static_cast<std::uint16_t>(e.name.size()));
        put_u16(out, 0);  // extra length
        out.insert(out.end(), e.name.begin(), e.name.end());
        out.insert(out.end(), p.stored.begin(), p.stored.end());
        placed.push_back(std::move(p));
    }

    const auto central_offset = static_cast<std::uint32_t>(out.size());
    for (const Placed& p : placed) {
        const ZipEntrySpec& e = *p.spec;
        put_u32(out, 0x02014b50);  // central directory signature
        put_u16(out, 20);          // version made by
        put_u16(out, 20);          // version needed
        put_u16(out, 0);
        put_u16(out, e.deflate ? 8 : 0);
        put_u16(out, 0);
        put_u16(out, 0x21);
        put_u32(out, p.crc);
        put_u32(out, static_cast<std::uint32_t>(p.stored.size()));
        put_u32(out, static_cast<std::uint32_t>(e.data.size()));
        put_u16(out, static_cast<std::uint16_t>(e.name.size()));
        put_u16(out, 0);  // extra
        put_u16(out, 0);  // comment
        put_u16(out, 0);  // disk number
        put_u16(out, 0);  // internal attrs
        put_u32(out, 0);  // external attrs
        put_u32(out, p.offset);
        out.insert(out.end(), e.name.begin(), e.name.end());
    }
    const auto central_size = static_cast<std::uint32_t>(out.size()) - central_offset;

    put_u32(out, 0x06054b50);  // end of central directory
    put_u16(out, 0);
    put_u16(out, 0);
    put_u16(out, static_cast<std::uint16_t>(placed.size()));
    put_u16(out, static_cast<std::uint16_t>(placed.size()));
    put_u32(out, central_size);
    put_u32(out, central_offset);
    put_u16(out, 0);  // comment length
    return out;
}

std::vector<std::uint8_t> build_dex(const std::vector<std::string>& strings) {
    constexpr std::size_t kHeaderSize = 0x70;
    const auto count = static_cast<std::uint32_t>(strings.size());
    const std::uint32_t table_off = kHeaderSize;
    const std::uint32_t data_off = table_off + 4 * count;

    // string_data items laid out behind the id table
    std::vector<std::uint8_t> data;
    std::vector<std::uint32_t> item_offsets;
    for (const std::string& s : strings) {
        item_offsets.push_back(data_off + static_cast<std::uint32_t>(data.size()));
        append_uleb128(data, static_cast<std::uint32_t>(to_utf16(s).size()));
        std::size_t i = 0;
        while (i < s.size()) append_mutf8(data, next_code_point(s, i));
        data.push_back(0);
    }

    std::vector<std::uint8_t> out(kHeaderSize, 0);
    const char magic[8] = {'d', 'e', 'x', '\n', '0', '3', '5', '\0'};
    std::memcpy(out.data(), magic, 8);
    for (std::uint32_t off : item_offsets) put_u32(out, off);  // id table at 0x70
    out.insert(out.end(), data.begin(), data.end());

    patch_u32(out, 0x20, static_cast<std::uint32_t>(out.size()));  // file_size
    patch_u32(out, 0x24, kHeaderSize);                             // header_size
    patch_u32(out, 0x28, 0x12345678);                              // endian_tag
    patch_u32(out, 0x38, count);                                   // string_ids_size
    patch_u32(out, 0x3c, count == 0 ? 0 : table_off);              // string_ids_off
    // signature stays zero; checksum covers everything after itself
    const auto sum = static_cast<std::uint32_t>(
        ::adler32(1L, out.data() + 12, static_cast<uInt>(out.size() - 12)));
    patch_u32(out, 0x08, sum);
    return out;
}

std::vector<std::uint8_t> build_binary_manifest(const std::vector<std::string>& permissions,
                                                bool utf8_pool) {
    std::vector<std::string> pool = {"manifest", "uses-permission", "name",
                                     "http://schemas.android.com/apk/res/android"};
    std::vector<std::uint32_t> perm_idx;
    for (const std::string& p : permissions) {
        perm_idx.push_back(static_cast<std::uint32_t>(pool.size()));
        pool.push_back(p);
    }

    std::vector<std::uint8_t> body = build_string_pool(pool, utf8_pool);
    append_start_element(body, 0, {}, true);  // <manifest>
    for (std::uint32_t idx : perm_idx) {
        // alternate rawValue vs typed-data reference so both paths get exercised
        append_start_element(body, 1, {{2, idx}}, idx % 2 == 0);
        append_end_element(body, 1);
    }
    append_end_element(body, 0);

    std::vector<std::uint8_t> out;
    put_u16(out, 0x0003);  // RES_XML_TYPE
    put_u16(out, 8);
    put_u32(out, 8 + static_cast<std::uint32_t>(body.size()));
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

std::vector<std::uint8_t> corrupt_element_chunk(std::vector<std::uint8_t> manifest) {
    // walk chunks from offset 8, find the first START_ELEMENT, wreck its header
    std::size_t pos = 8;
    while (pos + 8 <= manifest.size()) {
        const std::uint16_t type =
            static_cast<std::uint16_t>(manifest[pos] | (manifest[pos + 1] << 8));
        const std::uint32_t size = static_cast<std::uint32_t>(manifest[pos + 4]) |
                                   (static_cast<std::uint32_t>(manifest[pos + 5]) << 8) |
                                   (static_cast<std::uint32_t>(manifest[pos + 6]) << 16) |
                                   (static_cast<std::uint32_t>(manifest[pos + 7]) << 24);
        if (type == 0x0102) {
            manifest[pos + 2] = 4;  // headerSize below the legal minimum
            manifest[pos + 3] = 0;
            return manifest;
        }
        pos += size;
    }
    throw std::runtime_error("no element chunk to corrupt");
}

std::string build_text_manifest(const std::vector<std::string>& permissions) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
        << "<manifest xmlns:android=\"http://schemas.android.com/apk/res/android\"\n"
        << "          package=\"com.example.app\">\n";
    for (const std::string& p : permissions) {
        out << "  <uses-permission android:name=\"" << p << "\"/>\n";
    }
    out << "  <application android:label=\"app\"/>\n</manifest>\n";
    return out.str();
}

std::vector<std::uint8_t> build_apk(const std::vector<std::string>& dex_strings,
                                    const std::vector<std::string>& permissions,
                                    const std::vector<ZipEntrySpec>& extra, bool deflate,
                                    bool utf8_pool) {
    std::vector<ZipEntrySpec> entries;
    entries.push_back({"AndroidManifest.xml", build_binary_manifest(permissions, utf8_pool), deflate});
    entries.push_back({"classes.dex", build_dex(dex_strings), deflate});
    for (const ZipEntrySpec& e : extra) entries.push_back(e);
    return build_zip(entries);
}

TempDir::TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "apkscreen-XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (::mkdtemp(buf.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
    path_ = buf.data();
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

FeatureCatalog make_synthetic_catalog(int feature_count) {
    std::vector<Feature> features;
    for (int i = 0; i < feature_count; ++i) {
        features.push_back({"kw" + std::to_string(i), FeatureCategory::api});
    }
    FeatureCatalog catalog;
    catalog.version = catalog_version_of(features);
    catalog.features = std::move(features);
    return catalog;
}

SampleMatrix make_matrix(int feature_count,
                         const std::vector<std::pair<std::vector<std::uint8_t>, Label>>& rows) {
    SampleMatrix m;
    m.catalog = make_synthetic_catalog(feature_count);
    int i = 0;
    for (const auto& [bits, label] : rows) {
        LabelledSample s;
        s.vector.sample_id = "s" + std::to_string(i++);
        s.vector.bits = bits;
        s.label = label;
        m.samples.push_back(std::move(s));
    }
    return m;
}

Label DecisionListConcept::classify(const std::vector<std::uint8_t>& bits) const {
    for (std::size_t r = 0; r < literals.size(); ++r) {
        if (bits[static_cast<std::size_t>(literals[r].feature)] == literals[r].bit) {
            return rule_class[r];
        }
    }
    return default_class;
}

DecisionListConcept random_decision_list(Rng& rng, int feature_count) {
    std::vector<int> order(static_cast<std::size_t>(feature_count));
    for (int i = 0; i < feature_count; ++i) order[static_cast<std::size_t>(i)] = i;
    rng.shuffle(order);

    DecisionListConcept list;
    for (int r = 0; r < 3; ++r) {
        list.literals.push_back({order[static_cast<std::size_t>(r)],
                                 static_cast<std::uint8_t>(rng.below(2))});
    }
    // single alternation: a prefix of rules predicts one class, the rest (and
    // the default) the other — keeps the concept a short disjunction
    const Label a = rng.below(2) == 0 ? Label::suspicious : Label::benign;
    const Label b = a == Label::suspicious ? Label::benign : Label::suspicious;
    const std::size_t pivot = 1 + rng.below(2);
    for (std::size_t r = 0; r < 3; ++r) list.rule_class.push_back(r < pivot ? a : b);
    list.default_class = b;
    return list;
}

SampleMatrix decision_list_corpus(std::uint64_t seed, int feature_count, int n_samples,
                                  std::size_t min_class) {
    if (min_class * 2 > static_cast<std::size_t>(n_samples)) {
        throw std::logic_error("decision_list_corpus: min_class " + std::to_string(min_class) +
                               " is unsatisfiable for n = " + std::to_string(n_samples));
    }
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(seed + attempt * 1000003ull);
        const DecisionListConcept list = random_decision_list(rng, feature_count);

        std::vector<std::pair<std::vector<std::uint8_t>, Label>> rows;
        for (int i = 0; i < n_samples; ++i) {
            std::vector<std::uint8_t> bits(static_cast<std::size_t>(feature_count));
            for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
            rows.emplace_back(std::move(bits), Label::benign);
            rows.back().second = list.classify(rows.back().first);
        }
        SampleMatrix m = make_matrix(feature_count, rows);
        if (m.count(Label::suspicious) >= min_class && m.count(Label::benign) >= min_class) {
            return m;
        }
    }
}

MiniCorpus build_mini_corpus(const std::filesystem::path& dir, const std::string& catalog_path,
                             std::uint64_t seed, int n) {
    const FeatureCatalog catalog = load_catalog(catalog_path);
    auto require_feature = [&](const std::string& kw, FeatureCategory cat) {
        for (const Feature& f : catalog.features) {
            if (f.keyword == kw && f.category == cat) return;
        }
        throw std::logic_error("corpus keyword missing from catalog: " + kw);
    };
    auto require_decoy = [&](const std::string& s) {
        for (const Feature& f : catalog.features) {
            if (f.category != FeatureCategory::permission && s.find(f.keyword) != std::string::npos) {
                throw std::logic_error("decoy '" + s + "' hits catalog keyword '" + f.keyword + "'");
            }
        }
    };

    // discriminative pair planted only in suspicious samples
    const std::string marker_api = "getDeviceId";
    const std::string marker_perm = "SEND_SMS";
    require_feature(marker_api, FeatureCategory::api);
    require_feature(marker_perm, FeatureCategory::permission);

    const std::vector<std::string> noise_perms = {"INTERNET", "ACCESS_NETWORK_STATE", "VIBRATE",
                                                  "WAKE_LOCK", "READ_CONTACTS"};
    for (const std::string& p : noise_perms) require_feature(p, FeatureCategory::permission);
    const std::vector<std::string> noise_apis = {"getPackageManager", "bindService",
                                                 "registerReceiver"};
    for (const std::string& a : noise_apis) require_feature(a, FeatureCategory::api);
    require_feature("chmod", FeatureCategory::command);

    const std::vector<std::string> decoys = {"Lcom/example/app/MainActivity;", "onCreate",
                                             "(Landroid/os/Bundle;)V", "activity_main"};
    for (const std::string& d : decoys) require_decoy(d);

    MiniCorpus corpus;
    corpus.apk_dir = dir / "apks";
    corpus.labels_csv = dir / "labels.csv";
    std::filesystem::create_directories(corpus.apk_dir);

    Rng rng(seed);
    std::ostringstream labels;
    labels << "sample_id,label\n";
    for (int i = 0; i < n; ++i) {
        const bool suspicious = i % 2 == 0;
        std::vector<std::string> dex_strings = decoys;
        std::vector<std::string> perms;
        if (suspicious) {
            dex_strings.push_back(marker_api);
            perms.push_back("android.permission." + marker_perm);
        }
        for (const std::string& a : noise_apis) {
            if (rng.coin(0.4)) dex_strings.push_back(a);
        }
        for (const std::string& p : noise_perms) {
            if (rng.coin(0.5)) perms.push_back("android.permission." + p);
        }

        std::vector<ZipEntrySpec> extra;
        if (rng.coin(0.5)) {
            const std::string script = "#!/system/bin/sh\nchmod 755 /data/local/tmp/payload\n";
            extra.push_back({"assets/setup.txt",
                             std::vector<std::uint8_t>(script.begin(), script.end()), false});
        }

        const std::vector<std::uint8_t> apk =
            build_apk(dex_strings, perms, extra, /*deflate=*/i % 3 == 0, /*utf8_pool=*/i % 2 == 1);
        char name[32];
        std::snprintf(name, sizeof(name), "apk_%03d", i);
        write_file(corpus.apk_dir / (std::string(name) + ".apk"), apk);
        labels << name << ',' << (suspicious ? "suspicious" : "benign") << '\n';
        (suspicious ? corpus.suspicious_count : corpus.benign_count) += 1;
    }
    write_file(corpus.labels_csv, labels.str());
    return corpus;
}

std::string cli_binary() { return APKSCREEN_BIN; }

std::string default_catalog_path() {
    return std::string(APKSCREEN_SOURCE_DIR) + "/data/default_catalog.txt";
}

CliResult run_cli(const std::string& args) {
    TempDir capture;
    const std::string out_path = (capture.path() / "out.txt").string();
    const std::string err_path = (capture.path() / "err.txt").string();
    const std::string command =
        "\"" + cli_binary() + "\" " + args + " >\"" + out_path + "\" 2>\"" + err_path + "\"";
    const int status = std::system(command.c_str());

    CliResult result;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    if (status == -1) {
        result.exit_code = -1;
    } else {
        result.exit_code = WEXITSTATUS(status);
    }
    return result;
}

}  // namespace apkscreen::testsupport
