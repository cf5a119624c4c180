#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <zlib.h>

#include "sfxs/bytes.hpp"
#include "sfxs/error.hpp"

namespace sfxs::archive {

enum class Compression { stored, deflated };

/// One named byte entry. Paths use forward slashes and are case-preserved;
/// order inside a bundle is semantically significant.
struct Entry {
    std::string path;
    Bytes content;
    Compression compression = Compression::deflated;

    bool operator==(const Entry&) const = default;
};

struct Bundle {
    std::vector<Entry> entries;

    bool operator==(const Bundle&) const = default;

    const Entry* find(std::string_view path) const {
        for (const Entry& e : entries)
            if (e.path == path) return &e;
        return nullptr;
    }
};

enum class EntryClass { manifest, signature_file, signature_block, resource };

inline bool valid_entry_path(std::string_view path) {
    if (path.empty() || path.size() > 4096) return false;
    if (path.front() == '/') return false;
    if (path.find('\\') != std::string_view::npos) return false;
    if (path.find('\0') != std::string_view::npos) return false;
    std::size_t start = 0;
    while (start <= path.size()) {
        std::size_t end = path.find('/', start);
        if (end == std::string_view::npos) end = path.size();
        std::string_view seg = path.substr(start, end - start);
        if (seg.empty() || seg == "." || seg == "..") return false;
        if (end == path.size()) break;
        start = end + 1;
    }
    return true;
}

namespace detail {

inline std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

inline bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::toupper(x) == std::toupper(y);
           });
}

} // namespace detail

/// Pure classification of a path into its metadata role. Matching is
/// case-insensitive; only single-segment names directly under META-INF/
/// count as metadata.
inline EntryClass classify(std::string_view path) {
    std::string up = detail::upper(path);
    if (up == "META-INF/MANIFEST.MF") return EntryClass::manifest;
    if (up.starts_with("META-INF/")) {
        std::string_view rest = std::string_view(up).substr(9);
        if (!rest.empty() && rest.find('/') == std::string_view::npos) {
            if (rest.ends_with(".SF")) return EntryClass::signature_file;
            if (rest.ends_with(".RSA") || rest.ends_with(".DSA")) return EntryClass::signature_block;
        }
    }
    return EntryClass::resource;
}

/// Stem of a metadata file name ("META-INF/PIERREP.SF" -> "PIERREP"),
/// uppercased for case-insensitive pairing.
inline std::string metadata_stem(std::string_view path) {
    std::string up = detail::upper(path);
    std::size_t slash = up.rfind('/');
    std::string name = slash == std::string::npos ? up : up.substr(slash + 1);
    std::size_t dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

enum class OrderViolation { none, no_manifest, bad_order };

struct OrderReport {
    bool ok = false;
    std::size_t violation_index = 0;
    OrderViolation reason = OrderViolation::none;
    std::string detail;
};

/// Checks the required archive layout: the manifest first, then one or
/// more (.SF, block) pairs with matching names, then only resources.
inline OrderReport check_order(const Bundle& bundle) {
    auto fail = [](std::size_t idx, OrderViolation why, std::string detail) {
        return OrderReport{false, idx, why, std::move(detail)};
    };
    bool has_manifest = std::any_of(bundle.entries.begin(), bundle.entries.end(), [](const Entry& e) {
        return classify(e.path) == EntryClass::manifest;
    });
    if (!has_manifest) return fail(0, OrderViolation::no_manifest, "bundle has no manifest");
    if (classify(bundle.entries[0].path) != EntryClass::manifest)
        return fail(0, OrderViolation::bad_order, "manifest is not the first entry");

    std::size_t i = 1;
    std::size_t pairs = 0;
    while (i < bundle.entries.size() &&
           classify(bundle.entries[i].path) == EntryClass::signature_file) {
        if (i + 1 >= bundle.entries.size() ||
            classify(bundle.entries[i + 1].path) != EntryClass::signature_block) {
            return fail(i + 1, OrderViolation::bad_order,
                        "signature file is not followed by its signature block");
        }
        if (metadata_stem(bundle.entries[i].path) != metadata_stem(bundle.entries[i + 1].path)) {
            return fail(i + 1, OrderViolation::bad_order,
                        "signature block name does not match its signature file");
        }
        i += 2;
        ++pairs;
    }
    if (pairs == 0) return fail(1, OrderViolation::bad_order, "no signature file after manifest");
    for (; i < bundle.entries.size(); ++i) {
        if (classify(bundle.entries[i].path) != EntryClass::resource)
            return fail(i, OrderViolation::bad_order, "metadata entry after the resource section");
    }
    return OrderReport{true, 0, OrderViolation::none, ""};
}

// ---- ZIP container subset: methods 0 (stored) and 8 (deflate), CRC-32
// verified on read, local-header order authoritative ----

namespace detail {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;
constexpr std::uint32_t kZip64EndLocatorSig = 0x07064b50;
constexpr std::uint32_t kDescriptorSig = 0x08074b50;
// fixed DOS timestamp 1980-01-01T00:00:00 for deterministic output
constexpr std::uint16_t kDosTime = 0x0000;
constexpr std::uint16_t kDosDate = 0x0021;

struct ByteReader {
    ByteView data;
    std::size_t pos = 0;

    std::size_t remaining() const { return data.size() - pos; }

    void need(std::size_t n) const {
        if (n > remaining()) raise(Errc::malformed_archive, "truncated container");
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(data[pos] | (data[pos + 1] << 8));
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = static_cast<std::uint32_t>(data[pos]) |
                          (static_cast<std::uint32_t>(data[pos + 1]) << 8) |
                          (static_cast<std::uint32_t>(data[pos + 2]) << 16) |
                          (static_cast<std::uint32_t>(data[pos + 3]) << 24);
        pos += 4;
        return v;
    }
    ByteView take(std::size_t n) {
        need(n);
        ByteView v = data.subspan(pos, n);
        pos += n;
        return v;
    }
};

inline void put16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put32(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

inline std::uint32_t crc_of(ByteView data) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const ::Bytef*>(data.data()), static_cast<uInt>(data.size())));
}

inline Bytes deflate_raw(ByteView data) {
    z_stream zs{};
    if (deflateInit2(&zs, 6, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        raise(Errc::io_failure, "deflateInit2 failed");
    Bytes out(deflateBound(&zs, static_cast<uLong>(data.size())), 0);
    zs.next_in = const_cast<::Bytef*>(reinterpret_cast<const ::Bytef*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<::Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&zs, Z_FINISH);
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) raise(Errc::io_failure, "deflate failed");
    out.resize(zs.total_out);
    return out;
}

inline Bytes inflate_raw(ByteView data, std::size_t expected_size) {
    if (expected_size > (1u << 31))
        raise(Errc::unsupported_feature, "entry larger than the supported bound");
    Bytes out(expected_size, 0);
    z_stream zs{};
    if (inflateInit2(&zs, -15) != Z_OK) raise(Errc::io_failure, "inflateInit2 failed");
    zs.next_in = const_cast<::Bytef*>(reinterpret_cast<const ::Bytef*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<::Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    bool consumed_all = zs.avail_in == 0;
    uLong produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || !consumed_all || produced != expected_size)
        raise(Errc::malformed_archive, "deflated data does not match declared size");
    return out;
}

struct CentralRecord {
    std::string name;
    std::uint16_t flags = 0;
    std::uint16_t method = 0;
    std::uint32_t crc = 0;
    std::uint32_t compressed_size = 0;
    std::uint32_t uncompressed_size = 0;
    std::uint32_t local_offset = 0;
};

} // namespace detail

/// Parses a ZIP container. Entry order follows the local headers, which
/// must agree with the central directory listing; any disagreement, CRC
/// failure, or duplicate path is rejected.
inline Bundle read(ByteView raw) {
    using namespace detail;
    if (raw.size() < 22) raise(Errc::malformed_archive, "too small to be a ZIP container");

    // locate the end-of-central-directory record (scan back over comment)
    std::size_t scan_limit = raw.size() >= 22 + 0xffff ? raw.size() - 22 - 0xffff : 0;
    std::size_t eocd_pos = std::string::npos;
    for (std::size_t i = raw.size() - 22 + 1; i-- > scan_limit;) {
        if (raw[i] == 0x50 && raw[i + 1] == 0x4b && raw[i + 2] == 0x05 && raw[i + 3] == 0x06) {
            ByteReader probe{raw, i + 20};
            std::uint16_t comment_len = probe.u16();
            if (i + 22 + comment_len == raw.size()) {
                eocd_pos = i;
                break;
            }
        }
    }
    if (eocd_pos == std::string::npos)
        raise(Errc::malformed_archive, "missing end-of-central-directory record");

    ByteReader end{raw, eocd_pos + 4};
    std::uint16_t disk = end.u16();
    std::uint16_t cd_disk = end.u16();
    std::uint16_t count_this_disk = end.u16();
    std::uint16_t count_total = end.u16();
    std::uint32_t cd_size = end.u32();
    std::uint32_t cd_offset = end.u32();
    if (disk != 0 || cd_disk != 0 || count_this_disk != count_total)
        raise(Errc::unsupported_feature, "multi-disk archives are not supported");
    if (count_total == 0xffff || cd_size == 0xffffffff || cd_offset == 0xffffffff)
        raise(Errc::unsupported_feature, "zip64 is not supported");
    if (eocd_pos >= 20) {
        ByteReader loc{raw, eocd_pos - 20};
        if (loc.u32() == kZip64EndLocatorSig) raise(Errc::unsupported_feature, "zip64 is not supported");
    }
    if (static_cast<std::uint64_t>(cd_offset) + cd_size != eocd_pos)
        raise(Errc::malformed_archive, "central directory does not abut the end record");

    // central directory pass
    std::vector<CentralRecord> records;
    records.reserve(count_total);
    ByteReader cd{raw, cd_offset};
    for (std::uint16_t i = 0; i < count_total; ++i) {
        if (cd.u32() != kCentralSig) raise(Errc::malformed_archive, "bad central directory signature");
        cd.u16();  // version made by
        cd.u16();  // version needed
        CentralRecord rec;
        rec.flags = cd.u16();
        rec.method = cd.u16();
        cd.u16();  // mod time
        cd.u16();  // mod date
        rec.crc = cd.u32();
        rec.compressed_size = cd.u32();
        rec.uncompressed_size = cd.u32();
        std::uint16_t name_len = cd.u16();
        std::uint16_t extra_len = cd.u16();
        std::uint16_t comment_len = cd.u16();
        std::uint16_t start_disk = cd.u16();
        cd.u16();  // internal attrs
        cd.u32();  // external attrs
        rec.local_offset = cd.u32();
        rec.name = to_string(cd.take(name_len));
        cd.take(extra_len);
        cd.take(comment_len);
        if (start_disk != 0) raise(Errc::unsupported_feature, "multi-disk archives are not supported");
        if (rec.compressed_size == 0xffffffff || rec.uncompressed_size == 0xffffffff ||
            rec.local_offset == 0xffffffff)
            raise(Errc::unsupported_feature, "zip64 is not supported");
        records.push_back(std::move(rec));
    }
    if (cd.pos != eocd_pos) raise(Errc::malformed_archive, "central directory size mismatch");

    // local-header order is the source of truth; the central directory
    // must list entries in the same order
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].local_offset <= records[i - 1].local_offset)
            raise(Errc::malformed_archive, "central directory order differs from local order");
    }

    Bundle bundle;
    std::unordered_set<std::string> seen;
    for (const CentralRecord& rec : records) {
        ByteReader lh{raw, rec.local_offset};
        if (lh.u32() != kLocalSig) raise(Errc::malformed_archive, "bad local header signature");
        lh.u16();  // version needed
        std::uint16_t flags = lh.u16();
        std::uint16_t method = lh.u16();
        lh.u16();  // mod time
        lh.u16();  // mod date
        std::uint32_t l_crc = lh.u32();
        std::uint32_t l_csize = lh.u32();
        std::uint32_t l_usize = lh.u32();
        std::uint16_t name_len = lh.u16();
        std::uint16_t extra_len = lh.u16();
        std::string name = to_string(lh.take(name_len));
        lh.take(extra_len);

        if (flags & 0x0001) raise(Errc::unsupported_feature, "encrypted entries are not supported");
        if (name != rec.name)
            raise(Errc::malformed_archive, "local header name differs from central directory");
        if (method != rec.method) raise(Errc::malformed_archive, "local/central method mismatch");
        bool has_descriptor = (flags & 0x0008) != 0;
        if (!has_descriptor &&
            (l_crc != rec.crc || l_csize != rec.compressed_size || l_usize != rec.uncompressed_size))
            raise(Errc::malformed_archive, "local/central size or checksum mismatch");

        ByteView payload = lh.take(rec.compressed_size);
        if (has_descriptor) {
            // optional descriptor signature, then crc/csize/usize
            ByteReader desc = lh;
            std::uint32_t first = desc.u32();
            if (first == kDescriptorSig) first = desc.u32();
            if (first != rec.crc || desc.u32() != rec.compressed_size ||
                desc.u32() != rec.uncompressed_size)
                raise(Errc::malformed_archive, "data descriptor disagrees with central directory");
        }

        if (name.ends_with('/')) {
            if (rec.uncompressed_size != 0)
                raise(Errc::malformed_archive, "directory entry with content");
            continue;  // directory entries carry nothing signable
        }

        Entry entry;
        entry.path = name;
        switch (rec.method) {
        case 0:
            if (rec.compressed_size != rec.uncompressed_size)
                raise(Errc::malformed_archive, "stored entry with inconsistent sizes");
            entry.content.assign(payload.begin(), payload.end());
            entry.compression = Compression::stored;
            break;
        case 8:
            entry.content = inflate_raw(payload, rec.uncompressed_size);
            entry.compression = Compression::deflated;
            break;
        default:
            raise(Errc::unsupported_feature, "unsupported compression method");
        }
        if (crc_of(view(entry.content)) != rec.crc)
            raise(Errc::malformed_archive, "CRC mismatch for " + entry.path);
        if (!valid_entry_path(entry.path))
            raise(Errc::malformed_archive, "invalid entry path: " + entry.path);
        if (!seen.insert(entry.path).second)
            raise(Errc::malformed_archive, "duplicate entry path: " + entry.path);
        bundle.entries.push_back(std::move(entry));
    }
    return bundle;
}

/// Serializes a bundle deterministically: fixed 1980-01-01 timestamps, no
/// extra fields, UTF-8 names, entry order exactly as given.
inline Bytes write(const Bundle& bundle) {
    using namespace detail;
    std::unordered_set<std::string> seen;
    for (const Entry& e : bundle.entries) {
        if (!valid_entry_path(e.path)) raise(Errc::invalid_bundle, "invalid entry path: " + e.path);
        if (!seen.insert(e.path).second) raise(Errc::invalid_bundle, "duplicate entry path: " + e.path);
    }
    if (bundle.entries.size() > 0xfffe) raise(Errc::invalid_bundle, "too many entries for this format");

    Bytes out;
    struct Placed {
        const Entry* entry;
        std::uint32_t offset;
        std::uint32_t crc;
        std::uint32_t csize;
        std::uint16_t method;
    };
    std::vector<Placed> placed;
    placed.reserve(bundle.entries.size());

    for (const Entry& e : bundle.entries) {
        if (e.content.size() >= 0xffffffffu || e.path.size() > 0xffff)
            raise(Errc::invalid_bundle, "entry exceeds the supported size bounds");
        Placed p{&e, static_cast<std::uint32_t>(out.size()), crc_of(view(e.content)), 0, 0};
        Bytes stored_bytes;
        const Bytes* payload = &e.content;
        if (e.compression == Compression::deflated) {
            stored_bytes = deflate_raw(view(e.content));
            payload = &stored_bytes;
            p.method = 8;
        }
        if (payload->size() >= 0xffffffffu) raise(Errc::invalid_bundle, "entry too large");
        p.csize = static_cast<std::uint32_t>(payload->size());

        put32(out, kLocalSig);
        put16(out, 20);      // version needed
        put16(out, 0x0800);  // UTF-8 names
        put16(out, p.method);
        put16(out, kDosTime);
        put16(out, kDosDate);
        put32(out, p.crc);
        put32(out, p.csize);
        put32(out, static_cast<std::uint32_t>(e.content.size()));
        put16(out, static_cast<std::uint16_t>(e.path.size()));
        put16(out, 0);  // extra length
        append(out, view(e.path));
        append(out, view(*payload));
        placed.push_back(std::move(p));
    }

    std::uint32_t cd_offset = static_cast<std::uint32_t>(out.size());
    for (const Placed& p : placed) {
        put32(out, kCentralSig);
        put16(out, 20);  // version made by
        put16(out, 20);  // version needed
        put16(out, 0x0800);
        put16(out, p.method);
        put16(out, kDosTime);
        put16(out, kDosDate);
        put32(out, p.crc);
        put32(out, p.csize);
        put32(out, static_cast<std::uint32_t>(p.entry->content.size()));
        put16(out, static_cast<std::uint16_t>(p.entry->path.size()));
        put16(out, 0);  // extra
        put16(out, 0);  // comment
        put16(out, 0);  // disk number
        put16(out, 0);  // internal attrs
        put32(out, 0);  // external attrs
        put32(out, p.offset);
        append(out, view(p.entry->path));
    }
    std::uint32_t cd_size = static_cast<std::uint32_t>(out.size()) - cd_offset;

    put32(out, kEndSig);
    put16(out, 0);
    put16(out, 0);
    put16(out, static_cast<std::uint16_t>(placed.size()));
    put16(out, static_cast<std::uint16_t>(placed.size()));
    put32(out, cd_size);
    put32(out, cd_offset);
    put16(out, 0);  // comment length
    return out;
}

} // namespace sfxs::archive
