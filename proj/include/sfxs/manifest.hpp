#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sfxs/archive.hpp"
#include "sfxs/bytes.hpp"
#include "sfxs/crypto.hpp"
#include "sfxs/error.hpp"

namespace sfxs::manifest {

using DigestAlg = crypto::HashAlg;

/// Algorithm token as it appears in attribute names. SHA-1 uses the
/// hyphen-free token; the parser accepts both spellings.
inline std::string alg_token(DigestAlg alg) {
    return alg == DigestAlg::sha1 ? "SHA1" : "SHA-256";
}

inline std::optional<DigestAlg> parse_alg_token(std::string_view token) {
    if (archive::detail::iequals(token, "SHA1") || archive::detail::iequals(token, "SHA-1"))
        return DigestAlg::sha1;
    if (archive::detail::iequals(token, "SHA256") || archive::detail::iequals(token, "SHA-256"))
        return DigestAlg::sha256;
    return std::nullopt;
}

inline std::string digest_attr_name(DigestAlg alg) {
    return alg_token(alg) + "-Digest";
}

inline std::string manifest_digest_attr_name(DigestAlg alg) {
    return alg_token(alg) + "-Digest-Manifest";
}

struct Attribute {
    std::string key;
    std::string value;

    bool operator==(const Attribute&) const = default;
};

struct Section {
    std::optional<std::string> name;
    std::vector<Attribute> attributes;

    bool operator==(const Section&) const = default;

    const Attribute* find(std::string_view key) const {
        for (const Attribute& a : attributes)
            if (archive::detail::iequals(a.key, key)) return &a;
        return nullptr;
    }
};

struct ManifestDoc {
    Section main;                   // name absent
    std::vector<Section> entries;   // name = resource path

    bool operator==(const ManifestDoc&) const = default;
};

struct SignatureFileDoc {
    Section main;

    bool operator==(const SignatureFileDoc&) const = default;
};

/// Raw parse result before shape validation; "Name" is still an ordinary
/// attribute here.
struct Doc {
    std::vector<std::vector<Attribute>> sections;
};

namespace detail {

inline bool valid_key(std::string_view key) {
    if (key.empty() || key.size() > 70) return false;
    return std::all_of(key.begin(), key.end(), [](unsigned char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '-';
    });
}

inline bool valid_value(std::string_view value) {
    return std::none_of(value.begin(), value.end(), [](unsigned char c) {
        return c == '\r' || c == '\n' || c == 0x7f || c < 0x20;
    });
}

// A physical line carries at most 70 content bytes so the CRLF-terminated
// form never exceeds 72 bytes.
constexpr std::size_t kMaxLineContent = 70;

inline void emit_logical_line(Bytes& out, std::string_view logical) {
    std::size_t first = std::min(logical.size(), kMaxLineContent);
    append(out, view(logical.substr(0, first)));
    append(out, view("\r\n"));
    std::size_t pos = first;
    while (pos < logical.size()) {
        std::size_t n = std::min(logical.size() - pos, kMaxLineContent - 1);
        out.push_back(' ');
        append(out, view(logical.substr(pos, n)));
        append(out, view("\r\n"));
        pos += n;
    }
}

inline void emit_section(Bytes& out, const Section& section) {
    if (section.name) emit_logical_line(out, "Name: " + *section.name);
    for (const Attribute& a : section.attributes) emit_logical_line(out, a.key + ": " + a.value);
    append(out, view("\r\n"));
}

inline void check_section(const Section& section) {
    std::vector<std::string> seen;
    for (const Attribute& a : section.attributes) {
        if (!valid_key(a.key)) raise(Errc::malformed_manifest, "invalid attribute key: " + a.key);
        if (!valid_value(a.value)) raise(Errc::malformed_manifest, "attribute value contains control bytes");
        std::string up = archive::detail::upper(a.key);
        if (std::find(seen.begin(), seen.end(), up) != seen.end())
            raise(Errc::malformed_manifest, "duplicate attribute key: " + a.key);
        seen.push_back(std::move(up));
    }
}

} // namespace detail

/// Serializes to the canonical wire form: UTF-8, CRLF terminators,
/// physical lines of at most 72 bytes including the terminator, blank
/// line after every section, main section first.
inline Bytes serialize(const ManifestDoc& doc) {
    detail::check_section(doc.main);
    Bytes out;
    detail::emit_section(out, doc.main);
    for (const Section& s : doc.entries) {
        if (!s.name) raise(Errc::malformed_manifest, "entry section without a name");
        detail::check_section(s);
        detail::emit_section(out, s);
    }
    return out;
}

inline Bytes serialize(const SignatureFileDoc& doc) {
    detail::check_section(doc.main);
    Bytes out;
    detail::emit_section(out, doc.main);
    return out;
}

/// Parses the attribute format. Tolerates LF-only terminators; rejects
/// binary lines, over-long physical lines, continuations without a
/// predecessor, duplicate keys, and lines without a colon separator.
inline Doc parse(ByteView raw) {
    std::vector<std::string> logical;
    std::vector<std::vector<std::string>> raw_sections;
    std::size_t pos = 0;
    bool section_open = false;

    auto close_logical_section = [&] {
        if (!logical.empty()) raw_sections.push_back(std::move(logical));
        logical.clear();
        section_open = false;
    };

    while (pos < raw.size()) {
        std::size_t eol = pos;
        while (eol < raw.size() && raw[eol] != '\n' && raw[eol] != '\r') ++eol;
        std::string_view line(reinterpret_cast<const char*>(raw.data() + pos), eol - pos);
        std::size_t next = eol;
        if (next < raw.size() && raw[next] == '\r') ++next;
        if (next < raw.size() && raw[next] == '\n') ++next;
        if (next == eol) break;  // no terminator on final line: treat as a line anyway
        pos = next;

        if (line.size() > detail::kMaxLineContent)
            raise(Errc::malformed_manifest, "physical line longer than 72 bytes");
        for (unsigned char c : line)
            if ((c < 0x20 && c != '\t') || c == 0x7f)
                raise(Errc::malformed_manifest, "binary content in attribute line");

        if (line.empty()) {
            close_logical_section();
            continue;
        }
        if (line.front() == ' ') {
            if (logical.empty())
                raise(Errc::malformed_manifest, "continuation line without a preceding line");
            logical.back() += line.substr(1);
            section_open = true;
            continue;
        }
        logical.emplace_back(line);
        section_open = true;
    }
    // final line without terminator
    if (pos < raw.size()) {
        std::string_view line(reinterpret_cast<const char*>(raw.data() + pos), raw.size() - pos);
        if (line.size() > detail::kMaxLineContent)
            raise(Errc::malformed_manifest, "physical line longer than 72 bytes");
        if (!line.empty()) {
            if (line.front() == ' ') {
                if (logical.empty())
                    raise(Errc::malformed_manifest, "continuation line without a preceding line");
                logical.back() += line.substr(1);
            } else {
                logical.emplace_back(line);
            }
        }
    }
    close_logical_section();

    Doc doc;
    for (const auto& lines : raw_sections) {
        std::vector<Attribute> attrs;
        std::vector<std::string> seen;
        for (const std::string& l : lines) {
            std::size_t colon = l.find(':');
            if (colon == std::string::npos)
                raise(Errc::malformed_manifest, "attribute line without a colon");
            if (colon + 1 >= l.size() || l[colon + 1] != ' ')
                raise(Errc::malformed_manifest, "missing space after attribute colon");
            Attribute a{l.substr(0, colon), l.substr(colon + 2)};
            if (!detail::valid_key(a.key))
                raise(Errc::malformed_manifest, "invalid attribute key: " + a.key);
            std::string up = archive::detail::upper(a.key);
            if (std::find(seen.begin(), seen.end(), up) != seen.end())
                raise(Errc::malformed_manifest, "duplicate attribute key: " + a.key);
            seen.push_back(std::move(up));
            attrs.push_back(std::move(a));
        }
        doc.sections.push_back(std::move(attrs));
    }
    return doc;
}

namespace detail {

inline Section to_section(std::vector<Attribute> attrs, bool named) {
    Section s;
    if (named) {
        if (attrs.empty() || !archive::detail::iequals(attrs.front().key, "Name"))
            raise(Errc::malformed_manifest, "entry section must start with Name");
        s.name = attrs.front().value;
        attrs.erase(attrs.begin());
    }
    s.attributes = std::move(attrs);
    return s;
}

/// The per-entry digest attribute: key "<ALG>-Digest" (not the manifest
/// digest, whose key ends in "-Digest-Manifest").
inline std::optional<std::pair<DigestAlg, std::string>> entry_digest(const Section& s) {
    for (const Attribute& a : s.attributes) {
        std::string up = archive::detail::upper(a.key);
        if (up.size() > 7 && up.ends_with("-DIGEST")) {
            auto alg = parse_alg_token(std::string_view(a.key).substr(0, a.key.size() - 7));
            if (!alg) raise(Errc::unsupported_algorithm, "unknown digest algorithm in " + a.key);
            return std::make_pair(*alg, a.value);
        }
    }
    return std::nullopt;
}

} // namespace detail

inline ManifestDoc to_manifest(Doc doc) {
    if (doc.sections.empty()) raise(Errc::malformed_manifest, "empty manifest");
    ManifestDoc m;
    if (!doc.sections[0].empty() && archive::detail::iequals(doc.sections[0][0].key, "Name"))
        raise(Errc::malformed_manifest, "manifest main section must not carry a Name");
    m.main = detail::to_section(std::move(doc.sections[0]), false);
    std::unordered_set<std::string> names;
    for (std::size_t i = 1; i < doc.sections.size(); ++i) {
        Section s = detail::to_section(std::move(doc.sections[i]), true);
        if (!names.insert(*s.name).second)
            raise(Errc::malformed_manifest, "duplicate entry name: " + *s.name);
        std::size_t digest_attrs = 0;
        for (const Attribute& a : s.attributes) {
            std::string up = archive::detail::upper(a.key);
            if (up.ends_with("-DIGEST")) ++digest_attrs;
        }
        if (digest_attrs != 1)
            raise(Errc::malformed_manifest, "entry section needs exactly one digest attribute");
        m.entries.push_back(std::move(s));
    }
    return m;
}

inline SignatureFileDoc to_signature_file(Doc doc) {
    if (doc.sections.size() != 1)
        raise(Errc::malformed_manifest, "signature file must contain only a main section");
    SignatureFileDoc sf{detail::to_section(std::move(doc.sections[0]), false)};
    std::size_t manifest_digests = 0;
    for (const Attribute& a : sf.main.attributes) {
        std::string up = archive::detail::upper(a.key);
        if (up.ends_with("-DIGEST-MANIFEST")) ++manifest_digests;
    }
    if (manifest_digests != 1)
        raise(Errc::malformed_manifest, "signature file needs exactly one manifest digest");
    if (!sf.main.find("Signature-Version"))
        raise(Errc::malformed_manifest, "signature file lacks Signature-Version");
    return sf;
}

/// Digest algorithm and value of the "<ALG>-Digest-Manifest" attribute.
inline std::pair<DigestAlg, std::string> manifest_digest_of(const SignatureFileDoc& sf) {
    for (const Attribute& a : sf.main.attributes) {
        std::string up = archive::detail::upper(a.key);
        if (up.ends_with("-DIGEST-MANIFEST")) {
            auto alg = parse_alg_token(std::string_view(a.key).substr(0, a.key.size() - 16));
            if (!alg) raise(Errc::unsupported_algorithm, "unknown digest algorithm in " + a.key);
            return {*alg, a.value};
        }
    }
    raise(Errc::malformed_manifest, "signature file lacks a manifest digest");
}

/// One entry section per resource, in bundle order, each carrying the
/// base64 digest of the resource's exact bytes.
inline ManifestDoc generate_manifest(const archive::Bundle& bundle, DigestAlg alg,
                                     std::vector<Attribute> extra_main = {}) {
    ManifestDoc doc;
    doc.main.attributes.push_back({"Manifest-Version", "1.0"});
    for (Attribute& a : extra_main) doc.main.attributes.push_back(std::move(a));
    std::unordered_set<std::string> seen;
    for (const archive::Entry& e : bundle.entries) {
        if (archive::classify(e.path) != archive::EntryClass::resource) continue;
        if (!seen.insert(e.path).second) raise(Errc::malformed_archive, "duplicate path: " + e.path);
        Section s;
        s.name = e.path;
        s.attributes.push_back({digest_attr_name(alg), base64_encode(crypto::digest(alg, view(e.content)))});
        doc.entries.push_back(std::move(s));
    }
    return doc;
}

inline SignatureFileDoc generate_signature_file(ByteView manifest_bytes, DigestAlg alg) {
    SignatureFileDoc sf;
    sf.main.attributes.push_back({"Signature-Version", "1.0"});
    sf.main.attributes.push_back(
        {manifest_digest_attr_name(alg), base64_encode(crypto::digest(alg, manifest_bytes))});
    return sf;
}

struct Coverage {
    std::vector<std::string> unlisted_resources;  // in bundle, not in manifest
    std::vector<std::string> missing_resources;   // in manifest, not in bundle
    std::vector<std::string> digest_mismatches;

    bool ok() const {
        return unlisted_resources.empty() && missing_resources.empty() && digest_mismatches.empty();
    }
};

/// Exhaustiveness and digest check of a manifest against a bundle. The
/// observer fires once per resource digested (used to assert that
/// validation short-circuits before digesting).
inline Coverage verify_coverage(const archive::Bundle& bundle, const ManifestDoc& doc,
                                const std::function<void(std::string_view)>& observer = {}) {
    Coverage cov;
    std::vector<const archive::Entry*> resources;
    for (const archive::Entry& e : bundle.entries)
        if (archive::classify(e.path) == archive::EntryClass::resource) resources.push_back(&e);

    std::unordered_set<std::string> listed;
    for (const Section& s : doc.entries) listed.insert(*s.name);
    for (const archive::Entry* r : resources)
        if (!listed.contains(r->path)) cov.unlisted_resources.push_back(r->path);

    for (const Section& s : doc.entries) {
        const archive::Entry* r = bundle.find(*s.name);
        if (!r || archive::classify(r->path) != archive::EntryClass::resource) {
            cov.missing_resources.push_back(*s.name);
            continue;
        }
        auto attr = detail::entry_digest(s);
        if (!attr) raise(Errc::malformed_manifest, "entry section lacks a digest attribute");
        if (observer) observer(r->path);
        Bytes actual = crypto::digest(attr->first, view(r->content));
        Bytes expected;
        bool decodes = true;
        try {
            expected = base64_decode(attr->second);
        } catch (const Error&) {
            decodes = false;
        }
        if (!decodes || !constant_time_eq(view(actual), view(expected)))
            cov.digest_mismatches.push_back(*s.name);
    }
    return cov;
}

} // namespace sfxs::manifest
