#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "sfxs/bytes.hpp"
#include "sfxs/crypto.hpp"
#include "sfxs/error.hpp"
#include "sfxs/time.hpp"
#include "sfxs/truststore.hpp"
#include "sfxs/validator.hpp"

namespace sfxs::repo {

struct IndexEntry {
    std::string filename;
    std::uint64_t size = 0;
    std::string sha256;  // lower-case hex
    std::vector<std::string> signers;
    time::UtcSeconds published_at = 0;

    bool operator==(const IndexEntry&) const = default;
};

/// Repository index, kept sorted by filename. Serialized as index.txt:
/// one tab-separated record per line (filename, size, sha256, signers as
/// a comma list or "-", ISO-8601 timestamp), LF terminated.
struct Index {
    std::vector<IndexEntry> entries;

    bool operator==(const Index&) const = default;
};

struct Target {
    std::filesystem::path root;
};

namespace detail {

inline bool valid_sha256_hex(std::string_view s) {
    return s.size() == 64 && std::all_of(s.begin(), s.end(), [](unsigned char c) {
               return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
           });
}

inline std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = text.find(sep, pos);
        if (next == std::string_view::npos) {
            out.emplace_back(text.substr(pos));
            return out;
        }
        out.emplace_back(text.substr(pos, next - pos));
        pos = next + 1;
    }
}

inline std::filesystem::path index_path(const Target& target) {
    return target.root / "index.txt";
}

/// Advisory single-writer lock for a repository root.
class RepoLock {
public:
    explicit RepoLock(const Target& target) : path_(target.root / ".lock") {
        std::error_code ec;
        if (std::filesystem::exists(path_, ec))
            raise(Errc::io_failure, "repository is locked by another writer");
        std::ofstream out(path_, std::ios::binary);
        if (!out) raise(Errc::io_failure, "cannot create repository lock");
        held_ = true;
    }
    ~RepoLock() {
        if (held_) {
            std::error_code ec;
            std::filesystem::remove(path_, ec);
        }
    }
    RepoLock(const RepoLock&) = delete;
    RepoLock& operator=(const RepoLock&) = delete;

private:
    std::filesystem::path path_;
    bool held_ = false;
};

} // namespace detail

inline std::string serialize_index(const Index& index) {
    std::string out;
    for (const IndexEntry& e : index.entries) {
        std::string signers;
        for (std::size_t i = 0; i < e.signers.size(); ++i) {
            if (i) signers += ',';
            signers += e.signers[i];
        }
        if (signers.empty()) signers = "-";
        out += e.filename;
        out += '\t';
        out += std::to_string(e.size);
        out += '\t';
        out += e.sha256;
        out += '\t';
        out += signers;
        out += '\t';
        out += time::to_iso8601(e.published_at);
        out += '\n';
    }
    return out;
}

inline Index parse_index(std::string_view text) {
    Index index;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            raise(Errc::index_corrupt, "index record without a line terminator");
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        std::vector<std::string> fields = detail::split(line, '\t');
        if (fields.size() != 5) raise(Errc::index_corrupt, "index record needs 5 fields");
        IndexEntry entry;
        entry.filename = fields[0];
        if (entry.filename.empty() || entry.filename.find('/') != std::string::npos)
            raise(Errc::index_corrupt, "bad filename field");
        if (fields[1].empty() ||
            !std::all_of(fields[1].begin(), fields[1].end(), [](unsigned char c) { return std::isdigit(c); }))
            raise(Errc::index_corrupt, "bad size field");
        entry.size = std::stoull(fields[1]);
        if (!detail::valid_sha256_hex(fields[2])) raise(Errc::index_corrupt, "bad sha256 field");
        entry.sha256 = fields[2];
        if (fields[3] != "-")
            for (std::string& alias : detail::split(fields[3], ','))
                entry.signers.push_back(std::move(alias));
        try {
            entry.published_at = time::parse_iso8601(fields[4]);
        } catch (const Error&) {
            raise(Errc::index_corrupt, "bad timestamp field");
        }
        if (!index.entries.empty() && index.entries.back().filename >= entry.filename)
            raise(Errc::index_corrupt, "index records are not sorted by filename");
        index.entries.push_back(std::move(entry));
    }
    return index;
}

inline Index read_index(const Target& target) {
    std::ifstream in(detail::index_path(target), std::ios::binary);
    if (!in) return Index{};  // an empty repository has no index yet
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_index(text);
}

/// Atomic rewrite: the new index lands via rename so a reader never sees
/// a partial file.
inline void write_index(const Target& target, const Index& index) {
    std::filesystem::path tmp = detail::index_path(target);
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(Errc::io_failure, "cannot write index at " + tmp.string());
        std::string text = serialize_index(index);
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) raise(Errc::io_failure, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, detail::index_path(target), ec);
    if (ec) raise(Errc::io_failure, "cannot replace index: " + ec.message());
}

struct PublishOptions {
    validate::SignerPolicy policy = validate::SignerPolicy::all_signers;
    /// Test hook; runs after the bundle file is in place and before the
    /// index is rewritten (used for crash injection).
    std::function<void()> after_copy_hook;
};

/// Validation-gated publication: the bundle must check out VALID against
/// the store, is copied under the repository root, and the index entry is
/// upserted atomically.
inline Index publish(const std::filesystem::path& bundle_path, const Target& target,
                     const store::TrustStore& trust, time::UtcSeconds at_time,
                     const PublishOptions& options = {}) {
    std::ifstream in(bundle_path, std::ios::binary);
    if (!in) raise(Errc::io_failure, "cannot open bundle " + bundle_path.string());
    Bytes raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    archive::Bundle bundle = archive::read(view(raw));
    validate::Options check_options;
    check_options.policy = options.policy;
    validate::Report report = validate::check_bundle(bundle, trust, at_time, check_options);
    if (!report.valid()) {
        std::string why = "bundle failed validation";
        if (!report.failures.empty())
            why += ": " + std::string(validate::reason_name(report.failures.front().code));
        raise(Errc::validation_failed, why);
    }

    std::string filename = bundle_path.filename().string();
    if (filename.empty()) raise(Errc::invalid_argument, "bundle path has no filename");

    std::error_code ec;
    if (!std::filesystem::is_directory(target.root, ec))
        raise(Errc::io_failure, "repository root does not exist: " + target.root.string());
    detail::RepoLock lock(target);

    // copy via temp + rename, then update the index; a crash in between
    // leaves the previous index intact
    std::filesystem::path dest = target.root / filename;
    std::filesystem::path tmp = dest;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(Errc::io_failure, "cannot write " + tmp.string());
        out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (!out) raise(Errc::io_failure, "short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, dest, ec);
    if (ec) raise(Errc::io_failure, "cannot place bundle file: " + ec.message());

    if (options.after_copy_hook) options.after_copy_hook();

    Index index = read_index(target);
    IndexEntry entry;
    entry.filename = filename;
    entry.size = raw.size();
    entry.sha256 = hex_encode(view(crypto::digest(crypto::HashAlg::sha256, view(raw))));
    for (const validate::SignerResult& s : report.signers) entry.signers.push_back(s.alias);
    entry.published_at = at_time;

    auto existing = std::find_if(index.entries.begin(), index.entries.end(),
                                 [&](const IndexEntry& e) { return e.filename == filename; });
    if (existing != index.entries.end()) {
        *existing = std::move(entry);
    } else {
        auto at = std::lower_bound(index.entries.begin(), index.entries.end(), entry,
                                   [](const IndexEntry& a, const IndexEntry& b) {
                                       return a.filename < b.filename;
                                   });
        index.entries.insert(at, std::move(entry));
    }
    write_index(target, index);
    return index;
}

} // namespace sfxs::repo
