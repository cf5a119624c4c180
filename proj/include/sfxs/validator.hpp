#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sfxs/archive.hpp"
#include "sfxs/cms.hpp"
#include "sfxs/error.hpp"
#include "sfxs/manifest.hpp"
#include "sfxs/pki.hpp"
#include "sfxs/truststore.hpp"

namespace sfxs::validate {

enum class Reason {
    UNSIGNED_BUNDLE,
    BAD_ORDER,
    UNKNOWN_SIGNER,
    CERT_PATH_INVALID,
    EXPIRED_CERT,
    BAD_BLOCK_SIGNATURE,
    MANIFEST_DIGEST_MISMATCH,
    RESOURCE_DIGEST_MISMATCH,
    MISSING_MANIFEST_ENTRY,
    EXTRA_MANIFEST_ENTRY,
    MALFORMED_METADATA,
};

constexpr std::string_view reason_name(Reason r) {
    switch (r) {
    case Reason::UNSIGNED_BUNDLE: return "UNSIGNED_BUNDLE";
    case Reason::BAD_ORDER: return "BAD_ORDER";
    case Reason::UNKNOWN_SIGNER: return "UNKNOWN_SIGNER";
    case Reason::CERT_PATH_INVALID: return "CERT_PATH_INVALID";
    case Reason::EXPIRED_CERT: return "EXPIRED_CERT";
    case Reason::BAD_BLOCK_SIGNATURE: return "BAD_BLOCK_SIGNATURE";
    case Reason::MANIFEST_DIGEST_MISMATCH: return "MANIFEST_DIGEST_MISMATCH";
    case Reason::RESOURCE_DIGEST_MISMATCH: return "RESOURCE_DIGEST_MISMATCH";
    case Reason::MISSING_MANIFEST_ENTRY: return "MISSING_MANIFEST_ENTRY";
    case Reason::EXTRA_MANIFEST_ENTRY: return "EXTRA_MANIFEST_ENTRY";
    case Reason::MALFORMED_METADATA: return "MALFORMED_METADATA";
    }
    return "?";
}

enum class Verdict { VALID, INVALID };

struct SignerResult {
    std::string alias;
    pki::DistinguishedName dn;
    bool path_ok = false;
};

struct Failure {
    Reason code;
    std::string detail;
    std::optional<std::string> entry_path;
};

struct Report {
    Verdict verdict = Verdict::INVALID;
    std::vector<SignerResult> signers;
    std::vector<Failure> failures;

    bool valid() const { return verdict == Verdict::VALID; }
};

/// Whether every signer must authenticate, or one suffices. Either way all
/// signature files must be cryptographically coherent.
enum class SignerPolicy { all_signers, any_signer };

struct Options {
    SignerPolicy policy = SignerPolicy::all_signers;
    /// Fires once per resource digested; lets tests observe that failed
    /// authentication short-circuits before any digest work.
    std::function<void(std::string_view)> digest_observer;
};

namespace detail {

struct SignerPair {
    const archive::Entry* sf = nullptr;
    const archive::Entry* block = nullptr;
    std::string alias;  // stem of the .SF name
};

inline std::vector<SignerPair> collect_pairs(const archive::Bundle& bundle) {
    std::vector<SignerPair> pairs;
    for (const archive::Entry& e : bundle.entries) {
        if (archive::classify(e.path) != archive::EntryClass::signature_file) continue;
        SignerPair pair;
        pair.sf = &e;
        pair.alias = archive::metadata_stem(e.path);
        for (const archive::Entry& b : bundle.entries) {
            if (archive::classify(b.path) == archive::EntryClass::signature_block &&
                archive::metadata_stem(b.path) == pair.alias) {
                pair.block = &b;
                break;
            }
        }
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

} // namespace detail

/// The three-step validation: authenticate every signer against the
/// store, check the archive layout, then check metadata coherence (block
/// signature, manifest digest, resource digests, exhaustiveness). Any
/// failed step makes the verdict INVALID; failed authentication stops
/// validation before any resource is digested.
inline Report check_bundle(const archive::Bundle& bundle, const store::TrustStore& trust,
                           time::UtcSeconds at_time, const Options& options = {}) {
    Report report;
    auto fail = [&](Reason code, std::string detail, std::optional<std::string> path = std::nullopt) {
        report.failures.push_back({code, std::move(detail), std::move(path)});
    };

    std::vector<detail::SignerPair> pairs = detail::collect_pairs(bundle);
    if (pairs.empty()) {
        fail(Reason::UNSIGNED_BUNDLE, "bundle carries no signature files");
        return report;
    }

    // step 1: authenticate the signers
    pki::TrustInput trust_material = store::trust_input(trust);
    std::vector<std::optional<cms::SignedDataDoc>> blocks(pairs.size());
    std::vector<std::optional<Failure>> auth_failures(pairs.size());
    std::size_t authenticated = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const detail::SignerPair& pair = pairs[i];
        SignerResult signer{pair.alias, {}, false};
        std::optional<Failure> failure;
        if (!pair.block) {
            failure = Failure{Reason::BAD_ORDER, "signature file has no matching block file",
                              pair.sf->path};
        } else {
            try {
                cms::SignedDataDoc doc = cms::decode_signed_data(view(pair.block->content));
                const pki::CertificateView* leaf =
                    cms::find_signer_certificate(doc, doc.signer_infos.at(0));
                if (!leaf) {
                    failure = Failure{Reason::MALFORMED_METADATA,
                                      "signer certificate missing from block file", pair.block->path};
                } else {
                    signer.dn = leaf->subject;
                    pki::CertPath path =
                        pki::build_path(*leaf, doc.certificates, trust_material);
                    pki::PathVerdict verdict = pki::validate_path(path, at_time);
                    if (verdict.ok) {
                        signer.path_ok = true;
                        ++authenticated;
                    } else {
                        const pki::PathVerdict::Item& first = verdict.failures.front();
                        Reason code = (first.failure == pki::PathFailure::expired ||
                                       first.failure == pki::PathFailure::not_yet_valid)
                                          ? Reason::EXPIRED_CERT
                                          : Reason::CERT_PATH_INVALID;
                        failure = Failure{code, first.detail, pair.block->path};
                    }
                }
                blocks[i] = std::move(doc);
            } catch (const Error& e) {
                Reason code = Reason::MALFORMED_METADATA;
                if (e.code() == Errc::no_trust_anchor) code = Reason::UNKNOWN_SIGNER;
                else if (e.code() == Errc::ambiguous_issuer || e.code() == Errc::cycle_detected)
                    code = Reason::CERT_PATH_INVALID;
                failure = Failure{code, e.what(), pair.block ? pair.block->path : pair.sf->path};
            }
        }
        auth_failures[i] = std::move(failure);
        report.signers.push_back(std::move(signer));
    }

    bool auth_passed = options.policy == SignerPolicy::all_signers
                           ? authenticated == pairs.size()
                           : authenticated > 0;
    if (!auth_passed) {
        // not worth verifying signatures nobody vouches for; report the
        // authentication failures and stop before any digest work
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (auth_failures[i]) report.failures.push_back(*auth_failures[i]);
        if (report.failures.empty())
            fail(Reason::UNKNOWN_SIGNER, "no signer could be authenticated");
        return report;
    }

    // step 2: archive layout
    archive::OrderReport order = archive::check_order(bundle);
    if (!order.ok) {
        fail(Reason::BAD_ORDER,
             order.detail + " (entry " + std::to_string(order.violation_index) + ")",
             order.violation_index < bundle.entries.size()
                 ? std::optional<std::string>(bundle.entries[order.violation_index].path)
                 : std::nullopt);
    }

    // step 3: metadata coherence
    const archive::Entry* manifest_entry = nullptr;
    for (const archive::Entry& e : bundle.entries)
        if (archive::classify(e.path) == archive::EntryClass::manifest) {
            manifest_entry = &e;
            break;
        }

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const detail::SignerPair& pair = pairs[i];
        if (!blocks[i]) {
            // an unreadable or unmatched block file is incoherent metadata
            // no matter which trust policy is active
            if (auth_failures[i]) report.failures.push_back(*auth_failures[i]);
            continue;
        }
        try {
            if (!cms::verify_signer_info(*blocks[i], view(pair.sf->content), 0))
                fail(Reason::BAD_BLOCK_SIGNATURE,
                     "block signature does not verify over " + pair.sf->path, pair.block->path);
        } catch (const Error& e) {
            fail(Reason::MALFORMED_METADATA, e.what(), pair.block->path);
        }
        if (!manifest_entry) continue;
        try {
            manifest::SignatureFileDoc sf =
                manifest::to_signature_file(manifest::parse(view(pair.sf->content)));
            auto [alg, value] = manifest::manifest_digest_of(sf);
            std::string actual = base64_encode(crypto::digest(alg, view(manifest_entry->content)));
            if (actual != value)
                fail(Reason::MANIFEST_DIGEST_MISMATCH,
                     pair.sf->path + " does not match the manifest bytes", pair.sf->path);
        } catch (const Error& e) {
            fail(Reason::MALFORMED_METADATA, e.what(), pair.sf->path);
        }
    }

    if (manifest_entry) {
        try {
            manifest::ManifestDoc doc =
                manifest::to_manifest(manifest::parse(view(manifest_entry->content)));
            manifest::Coverage coverage =
                manifest::verify_coverage(bundle, doc, options.digest_observer);
            for (const std::string& path : coverage.unlisted_resources)
                fail(Reason::MISSING_MANIFEST_ENTRY, "resource is not listed in the manifest", path);
            for (const std::string& path : coverage.missing_resources)
                fail(Reason::EXTRA_MANIFEST_ENTRY, "manifest lists a resource that is absent", path);
            for (const std::string& path : coverage.digest_mismatches)
                fail(Reason::RESOURCE_DIGEST_MISMATCH, "resource bytes do not match the manifest", path);
            if (coverage.ok()) {
                // same set of names: the stored order must also agree
                std::vector<std::string> manifest_order;
                for (const manifest::Section& s : doc.entries) manifest_order.push_back(*s.name);
                std::vector<std::string> bundle_order;
                for (const archive::Entry& e : bundle.entries)
                    if (archive::classify(e.path) == archive::EntryClass::resource)
                        bundle_order.push_back(e.path);
                if (manifest_order != bundle_order)
                    fail(Reason::BAD_ORDER, "resource order differs from the manifest order");
            }
        } catch (const Error& e) {
            fail(Reason::MALFORMED_METADATA, e.what(), manifest_entry->path);
        }
    }

    if (report.failures.empty() && authenticated > 0) report.verdict = Verdict::VALID;
    return report;
}

/// File-level entry point: opens the store (wrong password is a hard
/// error), reads the bundle (a non-archive is a hard error), and runs
/// check_bundle.
inline Report check_file(const std::filesystem::path& bundle_path,
                         const std::filesystem::path& store_path, std::string_view store_password,
                         time::UtcSeconds at_time, const Options& options = {}) {
    store::TrustStore trust = store::open_store(store_path, store_password);
    std::ifstream in(bundle_path, std::ios::binary);
    if (!in) raise(Errc::io_failure, "cannot open bundle " + bundle_path.string());
    Bytes raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    archive::Bundle bundle = archive::read(view(raw));
    return check_bundle(bundle, trust, at_time, options);
}

// ---- report forms ----

inline std::string to_text(const Report& report) {
    std::string out = "report-version: 1\n";
    out += "verdict: ";
    out += report.valid() ? "VALID" : "INVALID";
    out += '\n';
    for (const SignerResult& s : report.signers) {
        out += "signer: " + s.alias + " path_ok=" + (s.path_ok ? "true" : "false");
        if (!s.dn.empty()) out += " dn=" + s.dn.to_string();
        out += '\n';
    }
    for (const Failure& f : report.failures) {
        out += "failure: " + std::string(reason_name(f.code));
        if (f.entry_path) out += " path=" + *f.entry_path;
        out += " detail=" + f.detail;
        out += '\n';
    }
    return out;
}

inline nlohmann::json to_json(const Report& report) {
    nlohmann::json signers = nlohmann::json::array();
    for (const SignerResult& s : report.signers)
        signers.push_back({{"alias", s.alias}, {"dn", s.dn.to_string()}, {"path_ok", s.path_ok}});
    nlohmann::json failures = nlohmann::json::array();
    for (const Failure& f : report.failures) {
        nlohmann::json item = {{"code", std::string(reason_name(f.code))}, {"detail", f.detail}};
        item["path"] = f.entry_path ? nlohmann::json(*f.entry_path) : nlohmann::json(nullptr);
        failures.push_back(std::move(item));
    }
    return nlohmann::json{{"report_version", 1},
                          {"verdict", report.valid() ? "VALID" : "INVALID"},
                          {"signers", std::move(signers)},
                          {"failures", std::move(failures)}};
}

} // namespace sfxs::validate
