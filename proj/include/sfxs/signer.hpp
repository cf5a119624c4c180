#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "sfxs/archive.hpp"
#include "sfxs/cms.hpp"
#include "sfxs/error.hpp"
#include "sfxs/manifest.hpp"
#include "sfxs/truststore.hpp"

namespace sfxs::sign {

struct SignRequest {
    archive::Bundle input;
    store::SigningIdentity identity;
    manifest::DigestAlg digest_alg = manifest::DigestAlg::sha256;
};

inline bool valid_alias(std::string_view alias) {
    if (alias.empty() || alias.size() > 64) return false;
    return std::all_of(alias.begin(), alias.end(), [](unsigned char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '-';
    });
}

/// Metadata file names for a signer: the capitalized alias with the .SF
/// extension, and the block file named after the encryption algorithm.
inline std::pair<std::string, std::string> signer_file_names(std::string_view alias,
                                                             crypto::KeyAlg algorithm) {
    if (!valid_alias(alias)) raise(Errc::invalid_alias, "alias may only use letters, digits, '_' and '-'");
    std::string upper = archive::detail::upper(alias);
    std::string sf = "META-INF/" + upper + ".SF";
    std::string block = "META-INF/" + upper + (algorithm == crypto::KeyAlg::rsa ? ".RSA" : ".DSA");
    return {sf, block};
}

/// Signature algorithm implied by a key type and requested digest. DSA is
/// registered with SHA-1 only.
inline crypto::SigAlg signature_alg_for(crypto::KeyAlg key, manifest::DigestAlg digest) {
    if (key == crypto::KeyAlg::dsa) return crypto::SigAlg::dsa_sha1;
    return digest == manifest::DigestAlg::sha1 ? crypto::SigAlg::rsa_sha1 : crypto::SigAlg::rsa_sha256;
}

/// Signs a bundle: manifest, per-signer signature file, CMS signature
/// block, then the archive reassembled with the metadata sorted first.
/// A previously signed input keeps its manifest and existing signer
/// pairs; the new pair is appended after them.
inline archive::Bundle sign_bundle(const SignRequest& request) {
    const store::SigningIdentity& identity = request.identity;
    if (identity.certificate_chain.empty())
        raise(Errc::invalid_argument, "signing identity has no certificate chain");
    auto [sf_path, block_path] = signer_file_names(identity.alias, identity.algorithm);

    const archive::Bundle& input = request.input;
    bool has_metadata = std::any_of(input.entries.begin(), input.entries.end(), [](const auto& e) {
        return archive::classify(e.path) != archive::EntryClass::resource;
    });

    archive::Entry manifest_entry;
    std::vector<archive::Entry> existing_pairs;
    std::vector<const archive::Entry*> resources;

    if (!has_metadata) {
        manifest::ManifestDoc doc = manifest::generate_manifest(input, request.digest_alg);
        manifest_entry.path = "META-INF/MANIFEST.MF";
        manifest_entry.content = manifest::serialize(doc);
        manifest_entry.compression = archive::Compression::deflated;
        for (const archive::Entry& e : input.entries) resources.push_back(&e);
    } else {
        archive::OrderReport order = archive::check_order(input);
        if (!order.ok)
            raise(Errc::unsignable_input, "previously signed input is malformed: " + order.detail);
        manifest_entry = input.entries[0];
        manifest::ManifestDoc doc;
        try {
            doc = manifest::to_manifest(manifest::parse(view(manifest_entry.content)));
        } catch (const Error& e) {
            raise(Errc::unsignable_input, std::string("existing manifest does not parse: ") + e.what());
        }
        // the shared manifest is reused as-is; it must still match the resources
        if (!manifest::verify_coverage(input, doc).ok())
            raise(Errc::stale_manifest, "existing manifest does not match the resources");
        for (const archive::Entry& e : input.entries) {
            switch (archive::classify(e.path)) {
            case archive::EntryClass::manifest:
                break;
            case archive::EntryClass::signature_file:
                if (archive::metadata_stem(e.path) == archive::metadata_stem(sf_path))
                    raise(Errc::duplicate_signer, identity.alias + " has already signed this bundle");
                [[fallthrough]];
            case archive::EntryClass::signature_block:
                existing_pairs.push_back(e);
                break;
            case archive::EntryClass::resource:
                resources.push_back(&e);
                break;
            }
        }
    }

    manifest::SignatureFileDoc sf =
        manifest::generate_signature_file(view(manifest_entry.content), request.digest_alg);
    Bytes sf_bytes = manifest::serialize(sf);

    crypto::SigAlg sig_alg = signature_alg_for(identity.algorithm, request.digest_alg);
    cms::SignedDataDoc block = cms::build_signed_data(view(sf_bytes), identity.certificate_chain,
                                                      identity.private_key, sig_alg);
    Bytes block_bytes = cms::encode_signed_data(block);

    archive::Bundle output;
    output.entries.reserve(resources.size() + existing_pairs.size() + 3);
    output.entries.push_back(std::move(manifest_entry));
    for (archive::Entry& e : existing_pairs) output.entries.push_back(std::move(e));
    output.entries.push_back({sf_path, std::move(sf_bytes), archive::Compression::deflated});
    output.entries.push_back({block_path, std::move(block_bytes), archive::Compression::deflated});
    for (const archive::Entry* e : resources) output.entries.push_back(*e);
    return output;
}

} // namespace sfxs::sign
