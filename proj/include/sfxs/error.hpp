#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sfxs {

/// Failure categories surfaced by the library. Verdict-style results
/// (order reports, coverage reports, validation reports) are plain data
/// and never raised as errors.
enum class Errc {
    // archive
    malformed_archive,
    unsupported_feature,
    invalid_bundle,
    // manifest
    malformed_manifest,
    // der
    tag_too_large,
    truncated,
    non_canonical,
    trailing_garbage,
    malformed_oid,
    // pki
    malformed_certificate,
    unsupported_algorithm,
    no_trust_anchor,
    ambiguous_issuer,
    cycle_detected,
    // cms
    key_algorithm_mismatch,
    malformed_cms,
    signer_certificate_missing,
    // trust store
    bad_password,
    bad_key_password,
    malformed_store,
    alias_exists,
    no_such_alias,
    issuer_not_ca,
    not_a_key_pair,
    // signer
    stale_manifest,
    duplicate_signer,
    unsignable_input,
    invalid_alias,
    // repository
    validation_failed,
    index_corrupt,
    // misc
    io_failure,
    invalid_argument,
};

constexpr std::string_view errc_name(Errc c) {
    switch (c) {
    case Errc::malformed_archive: return "MalformedArchive";
    case Errc::unsupported_feature: return "UnsupportedFeature";
    case Errc::invalid_bundle: return "InvalidBundle";
    case Errc::malformed_manifest: return "MalformedManifest";
    case Errc::tag_too_large: return "TagTooLarge";
    case Errc::truncated: return "Truncated";
    case Errc::non_canonical: return "NonCanonical";
    case Errc::trailing_garbage: return "TrailingGarbage";
    case Errc::malformed_oid: return "MalformedOid";
    case Errc::malformed_certificate: return "MalformedCertificate";
    case Errc::unsupported_algorithm: return "UnsupportedAlgorithm";
    case Errc::no_trust_anchor: return "NoTrustAnchor";
    case Errc::ambiguous_issuer: return "AmbiguousIssuer";
    case Errc::cycle_detected: return "CycleDetected";
    case Errc::key_algorithm_mismatch: return "KeyAlgorithmMismatch";
    case Errc::malformed_cms: return "MalformedCms";
    case Errc::signer_certificate_missing: return "SignerCertificateMissing";
    case Errc::bad_password: return "BadPassword";
    case Errc::bad_key_password: return "BadKeyPassword";
    case Errc::malformed_store: return "MalformedStore";
    case Errc::alias_exists: return "AliasExists";
    case Errc::no_such_alias: return "NoSuchAlias";
    case Errc::issuer_not_ca: return "IssuerNotCa";
    case Errc::not_a_key_pair: return "NotAKeyPair";
    case Errc::stale_manifest: return "StaleManifest";
    case Errc::duplicate_signer: return "DuplicateSigner";
    case Errc::unsignable_input: return "UnsignableInput";
    case Errc::invalid_alias: return "InvalidAlias";
    case Errc::validation_failed: return "ValidationFailed";
    case Errc::index_corrupt: return "IndexCorrupt";
    case Errc::io_failure: return "IoFailure";
    case Errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace sfxs
