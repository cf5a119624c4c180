#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sfxs/bytes.hpp"
#include "sfxs/crypto.hpp"
#include "sfxs/der.hpp"
#include "sfxs/error.hpp"
#include "sfxs/pki.hpp"

namespace sfxs::cms {

namespace oids {
inline const der::Oid pkcs7_data{{1, 2, 840, 113549, 1, 7, 1}};
inline const der::Oid pkcs7_signed_data{{1, 2, 840, 113549, 1, 7, 2}};
} // namespace oids

struct SignerInfoRec {
    pki::DistinguishedName issuer;
    Bytes serial;
    crypto::HashAlg digest_alg = crypto::HashAlg::sha256;
    crypto::SigAlg sig_alg = crypto::SigAlg::rsa_sha256;
    Bytes encrypted_digest;

    bool operator==(const SignerInfoRec&) const = default;
};

/// CMS signed-data content. Signature block files always use the detached
/// form (content absent).
struct SignedDataDoc {
    std::int64_t version = 1;
    std::vector<crypto::HashAlg> digest_algs;
    der::Oid content_type = oids::pkcs7_data;
    std::optional<Bytes> content;
    std::vector<pki::CertificateView> certificates;  // leaf first
    std::vector<Bytes> crls;                         // carried opaquely, never evaluated
    std::vector<SignerInfoRec> signer_infos;

    bool operator==(const SignedDataDoc&) const = default;
};

namespace detail {

inline der::Node digest_alg_to_der(crypto::HashAlg alg) {
    return der::seq({der::oid(alg == crypto::HashAlg::sha1 ? pki::oids::sha1 : pki::oids::sha256),
                     der::null()});
}

// parameters must be absent or NULL; anything else is a broken document
inline void check_algid_params(const der::Node& algid) {
    der::expect(algid.is_universal(der::kSequence) && !algid.children.empty() &&
                    algid.children.size() <= 2,
                Errc::malformed_cms, "bad AlgorithmIdentifier");
    if (algid.children.size() == 2)
        der::expect(algid.children[1].is_universal(der::kNull), Errc::malformed_cms,
                    "unexpected AlgorithmIdentifier parameters");
}

inline crypto::HashAlg digest_alg_from_der(const der::Node& algid) {
    check_algid_params(algid);
    der::Oid oid = der::oid_value(algid.children[0], Errc::malformed_cms);
    if (oid == pki::oids::sha1) return crypto::HashAlg::sha1;
    if (oid == pki::oids::sha256) return crypto::HashAlg::sha256;
    raise(Errc::unsupported_algorithm, "digest algorithm outside the registry: " + oid.to_string());
}

/// Signature algorithm resolution accepts both conventions seen in the
/// wild: the bare key algorithm (with the hash taken from the digest
/// field) and the combined hash-plus-key identifiers.
inline crypto::SigAlg sig_alg_from_der(const der::Node& algid, crypto::HashAlg digest_alg) {
    check_algid_params(algid);
    der::Oid oid = der::oid_value(algid.children[0], Errc::malformed_cms);
    if (oid == pki::oids::sha1_with_rsa) return crypto::SigAlg::rsa_sha1;
    if (oid == pki::oids::sha256_with_rsa) return crypto::SigAlg::rsa_sha256;
    if (oid == pki::oids::dsa_with_sha1) return crypto::SigAlg::dsa_sha1;
    if (oid == pki::oids::rsa_encryption)
        return digest_alg == crypto::HashAlg::sha1 ? crypto::SigAlg::rsa_sha1
                                                   : crypto::SigAlg::rsa_sha256;
    if (oid == pki::oids::dsa) {
        if (digest_alg != crypto::HashAlg::sha1)
            raise(Errc::unsupported_algorithm, "DSA is only registered with SHA-1");
        return crypto::SigAlg::dsa_sha1;
    }
    raise(Errc::unsupported_algorithm, "signature algorithm outside the registry: " + oid.to_string());
}

inline der::Node signer_info_to_der(const SignerInfoRec& si) {
    return der::seq({der::integer(1),
                     der::seq({pki::dn_to_der(si.issuer), der::integer_bytes(view(si.serial))}),
                     digest_alg_to_der(si.digest_alg), pki::detail::sig_alg_to_der(si.sig_alg),
                     der::octet_string(si.encrypted_digest)});
}

inline SignerInfoRec signer_info_from_der(const der::Node& node) {
    der::expect(node.is_universal(der::kSequence) && node.children.size() == 5, Errc::malformed_cms,
                "SignerInfo must hold version, sid, digest, signature algorithm, signature");
    SignerInfoRec si;
    der::expect(der::integer_value(node.children[0], Errc::malformed_cms) == 1, Errc::malformed_cms,
                "unsupported SignerInfo version");
    const der::Node& sid = node.children[1];
    der::expect(sid.is_universal(der::kSequence) && sid.children.size() == 2, Errc::malformed_cms,
                "bad IssuerAndSerialNumber");
    si.issuer = pki::dn_from_der(sid.children[0], /*strict=*/true);
    si.serial = der::integer_magnitude(sid.children[1], Errc::malformed_cms);
    si.digest_alg = digest_alg_from_der(node.children[2]);
    si.sig_alg = sig_alg_from_der(node.children[3], si.digest_alg);
    der::expect(node.children[4].is_universal(der::kOctetString), Errc::malformed_cms,
                "signature must be an OCTET STRING");
    si.encrypted_digest = node.children[4].primitive;
    return si;
}

inline void check_invariants(const SignedDataDoc& doc) {
    if (doc.signer_infos.empty()) raise(Errc::malformed_cms, "signed-data needs at least one signer");
    for (const SignerInfoRec& si : doc.signer_infos) {
        if (std::find(doc.digest_algs.begin(), doc.digest_algs.end(), si.digest_alg) ==
            doc.digest_algs.end())
            raise(Errc::malformed_cms, "signer digest algorithm missing from digestAlgorithms");
    }
}

} // namespace detail

/// Detached signature over `detached_content`: one signer info, the full
/// certificate chain (leaf first), no embedded content.
inline SignedDataDoc build_signed_data(ByteView detached_content,
                                       std::span<const pki::CertificateView> chain,
                                       const crypto::PrivateKey& private_key, crypto::SigAlg sig_alg) {
    if (chain.empty()) raise(Errc::invalid_argument, "certificate chain must not be empty");
    if (crypto::sig_key_alg(sig_alg) != crypto::key_alg(private_key))
        raise(Errc::key_algorithm_mismatch, "signature algorithm does not match the private key");
    if (crypto::public_part(private_key) != chain[0].public_key)
        raise(Errc::key_algorithm_mismatch, "private key does not match the leaf certificate");

    SignedDataDoc doc;
    doc.digest_algs = {crypto::sig_hash(sig_alg)};
    doc.certificates.assign(chain.begin(), chain.end());
    SignerInfoRec si;
    si.issuer = chain[0].issuer;
    si.serial = chain[0].serial;
    si.digest_alg = crypto::sig_hash(sig_alg);
    si.sig_alg = sig_alg;
    si.encrypted_digest = crypto::sign(private_key, sig_alg, detached_content);
    doc.signer_infos.push_back(std::move(si));
    return doc;
}

inline Bytes encode_signed_data(const SignedDataDoc& doc) {
    detail::check_invariants(doc);
    std::vector<der::Node> digest_algs;
    for (crypto::HashAlg alg : doc.digest_algs) digest_algs.push_back(detail::digest_alg_to_der(alg));

    std::vector<der::Node> encap;
    encap.push_back(der::oid(doc.content_type));
    if (doc.content) encap.push_back(der::context(0, {der::octet_string(*doc.content)}));

    std::vector<der::Node> body;
    body.push_back(der::integer(doc.version));
    body.push_back(der::set(std::move(digest_algs)));
    body.push_back(der::seq(std::move(encap)));
    if (!doc.certificates.empty()) {
        // chain order is preserved; certificates re-encode byte-exactly
        der::Node certs;
        certs.tag_class = der::TagClass::context;
        certs.tag_number = 0;
        certs.constructed = true;
        for (const pki::CertificateView& c : doc.certificates)
            certs.children.push_back(der::decode(view(c.raw_der)));
        body.push_back(std::move(certs));
    }
    if (!doc.crls.empty()) {
        der::Node crls;
        crls.tag_class = der::TagClass::context;
        crls.tag_number = 1;
        crls.constructed = true;
        for (const Bytes& crl : doc.crls) crls.children.push_back(der::decode(view(crl)));
        body.push_back(std::move(crls));
    }
    std::vector<der::Node> signer_infos;
    for (const SignerInfoRec& si : doc.signer_infos)
        signer_infos.push_back(detail::signer_info_to_der(si));
    body.push_back(der::set(std::move(signer_infos)));

    der::Node content_info =
        der::seq({der::oid(oids::pkcs7_signed_data), der::context(0, {der::seq(std::move(body))})});
    return der::encode(content_info);
}

inline SignedDataDoc decode_signed_data(ByteView raw) {
    der::Node root = der::decode(raw);
    der::expect(root.is_universal(der::kSequence) && root.children.size() == 2, Errc::malformed_cms,
                "bad ContentInfo");
    der::Oid outer_type = der::oid_value(root.children[0], Errc::malformed_cms);
    if (!(outer_type == oids::pkcs7_signed_data))
        raise(Errc::malformed_cms, "unknown content type " + outer_type.to_string());
    der::expect(root.children[1].is_context(0) && root.children[1].constructed &&
                    root.children[1].children.size() == 1,
                Errc::malformed_cms, "bad ContentInfo payload");
    const der::Node& body = root.children[1].children[0];
    der::expect(body.is_universal(der::kSequence) && body.children.size() >= 4, Errc::malformed_cms,
                "short SignedData");

    SignedDataDoc doc;
    std::size_t i = 0;
    doc.version = der::integer_value(body.children[i++], Errc::malformed_cms);
    der::expect(doc.version == 1, Errc::malformed_cms, "unsupported SignedData version");

    const der::Node& algs = body.children[i++];
    der::expect(algs.is_universal(der::kSet), Errc::malformed_cms, "digestAlgorithms must be a SET");
    for (const der::Node& alg : algs.children) doc.digest_algs.push_back(detail::digest_alg_from_der(alg));

    const der::Node& encap = body.children[i++];
    der::expect(encap.is_universal(der::kSequence) && !encap.children.empty() &&
                    encap.children.size() <= 2,
                Errc::malformed_cms, "bad EncapsulatedContentInfo");
    doc.content_type = der::oid_value(encap.children[0], Errc::malformed_cms);
    der::expect(doc.content_type == oids::pkcs7_data, Errc::malformed_cms,
                "unknown encapsulated content type");
    if (encap.children.size() == 2) {
        const der::Node& wrapper = encap.children[1];
        der::expect(wrapper.is_context(0) && wrapper.constructed && wrapper.children.size() == 1 &&
                        wrapper.children[0].is_universal(der::kOctetString),
                    Errc::malformed_cms, "bad eContent");
        doc.content = wrapper.children[0].primitive;
    }

    if (i < body.children.size() && body.children[i].is_context(0)) {
        for (const der::Node& cert_node : body.children[i].children) {
            try {
                doc.certificates.push_back(pki::parse_certificate(view(der::encode(cert_node))));
            } catch (const Error& e) {
                if (e.code() == Errc::unsupported_algorithm) throw;
                raise(Errc::malformed_cms, e.what());
            }
        }
        ++i;
    }
    if (i < body.children.size() && body.children[i].is_context(1)) {
        for (const der::Node& crl_node : body.children[i].children)
            doc.crls.push_back(der::encode(crl_node));
        ++i;
    }
    der::expect(i + 1 == body.children.size() && body.children[i].is_universal(der::kSet),
                Errc::malformed_cms, "missing SignerInfos");
    for (const der::Node& si : body.children[i].children)
        doc.signer_infos.push_back(detail::signer_info_from_der(si));

    detail::check_invariants(doc);
    return doc;
}

/// The certificate a signer info points at via issuer-and-serial, if it
/// is carried in the document.
inline const pki::CertificateView* find_signer_certificate(const SignedDataDoc& doc,
                                                           const SignerInfoRec& si) {
    for (const pki::CertificateView& c : doc.certificates)
        if (c.issuer == si.issuer && c.serial == si.serial) return &c;
    return nullptr;
}

/// True iff the indexed signer's signature verifies over the detached
/// content under that signer's certificate, and the carried certificates
/// form exactly that signer's verified subject-to-issuer chain: each link
/// must verify under the next, a self-issued terminal must verify itself,
/// and no stray certificate may remain. A chain whose root lives outside
/// the document is closed by the trust layer, not here.
inline bool verify_signer_info(const SignedDataDoc& doc, ByteView detached_content,
                               std::size_t signer_index) {
    if (signer_index >= doc.signer_infos.size())
        raise(Errc::invalid_argument, "signer index out of range");
    const SignerInfoRec& si = doc.signer_infos[signer_index];
    const pki::CertificateView* cert = find_signer_certificate(doc, si);
    if (!cert) raise(Errc::signer_certificate_missing, "no certificate matches the signer info");

    std::vector<const pki::CertificateView*> remaining;
    for (const pki::CertificateView& c : doc.certificates)
        if (&c != cert) remaining.push_back(&c);
    const pki::CertificateView* current = cert;
    for (std::size_t depth = 0; depth <= doc.certificates.size(); ++depth) {
        if (current->self_issued()) {
            if (!crypto::verify(current->public_key, current->sig_alg, view(current->raw_tbs),
                                view(current->signature)))
                return false;
            break;
        }
        const pki::CertificateView* next = nullptr;
        for (const pki::CertificateView* c : remaining) {
            if (c->subject != current->issuer) continue;
            // a certificate that claims the issuer name must actually verify
            if (!crypto::verify(c->public_key, current->sig_alg, view(current->raw_tbs),
                                view(current->signature)))
                return false;
            next = c;
            break;
        }
        if (!next) break;  // issuer lives outside the document
        remaining.erase(std::find(remaining.begin(), remaining.end(), next));
        current = next;
    }
    if (!remaining.empty()) return false;  // stray certificates are not tolerated

    return crypto::verify(cert->public_key, si.sig_alg, detached_content, view(si.encrypted_digest));
}

} // namespace sfxs::cms
