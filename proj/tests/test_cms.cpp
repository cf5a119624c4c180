#include <catch2/catch_amalgamated.hpp>

#include "sfxs/cms.hpp"
#include "support.hpp"
#include "vectors.hpp"

using namespace sfxs;
using pki::CertificateView;
using pki::DistinguishedName;

namespace {

struct Identity {
    crypto::PrivateKey key;
    std::vector<CertificateView> chain;  // leaf first
};

Identity make_identity(crypto::KeyAlg alg, std::size_t chain_len) {
    Identity id;
    std::vector<crypto::PrivateKey> keys;
    std::vector<CertificateView> certs;  // root first while building
    for (std::size_t i = 0; i < chain_len; ++i) {
        bool is_leaf = i + 1 == chain_len;
        crypto::PrivateKey key = (is_leaf && alg == crypto::KeyAlg::dsa)
                                     ? crypto::PrivateKey(crypto::generate_dsa(crypto::dsa_group_1024()))
                                     : crypto::PrivateKey(crypto::generate_rsa(1024));
        pki::CertSpec spec;
        spec.subject = DistinguishedName::parse("CN=Link" + std::to_string(i) + ", O=CMS Test");
        spec.issuer = i == 0 ? spec.subject : certs[i - 1].subject;
        spec.serial = crypto::random_bytes(6);
        spec.serial[0] = static_cast<std::uint8_t>(0x10 + i);
        spec.not_before = 1577836800;
        spec.not_after = 2524608000;
        spec.subject_key = crypto::public_part(key);
        spec.is_ca = !is_leaf;
        const crypto::PrivateKey& signer = i == 0 ? key : keys[i - 1];
        spec.sig_alg = crypto::key_alg(signer) == crypto::KeyAlg::rsa ? crypto::SigAlg::rsa_sha256
                                                                      : crypto::SigAlg::dsa_sha1;
        certs.push_back(pki::parse_certificate(view(pki::build_certificate(spec, signer))));
        keys.push_back(std::move(key));
    }
    id.key = keys.back();
    id.chain.assign(certs.rbegin(), certs.rend());
    return id;
}

} // namespace

TEST_CASE("sign, encode, decode and verify round trip") {
    auto run = [](crypto::KeyAlg alg, crypto::SigAlg sig_alg) {
        Identity id = make_identity(alg, 2);
        Bytes content = to_bytes("Signature-Version: 1.0\r\n\r\n");
        cms::SignedDataDoc doc = cms::build_signed_data(view(content), id.chain, id.key, sig_alg);
        CHECK(doc.version == 1);
        CHECK_FALSE(doc.content.has_value());
        REQUIRE(doc.signer_infos.size() == 1);
        CHECK(doc.signer_infos[0].sig_alg == sig_alg);
        CHECK(doc.certificates.size() == 2);
        CHECK(doc.certificates[0].subject == id.chain[0].subject);  // leaf first

        Bytes encoded = cms::encode_signed_data(doc);
        cms::SignedDataDoc back = cms::decode_signed_data(view(encoded));
        CHECK(back == doc);
        CHECK(cms::encode_signed_data(back) == encoded);  // deterministic
        CHECK(cms::verify_signer_info(back, view(content), 0));
    };
    run(crypto::KeyAlg::rsa, crypto::SigAlg::rsa_sha256);
    run(crypto::KeyAlg::rsa, crypto::SigAlg::rsa_sha1);
    run(crypto::KeyAlg::dsa, crypto::SigAlg::dsa_sha1);
}

TEST_CASE("the outer content type is always the signed-data identifier") {
    Identity id = make_identity(crypto::KeyAlg::rsa, 1);
    Bytes encoded = cms::encode_signed_data(
        cms::build_signed_data(view("payload"), id.chain, id.key, crypto::SigAlg::rsa_sha256));
    std::string hex = hex_encode(view(encoded));
    CHECK(hex.find("06092a864886f70d010702") != std::string::npos);
    CHECK(hex.find("06092a864886f70d010702") < 24);  // right after the outer header
}

TEST_CASE("verification fails closed on any mutation") {
    Identity id = make_identity(crypto::KeyAlg::rsa, 2);
    Bytes content = to_bytes("detached content to protect");
    cms::SignedDataDoc doc =
        cms::build_signed_data(view(content), id.chain, id.key, crypto::SigAlg::rsa_sha256);

    SECTION("flipped content byte") {
        Bytes bad = content;
        bad[5] ^= 0x01;
        CHECK_FALSE(cms::verify_signer_info(doc, view(bad), 0));
    }
    SECTION("flipped signature byte") {
        doc.signer_infos[0].encrypted_digest[3] ^= 0x01;
        CHECK_FALSE(cms::verify_signer_info(doc, view(content), 0));
    }
    SECTION("missing signer certificate") {
        doc.certificates.erase(doc.certificates.begin());
        try {
            cms::verify_signer_info(doc, view(content), 0);
            FAIL("expected SignerCertificateMissing");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::signer_certificate_missing);
        }
    }
    SECTION("signer index out of range") {
        CHECK_THROWS_AS(cms::verify_signer_info(doc, view(content), 5), Error);
    }
}

TEST_CASE("embedded content is preserved when present") {
    Identity id = make_identity(crypto::KeyAlg::rsa, 1);
    cms::SignedDataDoc doc =
        cms::build_signed_data(view("body"), id.chain, id.key, crypto::SigAlg::rsa_sha256);
    doc.content = to_bytes("body");
    cms::SignedDataDoc back = cms::decode_signed_data(view(cms::encode_signed_data(doc)));
    REQUIRE(back.content.has_value());
    CHECK(to_string(view(*back.content)) == "body");
}

TEST_CASE("certificate list keeps chain order through the wire") {
    Identity id = make_identity(crypto::KeyAlg::rsa, 3);
    cms::SignedDataDoc doc =
        cms::build_signed_data(view("x"), id.chain, id.key, crypto::SigAlg::rsa_sha256);
    cms::SignedDataDoc back = cms::decode_signed_data(view(cms::encode_signed_data(doc)));
    REQUIRE(back.certificates.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(back.certificates[i].raw_der == id.chain[i].raw_der);
}

TEST_CASE("crls ride along untouched") {
    Identity id = make_identity(crypto::KeyAlg::rsa, 1);
    cms::SignedDataDoc doc =
        cms::build_signed_data(view("x"), id.chain, id.key, crypto::SigAlg::rsa_sha256);
    doc.crls.push_back(der::encode(der::seq({der::integer(42), der::utf8("placeholder")})));
    cms::SignedDataDoc back = cms::decode_signed_data(view(cms::encode_signed_data(doc)));
    REQUIRE(back.crls.size() == 1);
    CHECK(back.crls[0] == doc.crls[0]);
}

TEST_CASE("documents without signer infos are rejected") {
    // hand-built SignedData with an empty SignerInfos set
    der::Node body = der::seq({der::integer(1), der::set({}),
                               der::seq({der::oid(cms::oids::pkcs7_data)}), der::set({})});
    der::Node root = der::seq({der::oid(cms::oids::pkcs7_signed_data), der::context(0, {body})});
    try {
        cms::decode_signed_data(view(der::encode(root)));
        FAIL("expected MalformedCms");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::malformed_cms);
    }
}

TEST_CASE("unknown outer content types are rejected") {
    der::Node root = der::seq({der::oid(cms::oids::pkcs7_data), der::context(0, {der::seq({})})});
    try {
        cms::decode_signed_data(view(der::encode(root)));
        FAIL("expected MalformedCms");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::malformed_cms);
    }
}

TEST_CASE("algorithms outside the registry are rejected") {
    // digest algorithm MD5 (1.2.840.113549.2.5)
    der::Node md5 = der::seq({der::oid(der::Oid{{1, 2, 840, 113549, 2, 5}}), der::null()});
    der::Node si = der::seq({der::integer(1),
                             der::seq({pki::dn_to_der(DistinguishedName::parse("CN=X")),
                                       der::integer(9)}),
                             md5, md5, der::octet_string(to_bytes("sig"))});
    der::Node body = der::seq({der::integer(1), der::set({md5}),
                               der::seq({der::oid(cms::oids::pkcs7_data)}), der::set({si})});
    der::Node root = der::seq({der::oid(cms::oids::pkcs7_signed_data), der::context(0, {body})});
    try {
        cms::decode_signed_data(view(der::encode(root)));
        FAIL("expected UnsupportedAlgorithm");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unsupported_algorithm);
    }
}

TEST_CASE("signing key must match the leaf certificate") {
    Identity id = make_identity(crypto::KeyAlg::rsa, 1);
    crypto::PrivateKey stranger = crypto::generate_rsa(1024);
    try {
        cms::build_signed_data(view("x"), id.chain, stranger, crypto::SigAlg::rsa_sha256);
        FAIL("expected KeyAlgorithmMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::key_algorithm_mismatch);
    }
    CHECK_THROWS_AS(cms::build_signed_data(view("x"), id.chain, id.key, crypto::SigAlg::dsa_sha1),
                    Error);
    CHECK_THROWS_AS(cms::build_signed_data(view("x"), {}, id.key, crypto::SigAlg::rsa_sha256), Error);
}

TEST_CASE("detached documents produced by another implementation verify") {
    Bytes raw = support::read_fixture("pkcs7_detached.p7s");
    Bytes content = support::read_fixture("pkcs7_content.bin");
    cms::SignedDataDoc doc = cms::decode_signed_data(view(raw));
    CHECK_FALSE(doc.content.has_value());
    REQUIRE(doc.signer_infos.size() == 1);
    CHECK(doc.certificates.size() == 3);
    CHECK(doc.signer_infos[0].sig_alg == crypto::SigAlg::rsa_sha256);
    CHECK(cms::verify_signer_info(doc, view(content), 0));

    Bytes tampered = content;
    tampered[0] ^= 0x01;
    CHECK_FALSE(cms::verify_signer_info(doc, view(tampered), 0));
}

TEST_CASE("single-byte mutations never survive decode, verify and path building") {
    Identity id = make_identity(crypto::KeyAlg::rsa, 2);
    Bytes content = to_bytes("content under protection");
    Bytes encoded = cms::encode_signed_data(
        cms::build_signed_data(view(content), id.chain, id.key, crypto::SigAlg::rsa_sha256));
    pki::TrustInput trust;
    trust.trusted.push_back(id.chain.back());  // the genuine root

    support::Rng rng(0x3a11);
    int decode_failures = 0, verify_failures = 0, path_failures = 0, survived = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Bytes mutated = encoded;
        std::size_t at = rng.below(mutated.size());
        std::uint8_t bit = static_cast<std::uint8_t>(1u << rng.below(8));
        mutated[at] ^= bit;
        try {
            cms::SignedDataDoc doc = cms::decode_signed_data(view(mutated));
            if (!cms::verify_signer_info(doc, view(content), 0)) {
                ++verify_failures;
                continue;
            }
            // what slips past the document layer must die at the trust layer
            const pki::CertificateView* leaf =
                cms::find_signer_certificate(doc, doc.signer_infos[0]);
            REQUIRE(leaf != nullptr);
            try {
                pki::CertPath path = pki::build_path(*leaf, doc.certificates, trust);
                if (pki::validate_path(path, 1609459200).ok)
                    ++survived;
                else
                    ++path_failures;
            } catch (const Error&) {
                ++path_failures;
            }
        } catch (const Error&) {
            ++decode_failures;
        }
    }
    CHECK(decode_failures + verify_failures + path_failures == 300);
    CHECK(survived == 0);
}
