#include <catch2/catch_amalgamated.hpp>

#include "sfxs/crypto.hpp"
#include "support.hpp"
#include "vectors.hpp"

using namespace sfxs;

TEST_CASE("digest primitives match the reference values") {
    auto check = [](crypto::HashAlg alg, std::string_view msg, std::string_view hex,
                    std::string_view b64) {
        Bytes d = crypto::digest(alg, view(msg));
        CHECK(hex_encode(view(d)) == hex);
        CHECK(base64_encode(view(d)) == b64);
    };
    check(crypto::HashAlg::sha1, "", vectors::sha1_empty_hex, vectors::sha1_empty_b64);
    check(crypto::HashAlg::sha256, "", vectors::sha256_empty_hex, vectors::sha256_empty_b64);
    check(crypto::HashAlg::sha1, "abc", vectors::sha1_abc_hex, vectors::sha1_abc_b64);
    check(crypto::HashAlg::sha256, "abc", vectors::sha256_abc_hex, vectors::sha256_abc_b64);
    check(crypto::HashAlg::sha1, "hello", vectors::sha1_hello_hex, vectors::sha1_hello_b64);
    check(crypto::HashAlg::sha256, "hello", vectors::sha256_hello_hex, vectors::sha256_hello_b64);
    CHECK(crypto::digest_size(crypto::HashAlg::sha1) == 20);
    CHECK(crypto::digest_size(crypto::HashAlg::sha256) == 32);
}

TEST_CASE("hmac and pbkdf2 match the reference values") {
    CHECK(hex_encode(view(crypto::hmac_sha256(
              view("key"), view("The quick brown fox jumps over the lazy dog")))) ==
          vectors::hmac_sha256_key_msg_hex);
    CHECK(hex_encode(view(crypto::pbkdf2_sha256("password", view("salt"), 4096, 32))) ==
          vectors::pbkdf2_password_salt_4096_32_hex);
}

TEST_CASE("aes-256-gcm seals and opens") {
    Bytes key = crypto::random_bytes(32);
    Bytes aad = to_bytes("header");
    Bytes plain = to_bytes("attack at dawn");
    crypto::GcmBox box = crypto::aes256gcm_seal(view(key), view(plain), view(aad));
    auto open = crypto::aes256gcm_open(view(key), box, view(aad));
    REQUIRE(open.has_value());
    CHECK(*open == plain);

    SECTION("any tampering fails authentication") {
        crypto::GcmBox bad = box;
        bad.ciphertext[0] ^= 0x01;
        CHECK_FALSE(crypto::aes256gcm_open(view(key), bad, view(aad)).has_value());
        CHECK_FALSE(crypto::aes256gcm_open(view(key), box, view("other")).has_value());
        Bytes other_key = crypto::random_bytes(32);
        CHECK_FALSE(crypto::aes256gcm_open(view(other_key), box, view(aad)).has_value());
    }
    SECTION("empty plaintext round trips") {
        crypto::GcmBox empty = crypto::aes256gcm_seal(view(key), {}, {});
        auto back = crypto::aes256gcm_open(view(key), empty, {});
        REQUIRE(back.has_value());
        CHECK(back->empty());
    }
}

TEST_CASE("rsa signing matches an independently produced signature") {
    crypto::RsaPrivateKey key;
    key.pub.n = hex_decode(std::string(vectors::leaf_rsa_n));
    key.pub.e = hex_decode(std::string(vectors::leaf_rsa_e));
    key.d = hex_decode(std::string(vectors::leaf_rsa_d));

    Bytes sig = crypto::sign(key, crypto::SigAlg::rsa_sha256, view("hello world"));
    CHECK(hex_encode(view(sig)) == vectors::leaf_sig_sha256_hello_world);
    CHECK(crypto::verify(key.pub, crypto::SigAlg::rsa_sha256, view("hello world"), view(sig)));
    CHECK_FALSE(crypto::verify(key.pub, crypto::SigAlg::rsa_sha256, view("hello worle"), view(sig)));
}

TEST_CASE("rsa sign/verify round trip across both digests") {
    crypto::RsaPrivateKey key = crypto::generate_rsa(1024);
    for (crypto::SigAlg alg : {crypto::SigAlg::rsa_sha1, crypto::SigAlg::rsa_sha256}) {
        Bytes msg = to_bytes("a message to protect");
        Bytes sig = crypto::sign(key, alg, view(msg));
        CHECK(crypto::verify(key.pub, alg, view(msg), view(sig)));
        Bytes tampered = msg;
        tampered[3] ^= 0x40;
        CHECK_FALSE(crypto::verify(key.pub, alg, view(tampered), view(sig)));
        Bytes broken = sig;
        broken[7] ^= 0x01;
        CHECK_FALSE(crypto::verify(key.pub, alg, view(msg), view(broken)));
    }
}

TEST_CASE("dsa signatures are deterministic and verify") {
    crypto::DsaPrivateKey key = crypto::generate_dsa(crypto::dsa_group_1024());
    Bytes msg = to_bytes("sign me twice");
    Bytes sig1 = crypto::sign(key, crypto::SigAlg::dsa_sha1, view(msg));
    Bytes sig2 = crypto::sign(key, crypto::SigAlg::dsa_sha1, view(msg));
    CHECK(sig1 == sig2);  // deterministic nonce derivation
    CHECK(crypto::verify(key.pub, crypto::SigAlg::dsa_sha1, view(msg), view(sig1)));

    Bytes other = crypto::sign(key, crypto::SigAlg::dsa_sha1, view("different message"));
    CHECK(other != sig1);
    CHECK_FALSE(crypto::verify(key.pub, crypto::SigAlg::dsa_sha1, view(msg), view(other)));

    Bytes broken = sig1;
    broken[broken.size() / 2] ^= 0x10;
    CHECK_FALSE(crypto::verify(key.pub, crypto::SigAlg::dsa_sha1, view(msg), view(broken)));
    CHECK_FALSE(crypto::verify(key.pub, crypto::SigAlg::dsa_sha1, view(msg), view("garbage")));
}

TEST_CASE("dsa works over the larger shared group") {
    crypto::DsaPrivateKey key = crypto::generate_dsa(crypto::dsa_group_2048());
    Bytes msg = to_bytes("bigger group");
    Bytes sig = crypto::sign(key, crypto::SigAlg::dsa_sha1, view(msg));
    CHECK(crypto::verify(key.pub, crypto::SigAlg::dsa_sha1, view(msg), view(sig)));
}

TEST_CASE("key and algorithm families must agree") {
    crypto::RsaPrivateKey rsa = crypto::generate_rsa(1024);
    crypto::DsaPrivateKey dsa = crypto::generate_dsa(crypto::dsa_group_1024());
    CHECK_THROWS_AS(crypto::sign(crypto::PrivateKey(rsa), crypto::SigAlg::dsa_sha1, view("x")), Error);
    CHECK_THROWS_AS(crypto::sign(crypto::PrivateKey(dsa), crypto::SigAlg::rsa_sha256, view("x")), Error);
    Bytes sig = crypto::sign(rsa, crypto::SigAlg::rsa_sha256, view("x"));
    CHECK_FALSE(crypto::verify(crypto::PublicKey(dsa.pub), crypto::SigAlg::rsa_sha256, view("x"), view(sig)));
    CHECK_FALSE(crypto::verify(crypto::PublicKey(dsa.pub), crypto::SigAlg::dsa_sha1, view("x"), view(sig)));
}

TEST_CASE("fresh dsa keys differ while sharing the group") {
    crypto::DsaPrivateKey a = crypto::generate_dsa(crypto::dsa_group_1024());
    crypto::DsaPrivateKey b = crypto::generate_dsa(crypto::dsa_group_1024());
    CHECK(a.pub.params == b.pub.params);
    CHECK(a.x != b.x);
    CHECK(a.pub.y != b.pub.y);
}
