#pragma once

#include <memory>
#include <optional>
#include <variant>

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/param_build.h>
#include <openssl/rand.h>
#include <openssl/rsa.h>

#include "sfxs/bytes.hpp"
#include "sfxs/der.hpp"
#include "sfxs/error.hpp"

namespace sfxs::crypto {

enum class HashAlg { sha1, sha256 };
enum class KeyAlg { rsa, dsa };

/// The signature algorithm registry. Anything outside this set is
/// rejected as UnsupportedAlgorithm by the layers above.
enum class SigAlg { rsa_sha1, rsa_sha256, dsa_sha1 };

constexpr std::size_t digest_size(HashAlg alg) {
    return alg == HashAlg::sha1 ? 20 : 32;
}

constexpr HashAlg sig_hash(SigAlg alg) {
    switch (alg) {
    case SigAlg::rsa_sha1: return HashAlg::sha1;
    case SigAlg::rsa_sha256: return HashAlg::sha256;
    case SigAlg::dsa_sha1: return HashAlg::sha1;
    }
    return HashAlg::sha256;
}

constexpr KeyAlg sig_key_alg(SigAlg alg) {
    return alg == SigAlg::dsa_sha1 ? KeyAlg::dsa : KeyAlg::rsa;
}

constexpr std::string_view key_alg_name(KeyAlg alg) {
    return alg == KeyAlg::rsa ? "RSA" : "DSA";
}

namespace detail {

[[noreturn]] inline void fail(const char* what) {
    raise(Errc::invalid_argument, std::string(what) + " failed");
}

inline const EVP_MD* md_of(HashAlg alg) {
    return alg == HashAlg::sha1 ? EVP_sha1() : EVP_sha256();
}

struct BnDeleter {
    void operator()(BIGNUM* p) const { BN_clear_free(p); }
};
struct BnCtxDeleter {
    void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
struct PkeyDeleter {
    void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct PkeyCtxDeleter {
    void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); }
};
struct MdCtxDeleter {
    void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
};
struct CipherCtxDeleter {
    void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
};
struct ParamBldDeleter {
    void operator()(OSSL_PARAM_BLD* p) const { OSSL_PARAM_BLD_free(p); }
};
struct ParamDeleter {
    void operator()(OSSL_PARAM* p) const { OSSL_PARAM_free(p); }
};

using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxDeleter>;
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxDeleter>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;
using CipherCtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

inline BnPtr to_bn(ByteView bytes) {
    BIGNUM* bn = BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr);
    if (!bn) fail("BN_bin2bn");
    return BnPtr(bn);
}

inline Bytes from_bn(const BIGNUM* bn) {
    Bytes out(static_cast<std::size_t>(BN_num_bytes(bn)), 0);
    if (out.empty()) out.push_back(0);
    BN_bn2bin(bn, out.data());
    return out;
}

} // namespace detail

// ---- hashing and keyed primitives ----

inline Bytes digest(HashAlg alg, ByteView data) {
    Bytes out(digest_size(alg), 0);
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, detail::md_of(alg), nullptr) != 1 ||
        len != out.size()) {
        detail::fail("EVP_Digest");
    }
    return out;
}

inline Bytes hmac_sha256(ByteView key, ByteView message) {
    Bytes out(32, 0);
    unsigned int len = 0;
    if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), message.data(), message.size(),
              out.data(), &len) ||
        len != 32) {
        detail::fail("HMAC");
    }
    return out;
}

inline Bytes pbkdf2_sha256(std::string_view password, ByteView salt, int iterations,
                           std::size_t out_len) {
    Bytes out(out_len, 0);
    if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), salt.data(),
                          static_cast<int>(salt.size()), iterations, EVP_sha256(),
                          static_cast<int>(out_len), out.data()) != 1) {
        detail::fail("PKCS5_PBKDF2_HMAC");
    }
    return out;
}

inline Bytes random_bytes(std::size_t n) {
    Bytes out(n, 0);
    if (n > 0 && RAND_bytes(out.data(), static_cast<int>(n)) != 1) detail::fail("RAND_bytes");
    return out;
}

/// AES-256-GCM with the 16-byte tag appended to the ciphertext.
struct GcmBox {
    Bytes nonce;       // 12 bytes
    Bytes ciphertext;  // data || tag

    bool operator==(const GcmBox&) const = default;
};

inline GcmBox aes256gcm_seal(ByteView key32, ByteView plaintext, ByteView aad) {
    if (key32.size() != 32) raise(Errc::invalid_argument, "AES-256-GCM key must be 32 bytes");
    GcmBox box;
    box.nonce = random_bytes(12);
    box.ciphertext.resize(plaintext.size() + 16);
    detail::CipherCtxPtr ctx(EVP_CIPHER_CTX_new());
    if (!ctx) detail::fail("EVP_CIPHER_CTX_new");
    int len = 0;
    if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key32.data(), box.nonce.data()) != 1)
        detail::fail("EVP_EncryptInit_ex");
    if (!aad.empty() && EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                                          static_cast<int>(aad.size())) != 1)
        detail::fail("EVP_EncryptUpdate(aad)");
    if (EVP_EncryptUpdate(ctx.get(), box.ciphertext.data(), &len, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1)
        detail::fail("EVP_EncryptUpdate");
    int total = len;
    if (EVP_EncryptFinal_ex(ctx.get(), box.ciphertext.data() + total, &len) != 1)
        detail::fail("EVP_EncryptFinal_ex");
    total += len;
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, 16,
                            box.ciphertext.data() + plaintext.size()) != 1)
        detail::fail("EVP_CTRL_GCM_GET_TAG");
    box.ciphertext.resize(plaintext.size() + 16);
    return box;
}

/// Returns nullopt when the tag does not authenticate (wrong key, wrong
/// aad, or tampered ciphertext).
inline std::optional<Bytes> aes256gcm_open(ByteView key32, const GcmBox& box, ByteView aad) {
    if (key32.size() != 32) raise(Errc::invalid_argument, "AES-256-GCM key must be 32 bytes");
    if (box.nonce.size() != 12 || box.ciphertext.size() < 16) return std::nullopt;
    std::size_t data_len = box.ciphertext.size() - 16;
    Bytes out(data_len, 0);
    Bytes tag(box.ciphertext.end() - 16, box.ciphertext.end());
    detail::CipherCtxPtr ctx(EVP_CIPHER_CTX_new());
    if (!ctx) detail::fail("EVP_CIPHER_CTX_new");
    int len = 0;
    if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key32.data(), box.nonce.data()) != 1)
        detail::fail("EVP_DecryptInit_ex");
    if (!aad.empty() && EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                                          static_cast<int>(aad.size())) != 1)
        detail::fail("EVP_DecryptUpdate(aad)");
    if (data_len > 0 && EVP_DecryptUpdate(ctx.get(), out.data(), &len, box.ciphertext.data(),
                                          static_cast<int>(data_len)) != 1)
        return std::nullopt;
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, 16, tag.data()) != 1)
        detail::fail("EVP_CTRL_GCM_SET_TAG");
    if (EVP_DecryptFinal_ex(ctx.get(), out.data() + len, &len) != 1) return std::nullopt;
    return out;
}

// ---- key material ----

struct RsaPublicKey {
    Bytes n;  // modulus, unsigned big-endian
    Bytes e;  // public exponent

    bool operator==(const RsaPublicKey&) const = default;
};

struct RsaPrivateKey {
    RsaPublicKey pub;
    Bytes d;

    bool operator==(const RsaPrivateKey&) const = default;
};

struct DsaParams {
    Bytes p, q, g;

    bool operator==(const DsaParams&) const = default;
};

struct DsaPublicKey {
    DsaParams params;
    Bytes y;

    bool operator==(const DsaPublicKey&) const = default;
};

struct DsaPrivateKey {
    DsaPublicKey pub;
    Bytes x;

    bool operator==(const DsaPrivateKey&) const = default;
};

using PublicKey = std::variant<RsaPublicKey, DsaPublicKey>;
using PrivateKey = std::variant<RsaPrivateKey, DsaPrivateKey>;

inline KeyAlg key_alg(const PublicKey& k) {
    return std::holds_alternative<RsaPublicKey>(k) ? KeyAlg::rsa : KeyAlg::dsa;
}

inline KeyAlg key_alg(const PrivateKey& k) {
    return std::holds_alternative<RsaPrivateKey>(k) ? KeyAlg::rsa : KeyAlg::dsa;
}

inline PublicKey public_part(const PrivateKey& k) {
    if (const auto* rsa = std::get_if<RsaPrivateKey>(&k)) return rsa->pub;
    return std::get<DsaPrivateKey>(k).pub;
}

// Shared DSA groups, in the spirit of the fixed default parameter sets
// shipped by mainstream signing stacks. Fresh per-key parameters are not
// required for DSA security; only x is secret.
inline const DsaParams& dsa_group_1024() {
    static const DsaParams params{
        hex_decode("e57c2cf1fc3037460acedfe2a4ebd16ba620636be14615d819049f64f635a1a3"
                   "db2f7688eec361e8df2b2487ea27e12450a5e0c1853d8042b7da30a7e8cc772b"
                   "8b980141d0d1c6d96a50a21f1cc407dd56023e1acaefc0b6e763203ef9ec4a9c"
                   "2fd4cd65be811354a0a1474bb40e673d671e7db3e8179cbe761c55c76b44b505"),
        hex_decode("b70f8ad0325c37a5b38e624bf9435c1fbe22eb3a254438d41e4ffedd"),
        hex_decode("2bbc5b9d9aa24f171d2fdb12ddf1aaed58df64c94556a4cf76c20657d64940c8"
                   "a7297fb7d2b6dd3fce257dee6e904b561fa9fe404e268d8f378feec066ea2b30"
                   "304521ff00bf3fbe008bead41749a425e6d5fb7a74f90bddb9a96580d72b5df4"
                   "d145f691380f21f2866ad00540636f1446b5781e426998416f2823d086c8232c")};
    return params;
}

inline const DsaParams& dsa_group_2048() {
    static const DsaParams params{
        hex_decode("c4b7e1272b33d3f47a909da3340bc1bd762f43d35796d8e8a805110a795cf918"
                   "4b6d14f99d3992e472c9be4bcc2cd2aa380e73134f714b50fc783b91904229d7"
                   "0c22b7ef0829e131212f26e73e8ef55ff9ee4b6ef7809ed1f9883968751d00ec"
                   "97b6e509f00762da7cb012dc9ea8fd8c48dac49b3d2b95dbb64982ff2668a206"
                   "4ab849fb5e280cac5644efccd19a3a1f10bd24245f7ea2bd33546e5a1c6f3251"
                   "400949b802b3931453d808e0485576a8ba898ba8d470fca0ca5006b873427b4e"
                   "6f61fa62c346b9e9bb52e1aa478b9cfa73cfe4ecd0d9d464c61ddb2745ad126a"
                   "872be04e380b87ed7a3c5157d668abc85de9d7ddc3e35b78e33a36261906c245"),
        hex_decode("cc1120fe5811fa428113517a6e13473abe23c3ce5e3324fa539f06af"),
        hex_decode("52cdb6639e5228fb611687a267f13e4860aff98d970f6b1c816209ff51eb93f7"
                   "5529c4c1be7ae71b491898d33b5ac60f6b0d4fee3d4b46c2879a3f34d7667e10"
                   "e80b35b009eb232e11a2175e0e9784fd8de1b7f343ba2a7441ebf363b3d9feae"
                   "e8247e25321833e87434d955d776090f77b5b4fe122b827854029361f2945131"
                   "a9dee0d13b524d2803f66b243985b0a7e60b19adecadbcc26d9dab2455fcc4c7"
                   "e113263e7d4c27ac38576c27fc329a98b44e332fc83929c8590661bfaa5b35b7"
                   "785288f99c5729662ef46119a2a1236e36adedfd048cc765a1ad157a3462f457"
                   "5fde5b28abeedfd2519f0893f94176fef51633f346ecf57fc7250f275ea94b31")};
    return params;
}

namespace detail {

inline PkeyPtr make_rsa_pkey(const RsaPublicKey& pub, const Bytes* d) {
    BnPtr n = to_bn(pub.n), e = to_bn(pub.e);
    BnPtr dbn = d ? to_bn(*d) : nullptr;
    std::unique_ptr<OSSL_PARAM_BLD, ParamBldDeleter> bld(OSSL_PARAM_BLD_new());
    if (!bld) fail("OSSL_PARAM_BLD_new");
    if (OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_N, n.get()) != 1 ||
        OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_E, e.get()) != 1 ||
        (d && OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_D, dbn.get()) != 1)) {
        fail("OSSL_PARAM_BLD_push_BN");
    }
    std::unique_ptr<OSSL_PARAM, ParamDeleter> params(OSSL_PARAM_BLD_to_param(bld.get()));
    if (!params) fail("OSSL_PARAM_BLD_to_param");
    PkeyCtxPtr ctx(EVP_PKEY_CTX_new_from_name(nullptr, "RSA", nullptr));
    if (!ctx || EVP_PKEY_fromdata_init(ctx.get()) != 1) fail("EVP_PKEY_fromdata_init");
    EVP_PKEY* pkey = nullptr;
    int selection = d ? EVP_PKEY_KEYPAIR : EVP_PKEY_PUBLIC_KEY;
    if (EVP_PKEY_fromdata(ctx.get(), &pkey, selection, params.get()) != 1 || !pkey)
        fail("EVP_PKEY_fromdata");
    return PkeyPtr(pkey);
}

inline PkeyPtr make_dsa_pkey(const DsaPublicKey& pub, const Bytes* x) {
    BnPtr p = to_bn(pub.params.p), q = to_bn(pub.params.q), g = to_bn(pub.params.g);
    BnPtr y = to_bn(pub.y);
    BnPtr xbn = x ? to_bn(*x) : nullptr;
    std::unique_ptr<OSSL_PARAM_BLD, ParamBldDeleter> bld(OSSL_PARAM_BLD_new());
    if (!bld) fail("OSSL_PARAM_BLD_new");
    if (OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_FFC_P, p.get()) != 1 ||
        OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_FFC_Q, q.get()) != 1 ||
        OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_FFC_G, g.get()) != 1 ||
        OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_PUB_KEY, y.get()) != 1 ||
        (x && OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_PRIV_KEY, xbn.get()) != 1)) {
        fail("OSSL_PARAM_BLD_push_BN");
    }
    std::unique_ptr<OSSL_PARAM, ParamDeleter> params(OSSL_PARAM_BLD_to_param(bld.get()));
    if (!params) fail("OSSL_PARAM_BLD_to_param");
    PkeyCtxPtr ctx(EVP_PKEY_CTX_new_from_name(nullptr, "DSA", nullptr));
    if (!ctx || EVP_PKEY_fromdata_init(ctx.get()) != 1) fail("EVP_PKEY_fromdata_init");
    EVP_PKEY* pkey = nullptr;
    int selection = x ? EVP_PKEY_KEYPAIR : EVP_PKEY_PUBLIC_KEY;
    if (EVP_PKEY_fromdata(ctx.get(), &pkey, selection, params.get()) != 1 || !pkey)
        fail("EVP_PKEY_fromdata");
    return PkeyPtr(pkey);
}

inline Bytes get_bn_param(EVP_PKEY* pkey, const char* name) {
    BIGNUM* bn = nullptr;
    if (EVP_PKEY_get_bn_param(pkey, name, &bn) != 1 || !bn) fail("EVP_PKEY_get_bn_param");
    BnPtr holder(bn);
    return from_bn(bn);
}

// Deterministic per-message nonce (HMAC-SHA256 DRBG construction over the
// private key and message digest), so repeated signing of the same bytes
// yields the same signature and nonce reuse across messages is impossible.
inline BnPtr derive_dsa_nonce(const BIGNUM* q, const BIGNUM* x, ByteView h1) {
    int qbits = BN_num_bits(q);
    std::size_t rlen = static_cast<std::size_t>((qbits + 7) / 8);

    auto int2octets = [&](const BIGNUM* v) {
        Bytes out(rlen, 0);
        Bytes raw = from_bn(v);
        if (raw.size() > rlen) raw.erase(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(raw.size() - rlen));
        std::copy(raw.begin(), raw.end(), out.begin() + static_cast<std::ptrdiff_t>(rlen - raw.size()));
        return out;
    };
    auto bits2int = [&](ByteView bits) {
        BnPtr v = to_bn(bits);
        int excess = static_cast<int>(bits.size() * 8) - qbits;
        if (excess > 0) BN_rshift(v.get(), v.get(), excess);
        return v;
    };

    BnCtxPtr bnctx(BN_CTX_new());
    BnPtr z1 = bits2int(h1);
    BnPtr z2(BN_new());
    BN_mod(z2.get(), z1.get(), q, bnctx.get());
    Bytes key_octets = int2octets(x);
    Bytes h_octets = int2octets(z2.get());

    Bytes V(32, 0x01), K(32, 0x00);
    auto hmac_step = [&](std::uint8_t sep, bool with_material) {
        Bytes msg = V;
        msg.push_back(sep);
        if (with_material) {
            append(msg, key_octets);
            append(msg, h_octets);
        }
        K = hmac_sha256(K, msg);
        V = hmac_sha256(K, V);
    };
    hmac_step(0x00, true);
    hmac_step(0x01, true);

    while (true) {
        Bytes t;
        while (t.size() < rlen) {
            V = hmac_sha256(K, V);
            append(t, V);
        }
        t.resize(rlen);
        BnPtr k = bits2int(t);
        if (!BN_is_zero(k.get()) && BN_cmp(k.get(), q) < 0) return k;
        hmac_step(0x00, false);
    }
}

inline Bytes dsa_sign_deterministic(const DsaPrivateKey& key, ByteView message) {
    Bytes h1 = digest(HashAlg::sha1, message);
    BnCtxPtr ctx(BN_CTX_new());
    if (!ctx) fail("BN_CTX_new");
    BnPtr p = to_bn(key.pub.params.p), q = to_bn(key.pub.params.q), g = to_bn(key.pub.params.g);
    BnPtr x = to_bn(key.x);

    // z = leftmost min(qbits, 160) bits of the digest
    BnPtr z = to_bn(h1);
    int excess = static_cast<int>(h1.size() * 8) - BN_num_bits(q.get());
    if (excess > 0) BN_rshift(z.get(), z.get(), excess);

    BnPtr r(BN_new()), s(BN_new()), kinv(BN_new()), tmp(BN_new());
    Bytes h1_retry = h1;
    while (true) {
        BnPtr k = derive_dsa_nonce(q.get(), x.get(), h1_retry);
        // r = (g^k mod p) mod q
        if (BN_mod_exp(tmp.get(), g.get(), k.get(), p.get(), ctx.get()) != 1) fail("BN_mod_exp");
        if (BN_mod(r.get(), tmp.get(), q.get(), ctx.get()) != 1) fail("BN_mod");
        if (!BN_is_zero(r.get())) {
            // s = k^-1 (z + x r) mod q
            if (!BN_mod_inverse(kinv.get(), k.get(), q.get(), ctx.get())) fail("BN_mod_inverse");
            if (BN_mod_mul(s.get(), x.get(), r.get(), q.get(), ctx.get()) != 1) fail("BN_mod_mul");
            if (BN_mod_add(s.get(), s.get(), z.get(), q.get(), ctx.get()) != 1) fail("BN_mod_add");
            if (BN_mod_mul(s.get(), s.get(), kinv.get(), q.get(), ctx.get()) != 1) fail("BN_mod_mul");
            if (!BN_is_zero(s.get())) break;
        }
        // degenerate r or s: re-derive from a tweaked digest
        h1_retry = digest(HashAlg::sha1, view(h1_retry));
    }
    der::Node sig = der::seq({der::integer_bytes(view(from_bn(r.get()))),
                              der::integer_bytes(view(from_bn(s.get())))});
    return der::encode(sig);
}

} // namespace detail

// ---- key generation ----

inline RsaPrivateKey generate_rsa(int bits = 2048) {
    if (bits < 512 || bits > 16384) raise(Errc::invalid_argument, "unreasonable RSA key size");
    detail::PkeyCtxPtr ctx(EVP_PKEY_CTX_new_from_name(nullptr, "RSA", nullptr));
    if (!ctx || EVP_PKEY_keygen_init(ctx.get()) != 1) detail::fail("EVP_PKEY_keygen_init");
    if (EVP_PKEY_CTX_set_rsa_keygen_bits(ctx.get(), bits) != 1)
        detail::fail("EVP_PKEY_CTX_set_rsa_keygen_bits");
    EVP_PKEY* raw = nullptr;
    if (EVP_PKEY_keygen(ctx.get(), &raw) != 1 || !raw) detail::fail("EVP_PKEY_keygen");
    detail::PkeyPtr pkey(raw);
    RsaPrivateKey key;
    key.pub.n = detail::get_bn_param(raw, OSSL_PKEY_PARAM_RSA_N);
    key.pub.e = detail::get_bn_param(raw, OSSL_PKEY_PARAM_RSA_E);
    key.d = detail::get_bn_param(raw, OSSL_PKEY_PARAM_RSA_D);
    return key;
}

inline DsaPrivateKey generate_dsa(const DsaParams& params = dsa_group_2048()) {
    detail::BnCtxPtr ctx(BN_CTX_new());
    detail::BnPtr p = detail::to_bn(params.p), q = detail::to_bn(params.q), g = detail::to_bn(params.g);
    detail::BnPtr x(BN_new()), y(BN_new());
    do {
        if (BN_priv_rand_range(x.get(), q.get()) != 1) detail::fail("BN_priv_rand_range");
    } while (BN_is_zero(x.get()));
    if (BN_mod_exp(y.get(), g.get(), x.get(), p.get(), ctx.get()) != 1) detail::fail("BN_mod_exp");
    DsaPrivateKey key;
    key.pub.params = params;
    key.pub.y = detail::from_bn(y.get());
    key.x = detail::from_bn(x.get());
    return key;
}

// ---- signing and verification ----

inline Bytes sign(const PrivateKey& key, SigAlg alg, ByteView message) {
    if (sig_key_alg(alg) != key_alg(key))
        raise(Errc::key_algorithm_mismatch, "signature algorithm does not match key type");
    if (const auto* dsa = std::get_if<DsaPrivateKey>(&key))
        return detail::dsa_sign_deterministic(*dsa, message);

    const auto& rsa = std::get<RsaPrivateKey>(key);
    detail::PkeyPtr pkey = detail::make_rsa_pkey(rsa.pub, &rsa.d);
    detail::MdCtxPtr md(EVP_MD_CTX_new());
    if (!md || EVP_DigestSignInit(md.get(), nullptr, detail::md_of(sig_hash(alg)), nullptr,
                                  pkey.get()) != 1)
        detail::fail("EVP_DigestSignInit");
    std::size_t sig_len = 0;
    if (EVP_DigestSign(md.get(), nullptr, &sig_len, message.data(), message.size()) != 1)
        detail::fail("EVP_DigestSign(size)");
    Bytes sig(sig_len, 0);
    if (EVP_DigestSign(md.get(), sig.data(), &sig_len, message.data(), message.size()) != 1)
        detail::fail("EVP_DigestSign");
    sig.resize(sig_len);
    return sig;
}

/// Verification failures (including key/algorithm family mismatch and
/// garbage signature bytes) report false rather than throwing.
inline bool verify(const PublicKey& key, SigAlg alg, ByteView message, ByteView signature) {
    if (sig_key_alg(alg) != key_alg(key)) return false;
    detail::PkeyPtr pkey;
    if (const auto* rsa = std::get_if<RsaPublicKey>(&key)) {
        pkey = detail::make_rsa_pkey(*rsa, nullptr);
    } else {
        pkey = detail::make_dsa_pkey(std::get<DsaPublicKey>(key), nullptr);
    }
    detail::MdCtxPtr md(EVP_MD_CTX_new());
    if (!md || EVP_DigestVerifyInit(md.get(), nullptr, detail::md_of(sig_hash(alg)), nullptr,
                                    pkey.get()) != 1)
        detail::fail("EVP_DigestVerifyInit");
    return EVP_DigestVerify(md.get(), signature.data(), signature.size(), message.data(),
                            message.size()) == 1;
}

} // namespace sfxs::crypto
