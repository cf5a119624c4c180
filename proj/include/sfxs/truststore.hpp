#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfxs/bytes.hpp"
#include "sfxs/crypto.hpp"
#include "sfxs/der.hpp"
#include "sfxs/error.hpp"
#include "sfxs/pki.hpp"
#include "sfxs/time.hpp"

namespace sfxs::store {

inline constexpr std::string_view kMagic = "SFXS1\n";
inline constexpr int kDefaultKdfIterations = 100000;

enum class EntryKind { trusted_cert, untrusted_cert, key_pair };

struct EncryptedKey {
    Bytes salt;
    std::int64_t iterations = kDefaultKdfIterations;
    crypto::GcmBox box;

    bool operator==(const EncryptedKey&) const = default;
};

struct StoreEntry {
    std::string alias;  // canonical lower-case
    EntryKind kind = EntryKind::untrusted_cert;
    pki::CertificateView certificate;
    std::optional<EncryptedKey> encrypted_key;  // present iff kind == key_pair

    bool operator==(const StoreEntry&) const = default;
};

/// In-memory snapshot of a store. Entries stay sorted by alias; the MAC
/// only exists in the serialized form.
struct TrustStore {
    std::vector<StoreEntry> entries;

    bool operator==(const TrustStore&) const = default;

    const StoreEntry* find(std::string_view alias) const;
};

namespace detail {

inline std::string canonical_alias(std::string_view alias) {
    if (alias.empty() || alias.size() > 64) raise(Errc::invalid_alias, "alias length out of range");
    std::string out;
    out.reserve(alias.size());
    for (char c : alias) {
        unsigned char u = static_cast<unsigned char>(c);
        bool ok = (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || (u >= '0' && u <= '9') ||
                  u == '_' || u == '-';
        if (!ok) raise(Errc::invalid_alias, "alias may only use letters, digits, '_' and '-'");
        out.push_back(static_cast<char>(std::tolower(u)));
    }
    return out;
}

inline Bytes key_aad(std::string_view alias) {
    return to_bytes("sfxs-key:" + std::string(alias));
}

inline Bytes mac_key(std::string_view password, ByteView salt, std::int64_t iterations) {
    return crypto::pbkdf2_sha256(password, salt, static_cast<int>(iterations), 32);
}

// private key blob: SEQUENCE { key algorithm OID, SEQUENCE OF INTEGER }
inline Bytes private_key_blob(const crypto::PrivateKey& key) {
    if (const auto* rsa = std::get_if<crypto::RsaPrivateKey>(&key)) {
        return der::encode(der::seq({der::oid(pki::oids::rsa_encryption),
                                     der::seq({der::integer_bytes(view(rsa->pub.n)),
                                               der::integer_bytes(view(rsa->pub.e)),
                                               der::integer_bytes(view(rsa->d))})}));
    }
    const auto& dsa = std::get<crypto::DsaPrivateKey>(key);
    return der::encode(der::seq({der::oid(pki::oids::dsa),
                                 der::seq({der::integer_bytes(view(dsa.pub.params.p)),
                                           der::integer_bytes(view(dsa.pub.params.q)),
                                           der::integer_bytes(view(dsa.pub.params.g)),
                                           der::integer_bytes(view(dsa.pub.y)),
                                           der::integer_bytes(view(dsa.x))})}));
}

inline crypto::PrivateKey parse_private_key_blob(ByteView blob) {
    der::Node root = der::decode(blob);
    der::expect(root.is_universal(der::kSequence) && root.children.size() == 2, Errc::malformed_store,
                "bad private key blob");
    der::Oid alg = der::oid_value(root.children[0], Errc::malformed_store);
    const der::Node& nums = root.children[1];
    der::expect(nums.is_universal(der::kSequence), Errc::malformed_store, "bad private key blob");
    auto mag = [&](std::size_t i) { return der::integer_magnitude(nums.children[i], Errc::malformed_store); };
    if (alg == pki::oids::rsa_encryption) {
        der::expect(nums.children.size() == 3, Errc::malformed_store, "bad RSA key blob");
        return crypto::RsaPrivateKey{{mag(0), mag(1)}, mag(2)};
    }
    if (alg == pki::oids::dsa) {
        der::expect(nums.children.size() == 5, Errc::malformed_store, "bad DSA key blob");
        crypto::DsaPrivateKey key;
        key.pub.params = {mag(0), mag(1), mag(2)};
        key.pub.y = mag(3);
        key.x = mag(4);
        return key;
    }
    raise(Errc::malformed_store, "unknown key algorithm in blob");
}

} // namespace detail

inline const StoreEntry* TrustStore::find(std::string_view alias) const {
    std::string canon = detail::canonical_alias(alias);
    for (const StoreEntry& e : entries)
        if (e.alias == canon) return &e;
    return nullptr;
}

// ---- serialization ----

inline Bytes serialize(const TrustStore& store, std::string_view password,
                       int kdf_iterations = kDefaultKdfIterations) {
    Bytes salt = crypto::random_bytes(16);  // fresh per save
    std::vector<der::Node> entry_nodes;
    for (const StoreEntry& e : store.entries) {
        if ((e.kind == EntryKind::key_pair) != e.encrypted_key.has_value())
            raise(Errc::invalid_argument, "entry kind disagrees with key material");
        std::vector<der::Node> fields;
        fields.push_back(der::utf8(e.alias));
        fields.push_back(der::integer(static_cast<std::int64_t>(e.kind)));
        fields.push_back(der::octet_string(e.certificate.raw_der));
        if (e.encrypted_key) {
            fields.push_back(der::seq({der::octet_string(e.encrypted_key->salt),
                                       der::integer(e.encrypted_key->iterations),
                                       der::octet_string(e.encrypted_key->box.nonce),
                                       der::octet_string(e.encrypted_key->box.ciphertext)}));
        }
        entry_nodes.push_back(der::seq(std::move(fields)));
    }
    der::Node body = der::seq({der::seq({der::octet_string(salt), der::integer(kdf_iterations)}),
                               der::seq(std::move(entry_nodes))});
    Bytes out = to_bytes(kMagic);
    append(out, view(der::encode(body)));
    Bytes mac = crypto::hmac_sha256(view(detail::mac_key(password, view(salt), kdf_iterations)),
                                    view(out));
    append(out, view(mac));
    return out;
}

/// Integrity comes first: the MAC covers everything before it, so a
/// password mismatch and tampering are indistinguishable by design.
inline TrustStore deserialize(ByteView raw, std::string_view password) {
    if (raw.size() < kMagic.size() + 2 + 32) raise(Errc::malformed_store, "store file too small");
    if (!std::equal(kMagic.begin(), kMagic.end(), raw.begin()))
        raise(Errc::malformed_store, "bad store magic");

    ByteView der_region = raw.subspan(kMagic.size(), raw.size() - kMagic.size() - 32);
    ByteView stored_mac = raw.subspan(raw.size() - 32);
    der::Node body;
    try {
        body = der::decode(der_region);
    } catch (const Error&) {
        raise(Errc::malformed_store, "store body does not parse");
    }
    der::expect(body.is_universal(der::kSequence) && body.children.size() == 2, Errc::malformed_store,
                "bad store body");
    const der::Node& header = body.children[0];
    der::expect(header.is_universal(der::kSequence) && header.children.size() == 2 &&
                    header.children[0].is_universal(der::kOctetString),
                Errc::malformed_store, "bad store header");
    Bytes salt = header.children[0].primitive;
    std::int64_t iterations = der::integer_value(header.children[1], Errc::malformed_store);
    if (salt.size() != 16 || iterations < 1 || iterations > 10000000)
        raise(Errc::malformed_store, "unreasonable store header");

    Bytes expected = crypto::hmac_sha256(view(detail::mac_key(password, view(salt), iterations)),
                                         raw.subspan(0, raw.size() - 32));
    if (!constant_time_eq(view(expected), stored_mac))
        raise(Errc::bad_password, "MAC mismatch (wrong password or tampered store)");

    TrustStore store;
    const der::Node& entries = body.children[1];
    der::expect(entries.is_universal(der::kSequence), Errc::malformed_store, "bad entry list");
    for (const der::Node& node : entries.children) {
        der::expect(node.is_universal(der::kSequence) && node.children.size() >= 3 &&
                        node.children.size() <= 4,
                    Errc::malformed_store, "bad store entry");
        StoreEntry entry;
        der::expect(node.children[0].is_universal(der::kUtf8String), Errc::malformed_store,
                    "bad alias field");
        entry.alias = detail::canonical_alias(to_string(view(node.children[0].primitive)));
        std::int64_t kind = der::integer_value(node.children[1], Errc::malformed_store);
        if (kind < 0 || kind > 2) raise(Errc::malformed_store, "unknown entry kind");
        entry.kind = static_cast<EntryKind>(kind);
        der::expect(node.children[2].is_universal(der::kOctetString), Errc::malformed_store,
                    "bad certificate field");
        try {
            entry.certificate = pki::parse_certificate(view(node.children[2].primitive),
                                                       pki::ParseOptions{.strict_dn = false});
        } catch (const Error& e) {
            raise(Errc::malformed_store, e.what());
        }
        if (node.children.size() == 4) {
            const der::Node& ek = node.children[3];
            der::expect(ek.is_universal(der::kSequence) && ek.children.size() == 4,
                        Errc::malformed_store, "bad encrypted key");
            EncryptedKey key;
            key.salt = ek.children[0].primitive;
            key.iterations = der::integer_value(ek.children[1], Errc::malformed_store);
            key.box.nonce = ek.children[2].primitive;
            key.box.ciphertext = ek.children[3].primitive;
            if (key.iterations < 1 || key.iterations > 10000000)
                raise(Errc::malformed_store, "unreasonable key derivation parameters");
            entry.encrypted_key = std::move(key);
        }
        if ((entry.kind == EntryKind::key_pair) != entry.encrypted_key.has_value())
            raise(Errc::malformed_store, "entry kind disagrees with key material");
        if (store.find(entry.alias)) raise(Errc::malformed_store, "duplicate alias " + entry.alias);
        store.entries.push_back(std::move(entry));
    }
    std::stable_sort(store.entries.begin(), store.entries.end(),
                     [](const StoreEntry& a, const StoreEntry& b) { return a.alias < b.alias; });
    return store;
}

// ---- file access ----

inline TrustStore open_store(const std::filesystem::path& path, std::string_view password) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io_failure, "cannot open store file " + path.string());
    Bytes raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(view(raw), password);
}

inline void save_store(const TrustStore& store, const std::filesystem::path& path,
                       std::string_view password) {
    Bytes raw = serialize(store, password);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(Errc::io_failure, "cannot write store file " + tmp.string());
        out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (!out) raise(Errc::io_failure, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) raise(Errc::io_failure, "cannot replace store file: " + ec.message());
}

// ---- entry management ----

inline void add_certificate(TrustStore& store, std::string_view alias, pki::CertificateView cert,
                            bool trusted) {
    std::string canon = detail::canonical_alias(alias);
    if (store.find(canon)) raise(Errc::alias_exists, "alias already present: " + canon);
    StoreEntry entry;
    entry.alias = canon;
    entry.kind = trusted ? EntryKind::trusted_cert : EntryKind::untrusted_cert;
    entry.certificate = std::move(cert);
    auto at = std::lower_bound(store.entries.begin(), store.entries.end(), entry,
                               [](const StoreEntry& a, const StoreEntry& b) { return a.alias < b.alias; });
    store.entries.insert(at, std::move(entry));
}

inline void mark_trusted(TrustStore& store, std::string_view alias) {
    std::string canon = detail::canonical_alias(alias);
    for (StoreEntry& e : store.entries) {
        if (e.alias != canon) continue;
        if (e.kind == EntryKind::key_pair)
            raise(Errc::invalid_argument, "key pair entries cannot be re-marked");
        e.kind = EntryKind::trusted_cert;
        return;
    }
    raise(Errc::no_such_alias, "no entry named " + canon);
}

// ---- key generation and signing identities ----

struct KeyGenOptions {
    crypto::KeyAlg algorithm = crypto::KeyAlg::rsa;
    int rsa_bits = 2048;
    const crypto::DsaParams* dsa_params = nullptr;  // defaults to the 2048-bit group
    int validity_days = 365;
    bool ca = false;
    std::optional<std::string> issuer_alias;
    /// Password of the issuer's private key; defaults to key_password.
    std::optional<std::string> issuer_key_password;
    std::optional<time::UtcSeconds> not_before;
};

struct SigningIdentity {
    std::string alias;
    std::vector<pki::CertificateView> certificate_chain;  // leaf first
    crypto::PrivateKey private_key;
    crypto::KeyAlg algorithm = crypto::KeyAlg::rsa;
};

inline crypto::PrivateKey decrypt_key(const StoreEntry& entry, std::string_view key_password) {
    if (entry.kind != EntryKind::key_pair || !entry.encrypted_key)
        raise(Errc::not_a_key_pair, "entry " + entry.alias + " holds no private key");
    const EncryptedKey& ek = entry.encrypted_key.value();
    Bytes key = crypto::pbkdf2_sha256(key_password, view(ek.salt), static_cast<int>(ek.iterations), 32);
    auto plain = crypto::aes256gcm_open(view(key), ek.box, view(detail::key_aad(entry.alias)));
    if (!plain) raise(Errc::bad_key_password, "cannot decrypt key for " + entry.alias);
    return detail::parse_private_key_blob(view(*plain));
}

/// Generates a key pair plus certificate (self-signed, or issued by an
/// existing CA entry), stores the key encrypted under key_password, and
/// returns the new certificate.
inline pki::CertificateView generate_key_pair(TrustStore& store, std::string_view alias,
                                              const pki::DistinguishedName& subject,
                                              const KeyGenOptions& options,
                                              std::string_view key_password) {
    std::string canon = detail::canonical_alias(alias);
    if (store.find(canon)) raise(Errc::alias_exists, "alias already present: " + canon);
    if (options.validity_days < 0) raise(Errc::invalid_argument, "negative validity");

    crypto::PrivateKey private_key =
        options.algorithm == crypto::KeyAlg::rsa
            ? crypto::PrivateKey(crypto::generate_rsa(options.rsa_bits))
            : crypto::PrivateKey(crypto::generate_dsa(options.dsa_params ? *options.dsa_params
                                                                         : crypto::dsa_group_2048()));

    pki::CertSpec spec;
    spec.subject = subject;
    spec.subject_key = crypto::public_part(private_key);
    spec.serial = crypto::random_bytes(12);
    spec.serial[0] &= 0x7f;
    if (spec.serial[0] == 0) spec.serial[0] = 1;
    spec.not_before = options.not_before.value_or(time::now());
    spec.not_after = spec.not_before + static_cast<std::int64_t>(options.validity_days) * 86400;
    spec.is_ca = options.ca;

    const crypto::PrivateKey* signing_key = &private_key;
    crypto::PrivateKey issuer_key;
    if (options.issuer_alias) {
        const StoreEntry* issuer = store.find(*options.issuer_alias);
        if (!issuer) raise(Errc::no_such_alias, "no issuer entry named " + *options.issuer_alias);
        if (issuer->kind != EntryKind::key_pair)
            raise(Errc::not_a_key_pair, "issuer entry holds no private key");
        if (!issuer->certificate.is_ca)
            raise(Errc::issuer_not_ca, "issuer certificate may not issue certificates");
        issuer_key = decrypt_key(*issuer, options.issuer_key_password
                                              ? std::string_view(*options.issuer_key_password)
                                              : key_password);
        spec.issuer = issuer->certificate.subject;
        signing_key = &issuer_key;
    } else {
        spec.issuer = subject;
    }
    spec.sig_alg = crypto::key_alg(*signing_key) == crypto::KeyAlg::rsa ? crypto::SigAlg::rsa_sha256
                                                                        : crypto::SigAlg::dsa_sha1;

    Bytes cert_der = pki::build_certificate(spec, *signing_key);
    pki::CertificateView cert = pki::parse_certificate(view(cert_der));

    EncryptedKey ek;
    ek.salt = crypto::random_bytes(16);
    ek.iterations = kDefaultKdfIterations;
    Bytes kek = crypto::pbkdf2_sha256(key_password, view(ek.salt), static_cast<int>(ek.iterations), 32);
    ek.box = crypto::aes256gcm_seal(view(kek), view(detail::private_key_blob(private_key)),
                                    view(detail::key_aad(canon)));

    StoreEntry entry;
    entry.alias = canon;
    entry.kind = EntryKind::key_pair;
    entry.certificate = cert;
    entry.encrypted_key = std::move(ek);
    auto at = std::lower_bound(store.entries.begin(), store.entries.end(), entry,
                               [](const StoreEntry& a, const StoreEntry& b) { return a.alias < b.alias; });
    store.entries.insert(at, std::move(entry));
    return cert;
}

/// Decrypts the key and assembles the certificate chain by issuer linkage
/// through the store, stopping at a self-signed certificate or the store
/// boundary.
inline SigningIdentity get_signing_identity(const TrustStore& store, std::string_view alias,
                                            std::string_view key_password) {
    const StoreEntry* entry = store.find(alias);
    if (!entry) raise(Errc::no_such_alias, "no entry named " + std::string(alias));
    SigningIdentity identity;
    identity.alias = entry->alias;
    identity.private_key = decrypt_key(*entry, key_password);
    identity.algorithm = crypto::key_alg(identity.private_key);
    identity.certificate_chain.push_back(entry->certificate);
    for (std::size_t depth = 0; depth < 16; ++depth) {
        const pki::CertificateView& last = identity.certificate_chain.back();
        if (last.self_issued()) break;
        const pki::CertificateView* next = nullptr;
        for (const StoreEntry& e : store.entries) {
            if (e.certificate.subject == last.issuer &&
                e.certificate.raw_der != last.raw_der) {
                next = &e.certificate;
                break;
            }
        }
        if (!next) break;  // chain ends at the store boundary
        bool looped = std::any_of(identity.certificate_chain.begin(), identity.certificate_chain.end(),
                                  [&](const pki::CertificateView& c) { return c.raw_der == next->raw_der; });
        if (looped) break;
        identity.certificate_chain.push_back(*next);
    }
    return identity;
}

/// Trust material for path building: byte-exact anchors from the trusted
/// entries, plus every other stored certificate as a candidate link.
inline pki::TrustInput trust_input(const TrustStore& store) {
    pki::TrustInput input;
    for (const StoreEntry& e : store.entries) {
        if (e.kind == EntryKind::trusted_cert)
            input.trusted.push_back(e.certificate);
        else
            input.extra.push_back(e.certificate);
    }
    return input;
}

} // namespace sfxs::store
