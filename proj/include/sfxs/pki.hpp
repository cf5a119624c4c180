#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfxs/bytes.hpp"
#include "sfxs/crypto.hpp"
#include "sfxs/der.hpp"
#include "sfxs/error.hpp"
#include "sfxs/time.hpp"

namespace sfxs::pki {

// ---- object identifiers ----

namespace oids {
inline const der::Oid rsa_encryption{{1, 2, 840, 113549, 1, 1, 1}};
inline const der::Oid sha1_with_rsa{{1, 2, 840, 113549, 1, 1, 5}};
inline const der::Oid sha256_with_rsa{{1, 2, 840, 113549, 1, 1, 11}};
inline const der::Oid dsa{{1, 2, 840, 10040, 4, 1}};
inline const der::Oid dsa_with_sha1{{1, 2, 840, 10040, 4, 3}};
inline const der::Oid sha1{{1, 3, 14, 3, 2, 26}};
inline const der::Oid sha256{{2, 16, 840, 1, 101, 3, 4, 2, 1}};
inline const der::Oid dn_cn{{2, 5, 4, 3}};
inline const der::Oid dn_c{{2, 5, 4, 6}};
inline const der::Oid dn_l{{2, 5, 4, 7}};
inline const der::Oid dn_s{{2, 5, 4, 8}};
inline const der::Oid dn_o{{2, 5, 4, 10}};
inline const der::Oid dn_ou{{2, 5, 4, 11}};
inline const der::Oid basic_constraints{{2, 5, 29, 19}};
inline const der::Oid crl_distribution_points{{2, 5, 29, 31}};
} // namespace oids

// ---- distinguished names ----

/// The attribute set the tooling understands. `other` only appears when a
/// certificate was parsed in lenient mode.
enum class DnAttr { cn, ou, o, l, s, c, other };

constexpr std::string_view dn_attr_name(DnAttr a) {
    switch (a) {
    case DnAttr::cn: return "CN";
    case DnAttr::ou: return "OU";
    case DnAttr::o: return "O";
    case DnAttr::l: return "L";
    case DnAttr::s: return "S";
    case DnAttr::c: return "C";
    case DnAttr::other: return "OID";
    }
    return "?";
}

struct Rdn {
    DnAttr attr = DnAttr::cn;
    std::string oid;  // dotted form, set only when attr == other
    std::string value;

    bool operator==(const Rdn&) const = default;
};

/// Order-sensitive sequence of RDN components: {C=France, O=INRIA} and
/// {O=INRIA, C=France} are different names.
struct DistinguishedName {
    std::vector<Rdn> rdns;

    bool operator==(const DistinguishedName&) const = default;
    bool empty() const { return rdns.empty(); }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < rdns.size(); ++i) {
            if (i) out += ", ";
            if (rdns[i].attr == DnAttr::other)
                out += rdns[i].oid;
            else
                out += dn_attr_name(rdns[i].attr);
            out += '=';
            out += rdns[i].value;
        }
        return out;
    }

    /// Parses "CN=x, OU=y, ..." (values must not contain ',' or '=').
    static DistinguishedName parse(std::string_view text) {
        DistinguishedName dn;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            std::string_view part =
                text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
            while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
            while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
            if (!part.empty()) {
                std::size_t eq = part.find('=');
                if (eq == std::string_view::npos || eq == 0 || eq + 1 > part.size())
                    raise(Errc::invalid_argument, "bad distinguished name component");
                std::string key(part.substr(0, eq));
                std::string value(part.substr(eq + 1));
                if (value.empty() || value.find('=') != std::string::npos)
                    raise(Errc::invalid_argument, "bad distinguished name component");
                Rdn rdn;
                std::string up = key;
                for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                if (up == "CN") rdn.attr = DnAttr::cn;
                else if (up == "OU") rdn.attr = DnAttr::ou;
                else if (up == "O") rdn.attr = DnAttr::o;
                else if (up == "L") rdn.attr = DnAttr::l;
                else if (up == "S" || up == "ST") rdn.attr = DnAttr::s;
                else if (up == "C") rdn.attr = DnAttr::c;
                else raise(Errc::invalid_argument, "unknown distinguished name attribute: " + key);
                rdn.value = std::move(value);
                dn.rdns.push_back(std::move(rdn));
            }
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        if (dn.rdns.empty()) raise(Errc::invalid_argument, "empty distinguished name");
        return dn;
    }
};

namespace detail {

inline const der::Oid& dn_attr_oid(DnAttr a) {
    switch (a) {
    case DnAttr::cn: return oids::dn_cn;
    case DnAttr::ou: return oids::dn_ou;
    case DnAttr::o: return oids::dn_o;
    case DnAttr::l: return oids::dn_l;
    case DnAttr::s: return oids::dn_s;
    case DnAttr::c: return oids::dn_c;
    default: raise(Errc::invalid_argument, "opaque DN component cannot be re-encoded by attribute");
    }
}

inline std::optional<DnAttr> dn_attr_of(const der::Oid& oid) {
    if (oid == oids::dn_cn) return DnAttr::cn;
    if (oid == oids::dn_ou) return DnAttr::ou;
    if (oid == oids::dn_o) return DnAttr::o;
    if (oid == oids::dn_l) return DnAttr::l;
    if (oid == oids::dn_s) return DnAttr::s;
    if (oid == oids::dn_c) return DnAttr::c;
    return std::nullopt;
}

} // namespace detail

inline der::Node dn_to_der(const DistinguishedName& dn) {
    std::vector<der::Node> rdns;
    for (const Rdn& r : dn.rdns) {
        der::Node atv = der::seq({der::oid(r.attr == DnAttr::other
                                               ? der::decode_oid(view(hex_decode(r.oid)))
                                               : detail::dn_attr_oid(r.attr)),
                                  der::utf8(r.value)});
        rdns.push_back(der::set({std::move(atv)}));
    }
    return der::seq(std::move(rdns));
}

inline DistinguishedName dn_from_der(const der::Node& name, bool strict) {
    der::expect(name.is_universal(der::kSequence), Errc::malformed_certificate, "Name must be a SEQUENCE");
    DistinguishedName dn;
    for (const der::Node& rdn_set : name.children) {
        der::expect(rdn_set.is_universal(der::kSet) && rdn_set.children.size() == 1,
                    Errc::malformed_certificate, "multi-valued RDNs are not supported");
        const der::Node& atv = rdn_set.children[0];
        der::expect(atv.is_universal(der::kSequence) && atv.children.size() == 2,
                    Errc::malformed_certificate, "bad AttributeTypeAndValue");
        der::Oid attr_oid = der::oid_value(atv.children[0], Errc::malformed_certificate);
        const der::Node& value = atv.children[1];
        bool stringish = value.is_universal(der::kUtf8String) ||
                         value.is_universal(der::kPrintableString) ||
                         value.is_universal(der::kIa5String) || value.is_universal(der::kT61String);
        Rdn rdn;
        if (auto attr = detail::dn_attr_of(attr_oid)) {
            der::expect(stringish, Errc::malformed_certificate, "DN value is not a string type");
            rdn.attr = *attr;
            rdn.value = to_string(view(value.primitive));
        } else if (strict) {
            raise(Errc::malformed_certificate, "unsupported DN attribute " + attr_oid.to_string());
        } else {
            rdn.attr = DnAttr::other;
            rdn.oid = hex_encode(view(der::encode_oid(attr_oid)));
            rdn.value = stringish ? to_string(view(value.primitive))
                                  : "#" + hex_encode(view(der::encode(value)));
        }
        dn.rdns.push_back(std::move(rdn));
    }
    return dn;
}

// ---- algorithm identifiers ----

namespace detail {

inline der::Node sig_alg_to_der(crypto::SigAlg alg) {
    switch (alg) {
    case crypto::SigAlg::rsa_sha1: return der::seq({der::oid(oids::sha1_with_rsa), der::null()});
    case crypto::SigAlg::rsa_sha256: return der::seq({der::oid(oids::sha256_with_rsa), der::null()});
    case crypto::SigAlg::dsa_sha1: return der::seq({der::oid(oids::dsa_with_sha1)});
    }
    raise(Errc::unsupported_algorithm, "unknown signature algorithm");
}

inline crypto::SigAlg sig_alg_from_der(const der::Node& algid, Errc code) {
    der::expect(algid.is_universal(der::kSequence) && !algid.children.empty() &&
                    algid.children.size() <= 2,
                code, "bad AlgorithmIdentifier");
    der::Oid oid = der::oid_value(algid.children[0], code);
    bool has_null = algid.children.size() == 2 && algid.children[1].is_universal(der::kNull);
    if (oid == oids::sha1_with_rsa || oid == oids::sha256_with_rsa) {
        der::expect(has_null, code, "RSA signature algorithms require NULL parameters");
        return oid == oids::sha1_with_rsa ? crypto::SigAlg::rsa_sha1 : crypto::SigAlg::rsa_sha256;
    }
    if (oid == oids::dsa_with_sha1) {
        der::expect(algid.children.size() == 1 || has_null, code, "unexpected DSA parameters");
        return crypto::SigAlg::dsa_sha1;
    }
    raise(Errc::unsupported_algorithm, "signature algorithm outside the registry: " + oid.to_string());
}

inline der::Node time_to_der(time::UtcSeconds t) {
    time::Civil c = time::to_civil(t);
    char buf[20];
    if (c.year >= 1950 && c.year < 2050) {
        std::snprintf(buf, sizeof buf, "%02d%02d%02d%02d%02d%02dZ", c.year % 100, c.month, c.day,
                      c.hour, c.minute, c.second);
        return der::primitive(der::kUtcTime, to_bytes(buf));
    }
    std::snprintf(buf, sizeof buf, "%04d%02d%02d%02d%02d%02dZ", c.year, c.month, c.day, c.hour,
                  c.minute, c.second);
    return der::primitive(der::kGeneralizedTime, to_bytes(buf));
}

inline time::UtcSeconds time_from_der(const der::Node& n) {
    std::string s = to_string(view(n.primitive));
    auto digits = [&](std::size_t pos, int count) {
        int v = 0;
        for (int i = 0; i < count; ++i) {
            char c = s[pos + static_cast<std::size_t>(i)];
            if (c < '0' || c > '9') raise(Errc::malformed_certificate, "bad time digit");
            v = v * 10 + (c - '0');
        }
        return v;
    };
    time::Civil c{};
    if (n.is_universal(der::kUtcTime)) {
        if (s.size() != 13 || s.back() != 'Z') raise(Errc::malformed_certificate, "bad UTCTime");
        int yy = digits(0, 2);
        c.year = yy < 50 ? 2000 + yy : 1900 + yy;
        c.month = digits(2, 2);
        c.day = digits(4, 2);
        c.hour = digits(6, 2);
        c.minute = digits(8, 2);
        c.second = digits(10, 2);
    } else if (n.is_universal(der::kGeneralizedTime)) {
        if (s.size() != 15 || s.back() != 'Z') raise(Errc::malformed_certificate, "bad GeneralizedTime");
        c.year = digits(0, 4);
        c.month = digits(4, 2);
        c.day = digits(6, 2);
        c.hour = digits(8, 2);
        c.minute = digits(10, 2);
        c.second = digits(12, 2);
    } else {
        raise(Errc::malformed_certificate, "validity must use UTCTime or GeneralizedTime");
    }
    if (!time::valid_civil(c)) raise(Errc::malformed_certificate, "invalid validity timestamp");
    return time::from_civil(c);
}

inline der::Node spki_to_der(const crypto::PublicKey& key) {
    if (const auto* rsa = std::get_if<crypto::RsaPublicKey>(&key)) {
        Bytes inner = der::encode(
            der::seq({der::integer_bytes(view(rsa->n)), der::integer_bytes(view(rsa->e))}));
        return der::seq({der::seq({der::oid(oids::rsa_encryption), der::null()}),
                         der::bit_string(view(inner))});
    }
    const auto& dsa = std::get<crypto::DsaPublicKey>(key);
    der::Node params = der::seq({der::integer_bytes(view(dsa.params.p)),
                                 der::integer_bytes(view(dsa.params.q)),
                                 der::integer_bytes(view(dsa.params.g))});
    Bytes inner = der::encode(der::integer_bytes(view(dsa.y)));
    return der::seq({der::seq({der::oid(oids::dsa), std::move(params)}), der::bit_string(view(inner))});
}

inline crypto::PublicKey spki_from_der(const der::Node& spki) {
    der::expect(spki.is_universal(der::kSequence) && spki.children.size() == 2,
                Errc::malformed_certificate, "bad SubjectPublicKeyInfo");
    const der::Node& algid = spki.children[0];
    der::expect(algid.is_universal(der::kSequence) && !algid.children.empty(),
                Errc::malformed_certificate, "bad key AlgorithmIdentifier");
    der::Oid oid = der::oid_value(algid.children[0], Errc::malformed_certificate);
    Bytes key_bits = der::bit_string_bytes(spki.children[1], Errc::malformed_certificate);
    if (oid == oids::rsa_encryption) {
        der::expect(algid.children.size() == 2 && algid.children[1].is_universal(der::kNull),
                    Errc::malformed_certificate, "RSA key parameters must be NULL");
        der::Node rsa = der::decode(view(key_bits));
        der::expect(rsa.is_universal(der::kSequence) && rsa.children.size() >= 2,
                    Errc::malformed_certificate, "bad RSA key structure");
        return crypto::RsaPublicKey{der::integer_magnitude(rsa.children[0], Errc::malformed_certificate),
                                    der::integer_magnitude(rsa.children[1], Errc::malformed_certificate)};
    }
    if (oid == oids::dsa) {
        der::expect(algid.children.size() == 2 && algid.children[1].is_universal(der::kSequence) &&
                        algid.children[1].children.size() == 3,
                    Errc::malformed_certificate, "missing DSA parameters");
        const der::Node& params = algid.children[1];
        crypto::DsaPublicKey dsa;
        dsa.params.p = der::integer_magnitude(params.children[0], Errc::malformed_certificate);
        dsa.params.q = der::integer_magnitude(params.children[1], Errc::malformed_certificate);
        dsa.params.g = der::integer_magnitude(params.children[2], Errc::malformed_certificate);
        dsa.y = der::integer_magnitude(der::decode(view(key_bits)), Errc::malformed_certificate);
        return dsa;
    }
    raise(Errc::unsupported_algorithm, "public key algorithm outside the registry: " + oid.to_string());
}

} // namespace detail

// ---- certificates ----

struct CertificateView {
    Bytes raw_der;
    Bytes raw_tbs;  // exact to-be-signed region, needed for verification
    DistinguishedName subject;
    DistinguishedName issuer;
    Bytes serial;  // unsigned big-endian, minimal
    time::UtcSeconds not_before = 0;
    time::UtcSeconds not_after = 0;
    crypto::PublicKey public_key;
    bool is_ca = false;
    std::optional<std::int64_t> path_len;  // parsed, never enforced
    crypto::SigAlg sig_alg = crypto::SigAlg::rsa_sha256;
    Bytes signature;
    std::string crl_dp;  // opaque; never fetched

    bool operator==(const CertificateView&) const = default;
    bool self_issued() const { return subject == issuer; }
};

struct ParseOptions {
    bool strict_dn = true;
};

inline CertificateView parse_certificate(ByteView raw, const ParseOptions& options = {}) {
    try {
        der::Node cert = der::decode(raw);
        der::expect(cert.is_universal(der::kSequence) && cert.children.size() == 3,
                    Errc::malformed_certificate, "certificate must hold tbs, algorithm, signature");
        const der::Node& tbs = cert.children[0];
        der::expect(tbs.is_universal(der::kSequence) && tbs.children.size() >= 6,
                    Errc::malformed_certificate, "short TBSCertificate");

        CertificateView out;
        out.raw_der.assign(raw.begin(), raw.end());
        out.raw_tbs = der::encode(tbs);

        std::size_t i = 0;
        std::int64_t version = 0;
        if (tbs.children[0].is_context(0) && tbs.children[0].constructed) {
            der::expect(tbs.children[0].children.size() == 1, Errc::malformed_certificate,
                        "bad version wrapper");
            version = der::integer_value(tbs.children[0].children[0], Errc::malformed_certificate);
            der::expect(version >= 0 && version <= 2, Errc::malformed_certificate,
                        "unknown certificate version");
            ++i;
        }
        out.serial = der::integer_magnitude(tbs.children[i++], Errc::malformed_certificate);
        crypto::SigAlg tbs_alg = detail::sig_alg_from_der(tbs.children[i++], Errc::malformed_certificate);
        out.issuer = dn_from_der(tbs.children[i++], options.strict_dn);
        const der::Node& validity = tbs.children[i++];
        der::expect(validity.is_universal(der::kSequence) && validity.children.size() == 2,
                    Errc::malformed_certificate, "bad validity");
        out.not_before = detail::time_from_der(validity.children[0]);
        out.not_after = detail::time_from_der(validity.children[1]);
        der::expect(out.not_before <= out.not_after, Errc::malformed_certificate,
                    "notBefore is after notAfter");
        out.subject = dn_from_der(tbs.children[i++], options.strict_dn);
        out.public_key = detail::spki_from_der(tbs.children[i++]);

        for (; i < tbs.children.size(); ++i) {
            const der::Node& opt = tbs.children[i];
            if (opt.is_context(1) || opt.is_context(2)) continue;  // unique identifiers
            if (!opt.is_context(3)) raise(Errc::malformed_certificate, "unexpected TBS field");
            der::expect(version == 2, Errc::malformed_certificate, "extensions require v3");
            der::expect(opt.constructed && opt.children.size() == 1 &&
                            opt.children[0].is_universal(der::kSequence),
                        Errc::malformed_certificate, "bad extensions wrapper");
            for (const der::Node& ext : opt.children[0].children) {
                der::expect(ext.is_universal(der::kSequence) && ext.children.size() >= 2 &&
                                ext.children.size() <= 3,
                            Errc::malformed_certificate, "bad extension");
                der::Oid ext_oid = der::oid_value(ext.children[0], Errc::malformed_certificate);
                bool critical = false;
                std::size_t value_idx = 1;
                if (ext.children[1].is_universal(der::kBoolean)) {
                    critical = der::boolean_value(ext.children[1], Errc::malformed_certificate);
                    value_idx = 2;
                }
                der::expect(value_idx < ext.children.size() &&
                                ext.children[value_idx].is_universal(der::kOctetString),
                            Errc::malformed_certificate, "bad extension value");
                const Bytes& ext_value = ext.children[value_idx].primitive;
                if (ext_oid == oids::basic_constraints) {
                    der::Node bc = der::decode(view(ext_value));
                    der::expect(bc.is_universal(der::kSequence), Errc::malformed_certificate,
                                "bad basicConstraints");
                    std::size_t j = 0;
                    if (j < bc.children.size() && bc.children[j].is_universal(der::kBoolean))
                        out.is_ca = der::boolean_value(bc.children[j++], Errc::malformed_certificate);
                    if (j < bc.children.size() && bc.children[j].is_universal(der::kInteger))
                        out.path_len = der::integer_value(bc.children[j], Errc::malformed_certificate);
                } else if (ext_oid == oids::crl_distribution_points) {
                    // best effort: surface a contained URI, else keep the raw hex
                    out.crl_dp = hex_encode(view(ext_value));
                    der::Node dp = der::decode(view(ext_value));
                    std::vector<const der::Node*> stack{&dp};
                    while (!stack.empty()) {
                        const der::Node* n = stack.back();
                        stack.pop_back();
                        if (n->is_context(6) && !n->constructed) {
                            out.crl_dp = to_string(view(n->primitive));
                            break;
                        }
                        for (const der::Node& child : n->children) stack.push_back(&child);
                    }
                } else if (critical) {
                    raise(Errc::malformed_certificate,
                          "unsupported critical extension " + ext_oid.to_string());
                }
            }
        }

        crypto::SigAlg outer_alg = detail::sig_alg_from_der(cert.children[1], Errc::malformed_certificate);
        der::expect(outer_alg == tbs_alg, Errc::malformed_certificate,
                    "signature algorithm mismatch between TBS and certificate");
        out.sig_alg = outer_alg;
        out.signature = der::bit_string_bytes(cert.children[2], Errc::malformed_certificate);
        return out;
    } catch (const Error& e) {
        if (e.code() == Errc::malformed_certificate || e.code() == Errc::unsupported_algorithm) throw;
        raise(Errc::malformed_certificate, e.what());
    }
}

struct CertSpec {
    DistinguishedName subject;
    DistinguishedName issuer;
    Bytes serial;
    time::UtcSeconds not_before = 0;
    time::UtcSeconds not_after = 0;
    crypto::PublicKey subject_key;
    bool is_ca = false;
    crypto::SigAlg sig_alg = crypto::SigAlg::rsa_sha256;
};

/// Builds and signs an X.509 v3 certificate.
inline Bytes build_certificate(const CertSpec& spec, const crypto::PrivateKey& issuer_key) {
    if (spec.serial.empty()) raise(Errc::invalid_argument, "certificate needs a serial");
    if (spec.not_before > spec.not_after)
        raise(Errc::invalid_argument, "notBefore must not be after notAfter");
    std::vector<der::Node> tbs_fields;
    tbs_fields.push_back(der::context(0, {der::integer(2)}));
    tbs_fields.push_back(der::integer_bytes(view(spec.serial)));
    tbs_fields.push_back(detail::sig_alg_to_der(spec.sig_alg));
    tbs_fields.push_back(dn_to_der(spec.issuer));
    tbs_fields.push_back(der::seq({detail::time_to_der(spec.not_before),
                                   detail::time_to_der(spec.not_after)}));
    tbs_fields.push_back(dn_to_der(spec.subject));
    tbs_fields.push_back(detail::spki_to_der(spec.subject_key));
    if (spec.is_ca) {
        Bytes bc = der::encode(der::seq({der::boolean(true)}));
        der::Node ext = der::seq({der::oid(oids::basic_constraints), der::boolean(true),
                                  der::octet_string(std::move(bc))});
        tbs_fields.push_back(der::context(3, {der::seq({std::move(ext)})}));
    }
    der::Node tbs = der::seq(std::move(tbs_fields));
    Bytes tbs_bytes = der::encode(tbs);
    Bytes signature = crypto::sign(issuer_key, spec.sig_alg, view(tbs_bytes));
    der::Node cert = der::seq({std::move(tbs), detail::sig_alg_to_der(spec.sig_alg),
                               der::bit_string(view(signature))});
    return der::encode(cert);
}

// ---- PEM armor ----

inline std::string to_pem(ByteView der_bytes, std::string_view label = "CERTIFICATE") {
    std::string b64 = base64_encode(der_bytes);
    std::string out = "-----BEGIN " + std::string(label) + "-----\n";
    for (std::size_t i = 0; i < b64.size(); i += 64) {
        out += b64.substr(i, 64);
        out += '\n';
    }
    out += "-----END " + std::string(label) + "-----\n";
    return out;
}

inline Bytes from_pem(std::string_view text, std::string_view label = "CERTIFICATE") {
    std::string begin = "-----BEGIN " + std::string(label) + "-----";
    std::string end = "-----END " + std::string(label) + "-----";
    std::size_t b = text.find(begin);
    if (b == std::string_view::npos) raise(Errc::invalid_argument, "missing PEM begin marker");
    std::size_t body = b + begin.size();
    std::size_t e = text.find(end, body);
    if (e == std::string_view::npos) raise(Errc::invalid_argument, "missing PEM end marker");
    std::string b64;
    for (char c : text.substr(body, e - body)) {
        if (c == '\n' || c == '\r' || c == ' ' || c == '\t') continue;
        b64.push_back(c);
    }
    return base64_decode(b64);
}

// ---- certificate paths ----

/// Subject-to-issuer chain, leaf first; the terminal element is the
/// trusted certificate the builder reached.
struct CertPath {
    std::vector<CertificateView> chain;
};

/// Trust material extracted from a store: byte-exact trusted anchors plus
/// additional certificates usable as intermediate links.
struct TrustInput {
    std::vector<CertificateView> trusted;
    std::vector<CertificateView> extra;
};

namespace detail {

inline bool is_trusted(const TrustInput& trust, const CertificateView& cert) {
    return std::any_of(trust.trusted.begin(), trust.trusted.end(),
                       [&](const CertificateView& t) { return t.raw_der == cert.raw_der; });
}

} // namespace detail

/// Case 1: a leaf already marked trusted stands alone. Case 2: extend by
/// unique verifying issuer through the candidates and the store until a
/// trusted certificate terminates the path.
inline CertPath build_path(const CertificateView& leaf, std::span<const CertificateView> candidates,
                           const TrustInput& trust) {
    if (detail::is_trusted(trust, leaf)) return CertPath{{leaf}};

    std::vector<const CertificateView*> pool;
    for (const CertificateView& c : candidates) pool.push_back(&c);
    for (const CertificateView& c : trust.extra) pool.push_back(&c);
    for (const CertificateView& c : trust.trusted) pool.push_back(&c);

    CertPath path;
    path.chain.push_back(leaf);
    const CertificateView* current = &path.chain.back();
    for (std::size_t depth = 0; depth < 32; ++depth) {
        if (current->self_issued())
            raise(Errc::no_trust_anchor, "self-signed certificate is not trusted: " +
                                             current->subject.to_string());
        std::vector<const CertificateView*> issuers;
        for (const CertificateView* c : pool) {
            if (c->subject != current->issuer) continue;
            if (!crypto::verify(c->public_key, current->sig_alg, view(current->raw_tbs),
                                view(current->signature)))
                continue;
            bool dup = std::any_of(issuers.begin(), issuers.end(), [&](const CertificateView* seen) {
                return seen->raw_der == c->raw_der;
            });
            if (!dup) issuers.push_back(c);
        }
        if (issuers.empty())
            raise(Errc::no_trust_anchor, "no verifying issuer for " + current->subject.to_string());
        if (issuers.size() > 1)
            raise(Errc::ambiguous_issuer, "multiple verifying issuers for " +
                                              current->subject.to_string());
        const CertificateView* next = issuers[0];
        for (const CertificateView& seen : path.chain)
            if (seen.raw_der == next->raw_der)
                raise(Errc::cycle_detected, "issuer loop at " + next->subject.to_string());
        path.chain.push_back(*next);
        if (detail::is_trusted(trust, path.chain.back())) return path;
        current = &path.chain.back();
    }
    raise(Errc::no_trust_anchor, "path length limit reached without a trust anchor");
}

enum class PathFailure { not_a_ca, bad_signature, expired, not_yet_valid };

constexpr std::string_view path_failure_name(PathFailure f) {
    switch (f) {
    case PathFailure::not_a_ca: return "NOT_A_CA";
    case PathFailure::bad_signature: return "BAD_SIGNATURE";
    case PathFailure::expired: return "EXPIRED";
    case PathFailure::not_yet_valid: return "NOT_YET_VALID";
    }
    return "?";
}

struct PathVerdict {
    bool ok = false;
    struct Item {
        std::size_t index;
        PathFailure failure;
        std::string detail;
    };
    std::vector<Item> failures;
};

/// Chain checks: every issuing certificate must be a CA, every signature
/// must verify under the next certificate's key (a self-issued terminal
/// verifies under its own), and the time must fall inside every validity
/// window. Trust of the terminal certificate is the path builder's job.
inline PathVerdict validate_path(const CertPath& path, time::UtcSeconds at_time) {
    PathVerdict verdict;
    const auto& chain = path.chain;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const CertificateView& cert = chain[i];
        if (i > 0 && !cert.is_ca)
            verdict.failures.push_back(
                {i, PathFailure::not_a_ca, cert.subject.to_string() + " may not issue certificates"});
        const CertificateView* issuer =
            i + 1 < chain.size() ? &chain[i + 1] : (cert.self_issued() ? &cert : nullptr);
        if (issuer && !crypto::verify(issuer->public_key, cert.sig_alg, view(cert.raw_tbs),
                                      view(cert.signature)))
            verdict.failures.push_back(
                {i, PathFailure::bad_signature, "signature of " + cert.subject.to_string() +
                                                    " does not verify"});
        if (at_time < cert.not_before)
            verdict.failures.push_back(
                {i, PathFailure::not_yet_valid, cert.subject.to_string() + " is not yet valid"});
        if (at_time > cert.not_after)
            verdict.failures.push_back(
                {i, PathFailure::expired, cert.subject.to_string() + " has expired"});
    }
    verdict.ok = verdict.failures.empty();
    return verdict;
}

} // namespace sfxs::pki
