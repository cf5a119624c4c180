#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "sfxs/bytes.hpp"
#include "sfxs/error.hpp"

namespace sfxs::der {

enum class TagClass : std::uint8_t {
    universal = 0,
    application = 1,
    context = 2,
    priv = 3,
};

// Universal tag numbers used by the upper layers.
inline constexpr std::uint32_t kBoolean = 1;
inline constexpr std::uint32_t kInteger = 2;
inline constexpr std::uint32_t kBitString = 3;
inline constexpr std::uint32_t kOctetString = 4;
inline constexpr std::uint32_t kNull = 5;
inline constexpr std::uint32_t kOid = 6;
inline constexpr std::uint32_t kUtf8String = 12;
inline constexpr std::uint32_t kSequence = 16;
inline constexpr std::uint32_t kSet = 17;
inline constexpr std::uint32_t kPrintableString = 19;
inline constexpr std::uint32_t kT61String = 20;
inline constexpr std::uint32_t kIa5String = 22;
inline constexpr std::uint32_t kUtcTime = 23;
inline constexpr std::uint32_t kGeneralizedTime = 24;

/// One TLV node. Primitive nodes carry bytes, constructed nodes carry
/// children; the encoder rejects trees that mix the two up.
struct Node {
    TagClass tag_class = TagClass::universal;
    bool constructed = false;
    std::uint32_t tag_number = 0;
    Bytes primitive;
    std::vector<Node> children;

    bool operator==(const Node&) const = default;

    bool is(TagClass cls, std::uint32_t tag) const {
        return tag_class == cls && tag_number == tag;
    }
    bool is_universal(std::uint32_t tag) const { return is(TagClass::universal, tag); }
    bool is_context(std::uint32_t tag) const { return is(TagClass::context, tag); }
};

struct Limits {
    std::size_t max_depth = 32;
    std::size_t max_size = 64u << 20;  // 64 MiB
};

// ---- encoding ----

namespace detail {

inline void encode_length(Bytes& out, std::size_t len) {
    if (len < 0x80) {
        out.push_back(static_cast<std::uint8_t>(len));
        return;
    }
    std::uint8_t tmp[8];
    int n = 0;
    std::size_t v = len;
    while (v > 0) {
        tmp[n++] = static_cast<std::uint8_t>(v & 0xff);
        v >>= 8;
    }
    out.push_back(static_cast<std::uint8_t>(0x80 | n));
    for (int i = n - 1; i >= 0; --i) out.push_back(tmp[i]);
}

inline void encode_node(Bytes& out, const Node& node, std::size_t depth, const Limits& limits) {
    if (depth > limits.max_depth) raise(Errc::invalid_argument, "tree too deep to encode");
    if (node.tag_number >= 31) raise(Errc::tag_too_large, "tag numbers above 30 are not supported");
    std::uint8_t head = static_cast<std::uint8_t>(static_cast<std::uint8_t>(node.tag_class) << 6);
    if (node.constructed) head |= 0x20;
    head |= static_cast<std::uint8_t>(node.tag_number);
    out.push_back(head);
    if (node.constructed) {
        Bytes body;
        for (const Node& child : node.children) encode_node(body, child, depth + 1, limits);
        encode_length(out, body.size());
        append(out, body);
    } else {
        encode_length(out, node.primitive.size());
        append(out, node.primitive);
    }
}

} // namespace detail

inline Bytes encode(const Node& node, const Limits& limits = {}) {
    Bytes out;
    detail::encode_node(out, node, 0, limits);
    if (out.size() > limits.max_size) raise(Errc::invalid_argument, "encoding exceeds size limit");
    return out;
}

// ---- decoding ----

namespace detail {

struct Reader {
    ByteView data;
    std::size_t pos = 0;

    std::size_t remaining() const { return data.size() - pos; }

    std::uint8_t byte() {
        if (pos >= data.size()) raise(Errc::truncated, "unexpected end of input");
        return data[pos++];
    }

    ByteView take(std::size_t n) {
        if (n > remaining()) raise(Errc::truncated, "declared length exceeds input");
        ByteView v = data.subspan(pos, n);
        pos += n;
        return v;
    }
};

// DER canonicality checks for universal primitives with fixed content rules.
inline void check_universal_content(const Node& node) {
    switch (node.tag_number) {
    case kBoolean:
        if (node.primitive.size() != 1) raise(Errc::non_canonical, "BOOLEAN must be one byte");
        if (node.primitive[0] != 0x00 && node.primitive[0] != 0xff)
            raise(Errc::non_canonical, "BOOLEAN must be 00 or FF");
        break;
    case kInteger:
        if (node.primitive.empty()) raise(Errc::non_canonical, "INTEGER must not be empty");
        if (node.primitive.size() >= 2) {
            if (node.primitive[0] == 0x00 && (node.primitive[1] & 0x80) == 0)
                raise(Errc::non_canonical, "INTEGER has non-minimal padding");
            if (node.primitive[0] == 0xff && (node.primitive[1] & 0x80) != 0)
                raise(Errc::non_canonical, "INTEGER has non-minimal padding");
        }
        break;
    case kNull:
        if (!node.primitive.empty()) raise(Errc::non_canonical, "NULL must be empty");
        break;
    case kBitString:
        if (node.primitive.empty()) raise(Errc::non_canonical, "BIT STRING needs unused-bit octet");
        if (node.primitive[0] > 7) raise(Errc::non_canonical, "BIT STRING unused bits > 7");
        if (node.primitive.size() == 1 && node.primitive[0] != 0)
            raise(Errc::non_canonical, "empty BIT STRING must have zero unused bits");
        break;
    case kOid:
        if (node.primitive.empty()) raise(Errc::non_canonical, "empty OBJECT IDENTIFIER");
        break;
    default:
        break;
    }
}

inline Node decode_node(Reader& r, std::size_t depth, const Limits& limits) {
    if (depth > limits.max_depth) raise(Errc::non_canonical, "nesting exceeds depth limit");
    Node node;
    std::uint8_t head = r.byte();
    node.tag_class = static_cast<TagClass>(head >> 6);
    node.constructed = (head & 0x20) != 0;
    node.tag_number = head & 0x1f;
    if (node.tag_number == 0x1f) raise(Errc::tag_too_large, "high-tag-number form not supported");

    std::uint8_t first = r.byte();
    std::size_t length = 0;
    if (first < 0x80) {
        length = first;
    } else if (first == 0x80) {
        raise(Errc::non_canonical, "indefinite length is not DER");
    } else if (first == 0xff) {
        raise(Errc::non_canonical, "reserved length octet");
    } else {
        int n = first & 0x7f;
        if (n > 8) raise(Errc::non_canonical, "length field too wide");
        for (int i = 0; i < n; ++i) length = (length << 8) | r.byte();
        if (length < 0x80 || (n > 1 && (length >> ((n - 1) * 8)) == 0))
            raise(Errc::non_canonical, "length not minimally encoded");
    }
    if (length > limits.max_size) raise(Errc::non_canonical, "value exceeds size limit");

    // DER requires the primitive form for these universal types and the
    // constructed form for SEQUENCE/SET.
    if (node.tag_class == TagClass::universal) {
        switch (node.tag_number) {
        case kBoolean:
        case kInteger:
        case kBitString:
        case kOctetString:
        case kNull:
        case kOid:
        case kUtf8String:
        case kPrintableString:
        case kT61String:
        case kIa5String:
        case kUtcTime:
        case kGeneralizedTime:
            if (node.constructed) raise(Errc::non_canonical, "type must be primitive in DER");
            break;
        case kSequence:
        case kSet:
            if (!node.constructed) raise(Errc::non_canonical, "SEQUENCE/SET must be constructed");
            break;
        default:
            break;
        }
    }

    if (node.constructed) {
        ByteView body = r.take(length);
        Reader inner{body, 0};
        while (inner.remaining() > 0) node.children.push_back(decode_node(inner, depth + 1, limits));
    } else {
        ByteView body = r.take(length);
        node.primitive.assign(body.begin(), body.end());
        if (node.tag_class == TagClass::universal) check_universal_content(node);
    }
    return node;
}

} // namespace detail

/// Decodes exactly one DER value covering the whole input.
inline Node decode(ByteView raw, const Limits& limits = {}) {
    if (raw.size() > limits.max_size) raise(Errc::non_canonical, "input exceeds size limit");
    detail::Reader r{raw, 0};
    Node node = detail::decode_node(r, 0, limits);
    if (r.remaining() != 0) raise(Errc::trailing_garbage, "bytes remain after value");
    return node;
}

// ---- object identifiers ----

struct Oid {
    std::vector<std::uint32_t> arcs;

    bool operator==(const Oid&) const = default;

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            if (i) s.push_back('.');
            s += std::to_string(arcs[i]);
        }
        return s;
    }
};

inline Bytes encode_oid(const Oid& oid) {
    if (oid.arcs.size() < 2) raise(Errc::malformed_oid, "OID needs at least two arcs");
    if (oid.arcs[0] > 2) raise(Errc::malformed_oid, "first arc must be 0, 1 or 2");
    if (oid.arcs[0] < 2 && oid.arcs[1] >= 40) raise(Errc::malformed_oid, "second arc must be < 40");
    Bytes out;
    auto push_base128 = [&out](std::uint64_t v) {
        std::uint8_t tmp[10];
        int n = 0;
        do {
            tmp[n++] = static_cast<std::uint8_t>(v & 0x7f);
            v >>= 7;
        } while (v > 0);
        for (int i = n - 1; i > 0; --i) out.push_back(static_cast<std::uint8_t>(tmp[i] | 0x80));
        out.push_back(tmp[0]);
    };
    push_base128(static_cast<std::uint64_t>(oid.arcs[0]) * 40 + oid.arcs[1]);
    for (std::size_t i = 2; i < oid.arcs.size(); ++i) push_base128(oid.arcs[i]);
    return out;
}

inline Oid decode_oid(ByteView raw) {
    if (raw.empty()) raise(Errc::malformed_oid, "empty OID");
    Oid oid;
    std::size_t i = 0;
    bool first = true;
    while (i < raw.size()) {
        std::uint64_t v = 0;
        std::size_t start = i;
        while (true) {
            if (i >= raw.size()) raise(Errc::malformed_oid, "truncated arc");
            std::uint8_t b = raw[i++];
            if (i - start == 1 && b == 0x80) raise(Errc::malformed_oid, "arc has leading zero septet");
            if (v > (UINT64_MAX >> 7)) raise(Errc::malformed_oid, "arc overflows");
            v = (v << 7) | (b & 0x7f);
            if ((b & 0x80) == 0) break;
        }
        if (first) {
            first = false;
            if (v < 40) {
                oid.arcs = {0, static_cast<std::uint32_t>(v)};
            } else if (v < 80) {
                oid.arcs = {1, static_cast<std::uint32_t>(v - 40)};
            } else {
                if (v - 80 > UINT32_MAX) raise(Errc::malformed_oid, "arc overflows");
                oid.arcs = {2, static_cast<std::uint32_t>(v - 80)};
            }
        } else {
            if (v > UINT32_MAX) raise(Errc::malformed_oid, "arc overflows");
            oid.arcs.push_back(static_cast<std::uint32_t>(v));
        }
    }
    return oid;
}

// ---- node builders ----

inline Node seq(std::vector<Node> children) {
    Node n;
    n.tag_number = kSequence;
    n.constructed = true;
    n.children = std::move(children);
    return n;
}

inline Node set(std::vector<Node> children) {
    Node n;
    n.tag_number = kSet;
    n.constructed = true;
    n.children = std::move(children);
    return n;
}

inline Node primitive(std::uint32_t tag, Bytes content) {
    Node n;
    n.tag_number = tag;
    n.primitive = std::move(content);
    return n;
}

inline Node boolean(bool v) {
    return primitive(kBoolean, Bytes{static_cast<std::uint8_t>(v ? 0xff : 0x00)});
}

inline Node null() {
    return primitive(kNull, {});
}

inline Node octet_string(Bytes content) {
    return primitive(kOctetString, std::move(content));
}

inline Node utf8(std::string_view s) {
    return primitive(kUtf8String, to_bytes(s));
}

inline Node oid(const Oid& o) {
    return primitive(kOid, encode_oid(o));
}

/// INTEGER from an unsigned big-endian magnitude; prepends a zero octet
/// when the top bit is set so the value stays non-negative.
inline Node integer_bytes(ByteView magnitude) {
    std::size_t i = 0;
    while (i < magnitude.size() && magnitude[i] == 0) ++i;
    Bytes content;
    if (i == magnitude.size()) {
        content.push_back(0);
    } else {
        if (magnitude[i] & 0x80) content.push_back(0);
        content.insert(content.end(), magnitude.begin() + static_cast<std::ptrdiff_t>(i), magnitude.end());
    }
    return primitive(kInteger, std::move(content));
}

inline Node integer(std::int64_t v) {
    Bytes content;
    bool neg = v < 0;
    std::uint64_t u = static_cast<std::uint64_t>(v);
    for (int i = 7; i >= 0; --i) content.push_back(static_cast<std::uint8_t>(u >> (i * 8)));
    std::size_t skip = 0;
    while (skip + 1 < content.size() &&
           ((!neg && content[skip] == 0x00 && (content[skip + 1] & 0x80) == 0) ||
            (neg && content[skip] == 0xff && (content[skip + 1] & 0x80) != 0))) {
        ++skip;
    }
    content.erase(content.begin(), content.begin() + static_cast<std::ptrdiff_t>(skip));
    return primitive(kInteger, std::move(content));
}

inline Node bit_string(ByteView bits, std::uint8_t unused_bits = 0) {
    Bytes content;
    content.push_back(unused_bits);
    append(content, bits);
    return primitive(kBitString, std::move(content));
}

inline Node context(std::uint32_t tag, std::vector<Node> children) {
    Node n;
    n.tag_class = TagClass::context;
    n.tag_number = tag;
    n.constructed = true;
    n.children = std::move(children);
    return n;
}

inline Node context_primitive(std::uint32_t tag, Bytes content) {
    Node n;
    n.tag_class = TagClass::context;
    n.tag_number = tag;
    n.primitive = std::move(content);
    return n;
}

// ---- node accessors (throw on shape mismatch) ----

inline void expect(bool cond, Errc code, const char* what) {
    if (!cond) raise(code, what);
}

inline std::int64_t integer_value(const Node& n, Errc code = Errc::non_canonical) {
    expect(n.is_universal(kInteger) && !n.constructed, code, "expected INTEGER");
    expect(n.primitive.size() <= 8, code, "INTEGER too large for int64");
    std::int64_t v = (n.primitive[0] & 0x80) ? -1 : 0;
    for (std::uint8_t b : n.primitive) v = (v << 8) | b;
    return v;
}

/// Unsigned big-endian magnitude of a non-negative INTEGER (minimal form,
/// no leading zeros; zero encodes as a single 0x00 byte).
inline Bytes integer_magnitude(const Node& n, Errc code = Errc::non_canonical) {
    expect(n.is_universal(kInteger) && !n.constructed, code, "expected INTEGER");
    expect((n.primitive[0] & 0x80) == 0, code, "expected non-negative INTEGER");
    std::size_t i = 0;
    while (i + 1 < n.primitive.size() && n.primitive[i] == 0) ++i;
    return Bytes(n.primitive.begin() + static_cast<std::ptrdiff_t>(i), n.primitive.end());
}

inline bool boolean_value(const Node& n, Errc code = Errc::non_canonical) {
    expect(n.is_universal(kBoolean), code, "expected BOOLEAN");
    return n.primitive[0] != 0;
}

inline Oid oid_value(const Node& n, Errc code = Errc::non_canonical) {
    expect(n.is_universal(kOid), code, "expected OBJECT IDENTIFIER");
    return decode_oid(n.primitive);
}

/// BIT STRING payload, requiring zero unused bits (the only form the
/// certificate and CMS layers produce).
inline Bytes bit_string_bytes(const Node& n, Errc code = Errc::non_canonical) {
    expect(n.is_universal(kBitString), code, "expected BIT STRING");
    expect(!n.primitive.empty() && n.primitive[0] == 0, code, "unexpected unused bits");
    return Bytes(n.primitive.begin() + 1, n.primitive.end());
}

} // namespace sfxs::der
