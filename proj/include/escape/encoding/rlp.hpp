// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/encoding/bytes.hpp>
#include <escape/encoding/uint256.hpp>

#include <variant>
#include <vector>

/// Recursive-length-prefix serialization. Decoding is strict: every input that
/// is not the unique canonical encoding of its item is rejected.
namespace escape::rlp
{
class Item
{
public:
    using List = std::vector<Item>;

    Item() = default;
    Item(Bytes b) : value_{std::move(b)} {}
    Item(BytesView b) : value_{Bytes(b.begin(), b.end())} {}
    Item(List l) : value_{std::move(l)} {}

    static Item list(std::initializer_list<Item> items) { return Item{List(items)}; }

    bool is_bytes() const noexcept { return std::holds_alternative<Bytes>(value_); }
    bool is_list() const noexcept { return std::holds_alternative<List>(value_); }

    /// Throws MalformedRlp when the item has the other shape.
    const Bytes& bytes() const
    {
        if (const auto* b = std::get_if<Bytes>(&value_))
            return *b;
        fail(Errc::MalformedRlp, "expected string item, found list");
    }
    const List& items() const
    {
        if (const auto* l = std::get_if<List>(&value_))
            return *l;
        fail(Errc::MalformedRlp, "expected list item, found string");
    }

    bool operator==(const Item&) const = default;

private:
    std::variant<Bytes, List> value_;
};

namespace detail
{
inline void append_length(Bytes& out, std::size_t len, std::uint8_t short_base, std::uint8_t long_base)
{
    if (len <= 55)
    {
        out.push_back(static_cast<std::uint8_t>(short_base + len));
        return;
    }
    std::uint8_t be[8];
    int n = 0;
    for (auto v = len; v != 0; v >>= 8)
        be[n++] = static_cast<std::uint8_t>(v);
    out.push_back(static_cast<std::uint8_t>(long_base + n));
    while (n > 0)
        out.push_back(be[--n]);
}
}  // namespace detail

inline Bytes encode_string(BytesView s)
{
    if (s.size() == 1 && s[0] < 0x80)
        return {s[0]};
    Bytes out;
    out.reserve(s.size() + 9);
    detail::append_length(out, s.size(), 0x80, 0xb7);
    out.insert(out.end(), s.begin(), s.end());
    return out;
}

/// Wraps an already-encoded concatenation of items in a list header.
inline Bytes encode_list_payload(BytesView payload)
{
    Bytes out;
    out.reserve(payload.size() + 9);
    detail::append_length(out, payload.size(), 0xc0, 0xf7);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

inline Bytes encode_uint(const u256& v)
{
    return encode_string(to_minimal_be(v));
}

inline void encode_into(Bytes& out, const Item& item)
{
    if (item.is_bytes())
    {
        const auto enc = encode_string(item.bytes());
        out.insert(out.end(), enc.begin(), enc.end());
        return;
    }
    Bytes payload;
    for (const auto& child : item.items())
        encode_into(payload, child);
    const auto enc = encode_list_payload(payload);
    out.insert(out.end(), enc.begin(), enc.end());
}

inline Bytes encode(const Item& item)
{
    Bytes out;
    encode_into(out, item);
    return out;
}

namespace detail
{
struct Header
{
    bool list;
    std::size_t header_len;
    std::size_t payload_len;
};

inline Header read_header(BytesView in)
{
    if (in.empty())
        fail(Errc::MalformedRlp, "unexpected end of input");
    const auto b = in[0];
    if (b < 0x80)
        return {false, 0, 1};

    const bool list = b >= 0xc0;
    const std::uint8_t base = list ? 0xc0 : 0x80;
    const std::uint8_t offset = b - base;
    if (offset <= 55)
    {
        if (!list && offset == 1)
        {
            if (in.size() < 2)
                fail(Errc::MalformedRlp, "truncated string");
            if (in[1] < 0x80)
                fail(Errc::MalformedRlp, "single octet below 0x80 must encode as itself");
        }
        return {list, 1, offset};
    }

    const std::size_t len_of_len = offset - 55;
    if (in.size() < 1 + len_of_len)
        fail(Errc::MalformedRlp, "truncated length prefix");
    if (in[1] == 0)
        fail(Errc::MalformedRlp, "length prefix has leading zero");
    if (len_of_len > sizeof(std::size_t))
        fail(Errc::MalformedRlp, "length prefix too large");
    std::size_t len = 0;
    for (std::size_t i = 0; i < len_of_len; ++i)
        len = (len << 8) | in[1 + i];
    if (len <= 55)
        fail(Errc::MalformedRlp, "long form used for short payload");
    return {list, 1 + len_of_len, len};
}

inline Item decode_one(BytesView in, std::size_t& consumed, int depth)
{
    if (depth > 1024)
        fail(Errc::MalformedRlp, "nesting too deep");
    const auto h = read_header(in);
    if (in.size() - h.header_len < h.payload_len)
        fail(Errc::MalformedRlp, "truncated payload");
    consumed = h.header_len + h.payload_len;
    const auto payload = in.subspan(h.header_len, h.payload_len);
    if (!h.list)
        return Item{payload};

    Item::List items;
    std::size_t pos = 0;
    while (pos < payload.size())
    {
        std::size_t n = 0;
        items.push_back(decode_one(payload.subspan(pos), n, depth + 1));
        pos += n;
    }
    return Item{std::move(items)};
}
}  // namespace detail

/// Exactly one top-level item, no trailing octets.
inline Item decode(BytesView in)
{
    if (in.empty())
        fail(Errc::MalformedRlp, "empty input");
    std::size_t consumed = 0;
    auto item = detail::decode_one(in, consumed, 0);
    if (consumed != in.size())
        fail(Errc::MalformedRlp, "trailing bytes after item");
    return item;
}
}  // namespace escape::rlp
