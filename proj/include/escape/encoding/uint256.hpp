// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/encoding/bytes.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace escape
{
/// Overflow and underflow throw std::overflow_error / std::range_error.
using u256 = boost::multiprecision::checked_uint256_t;
using u512 = boost::multiprecision::checked_uint512_t;

/// Big-endian 32-octet word.
inline Word to_word(const u256& v)
{
    Word w;
    Bytes raw;
    boost::multiprecision::export_bits(v, std::back_inserter(raw), 8);
    std::copy(raw.begin(), raw.end(), w.bytes.begin() + (32 - raw.size()));
    return w;
}

inline u256 from_word(const Word& w)
{
    u256 v;
    boost::multiprecision::import_bits(v, w.begin(), w.end(), 8);
    return v;
}

/// Minimal big-endian octets; zero is the empty string.
inline Bytes to_minimal_be(const u256& v)
{
    if (v == 0)
        return {};
    Bytes raw;
    boost::multiprecision::export_bits(v, std::back_inserter(raw), 8);
    return raw;
}

/// Inverse of to_minimal_be. Rejects leading zero octets and values wider than
/// 256 bits, since both indicate a non-canonical encoding.
inline u256 from_minimal_be(BytesView bytes)
{
    if (bytes.size() > 32)
        fail(Errc::MalformedRlp, "integer wider than 256 bits");
    if (!bytes.empty() && bytes.front() == 0)
        fail(Errc::MalformedRlp, "integer has leading zero octet");
    u256 v = 0;
    if (!bytes.empty())
        boost::multiprecision::import_bits(v, bytes.begin(), bytes.end(), 8);
    return v;
}

inline std::string to_decimal(const u256& v)
{
    return v.str();
}

inline u256 parse_decimal(std::string_view text)
{
    if (text.empty() || text.size() > 78)
        fail(Errc::ParseError, "bad decimal integer '" + std::string{text} + "'");
    u512 v = 0;
    for (const char c : text)
    {
        if (c < '0' || c > '9')
            fail(Errc::ParseError, "bad decimal integer '" + std::string{text} + "'");
        v = v * 10 + (c - '0');
    }
    if (v > u512{std::numeric_limits<u256>::max()})
        fail(Errc::ParseError, "integer exceeds 256 bits");
    return static_cast<u256>(v);
}

/// Ethereum JSON-RPC quantity: 0x-prefixed hex without leading zeros, "0x0" for zero.
inline std::string to_quantity(const u256& v)
{
    if (v == 0)
        return "0x0";
    auto hex = to_hex(to_minimal_be(v));
    const auto first = hex.find_first_not_of('0', 2);
    return "0x" + hex.substr(first);
}

inline u256 parse_quantity(std::string_view text)
{
    if (!text.starts_with("0x") || text.size() < 3 || text.size() > 66)
        fail(Errc::ParseError, "bad hex quantity '" + std::string{text} + "'");
    std::string digits{text.substr(2)};
    if (digits.size() % 2)
        digits.insert(digits.begin(), '0');
    const Bytes raw = from_hex(digits);
    u256 v = 0;
    boost::multiprecision::import_bits(v, raw.begin(), raw.end(), 8);
    return v;
}
}  // namespace escape
