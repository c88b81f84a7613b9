// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/errors.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace escape
{
using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

namespace detail
{
inline constexpr char hex_digits[] = "0123456789abcdef";

constexpr int hex_value(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}
}  // namespace detail

/// Lowercase, 0x-prefixed, two digits per octet.
inline std::string to_hex(BytesView bytes)
{
    std::string out;
    out.reserve(2 + bytes.size() * 2);
    out += "0x";
    for (const auto b : bytes)
    {
        out += detail::hex_digits[b >> 4];
        out += detail::hex_digits[b & 0xf];
    }
    return out;
}

/// Accepts an optional 0x prefix and either letter case. Odd digit counts are
/// rejected rather than padded.
inline Bytes from_hex(std::string_view hex)
{
    if (hex.starts_with("0x") || hex.starts_with("0X"))
        hex.remove_prefix(2);
    if (hex.size() % 2 != 0)
        fail(Errc::ParseError, "odd number of hex digits");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        const int hi = detail::hex_value(hex[2 * i]);
        const int lo = detail::hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            fail(Errc::ParseError, "invalid hex digit");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

inline Bytes concat(std::initializer_list<BytesView> parts)
{
    Bytes out;
    std::size_t total = 0;
    for (const auto p : parts)
        total += p.size();
    out.reserve(total);
    for (const auto p : parts)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

template <std::size_t N>
struct FixedBytes
{
    static constexpr std::size_t size_bytes = N;

    std::array<std::uint8_t, N> bytes{};

    constexpr FixedBytes() noexcept = default;

    /// Throws ParseError unless `view` is exactly N octets.
    static FixedBytes from_view(BytesView view)
    {
        if (view.size() != N)
            fail(Errc::ParseError,
                "expected " + std::to_string(N) + " bytes, got " + std::to_string(view.size()));
        FixedBytes out;
        std::copy(view.begin(), view.end(), out.bytes.begin());
        return out;
    }

    constexpr const std::uint8_t* data() const noexcept { return bytes.data(); }
    constexpr std::uint8_t* data() noexcept { return bytes.data(); }
    static constexpr std::size_t size() noexcept { return N; }
    constexpr auto begin() const noexcept { return bytes.begin(); }
    constexpr auto end() const noexcept { return bytes.end(); }

    constexpr BytesView view() const noexcept { return {bytes.data(), N}; }
    operator BytesView() const noexcept { return view(); }

    Bytes to_bytes() const { return {bytes.begin(), bytes.end()}; }
    std::string hex() const { return to_hex(view()); }

    constexpr bool is_zero() const noexcept
    {
        return std::all_of(bytes.begin(), bytes.end(), [](auto b) { return b == 0; });
    }

    constexpr auto operator<=>(const FixedBytes&) const noexcept = default;
};

/// 32-octet digest. Also the representation of storage slot keys and words.
struct Hash256 : FixedBytes<32>
{
    using FixedBytes::FixedBytes;
    constexpr Hash256(const FixedBytes<32>& b) noexcept : FixedBytes{b} {}

    static Hash256 from_view(BytesView v) { return FixedBytes<32>::from_view(v); }
    static Hash256 from_hex(std::string_view h) { return from_view(escape::from_hex(h)); }
};

/// A 32-octet EVM storage word or slot key.
using Word = Hash256;

struct Address : FixedBytes<20>
{
    using FixedBytes::FixedBytes;
    constexpr Address(const FixedBytes<20>& b) noexcept : FixedBytes{b} {}

    static Address from_view(BytesView v) { return FixedBytes<20>::from_view(v); }
    static Address from_hex(std::string_view h) { return from_view(escape::from_hex(h)); }
};

/// Left-zero-padded 32-octet word holding an address (abi.encode of uint160).
inline Word pad32(const Address& a) noexcept
{
    Word w;
    std::copy(a.begin(), a.end(), w.bytes.begin() + 12);
    return w;
}

/// Low 20 octets of a word.
inline Address low_address(const Word& w) noexcept
{
    Address a;
    std::copy(w.begin() + 12, w.end(), a.bytes.begin());
    return a;
}
}  // namespace escape
