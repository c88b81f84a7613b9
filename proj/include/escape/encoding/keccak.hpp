// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/encoding/bytes.hpp>

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>

namespace escape
{
namespace detail
{
inline constexpr std::array<std::uint64_t, 24> keccak_round_constants{
    0x0000000000000001, 0x0000000000008082, 0x800000000000808a, 0x8000000080008000,
    0x000000000000808b, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008a, 0x0000000000000088, 0x0000000080008009, 0x000000008000000a,
    0x000000008000808b, 0x800000000000008b, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800a, 0x800000008000000a,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
};

// Lane visiting order and rotation amounts for the combined rho/pi step.
inline constexpr std::array<int, 24> keccak_pi_lanes{
    10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4, 15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1};
inline constexpr std::array<int, 24> keccak_rho{
    1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14, 27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44};

inline void keccak_f1600(std::array<std::uint64_t, 25>& st) noexcept
{
    for (const auto rc : keccak_round_constants)
    {
        std::uint64_t bc[5];
        for (int i = 0; i < 5; ++i)
            bc[i] = st[i] ^ st[i + 5] ^ st[i + 10] ^ st[i + 15] ^ st[i + 20];
        for (int i = 0; i < 5; ++i)
        {
            const auto t = bc[(i + 4) % 5] ^ std::rotl(bc[(i + 1) % 5], 1);
            for (int j = 0; j < 25; j += 5)
                st[j + i] ^= t;
        }

        auto carry = st[1];
        for (int i = 0; i < 24; ++i)
        {
            const int j = keccak_pi_lanes[i];
            const auto tmp = st[j];
            st[j] = std::rotl(carry, keccak_rho[i]);
            carry = tmp;
        }

        for (int j = 0; j < 25; j += 5)
        {
            for (int i = 0; i < 5; ++i)
                bc[i] = st[j + i];
            for (int i = 0; i < 5; ++i)
                st[j + i] ^= (~bc[(i + 1) % 5]) & bc[(i + 2) % 5];
        }

        st[0] ^= rc;
    }
}

inline std::uint64_t load_le64(const std::uint8_t* p) noexcept
{
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | p[i];
    return v;
}
}  // namespace detail

/// Keccak-256 as used by Ethereum: original Keccak padding (0x01 ... 0x80),
/// not the FIPS-202 SHA3 domain byte.
inline Hash256 keccak256(BytesView data) noexcept
{
    constexpr std::size_t rate = 136;
    std::array<std::uint64_t, 25> st{};

    std::size_t off = 0;
    for (; data.size() - off >= rate; off += rate)
    {
        for (std::size_t i = 0; i < rate / 8; ++i)
            st[i] ^= detail::load_le64(data.data() + off + 8 * i);
        detail::keccak_f1600(st);
    }

    std::array<std::uint8_t, rate> block{};
    const auto tail = data.size() - off;
    if (tail != 0)
        std::memcpy(block.data(), data.data() + off, tail);
    block[tail] ^= 0x01;
    block[rate - 1] ^= 0x80;
    for (std::size_t i = 0; i < rate / 8; ++i)
        st[i] ^= detail::load_le64(block.data() + 8 * i);
    detail::keccak_f1600(st);

    Hash256 out;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t b = 0; b < 8; ++b)
            out.bytes[8 * i + b] = static_cast<std::uint8_t>(st[i] >> (8 * b));
    return out;
}

/// keccak256 of the empty string; the code hash of every externally owned account.
inline const Hash256& empty_code_hash()
{
    static const Hash256 h = keccak256({});
    return h;
}
}  // namespace escape
