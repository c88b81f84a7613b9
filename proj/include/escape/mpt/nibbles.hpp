// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/encoding/bytes.hpp>

#include <algorithm>
#include <span>
#include <vector>

namespace escape::mpt
{
using Nibbles = std::vector<std::uint8_t>;
using NibblesView = std::span<const std::uint8_t>;

inline Nibbles to_nibbles(BytesView key)
{
    Nibbles out;
    out.reserve(key.size() * 2);
    for (const auto b : key)
    {
        out.push_back(b >> 4);
        out.push_back(b & 0x0f);
    }
    return out;
}

inline std::size_t common_prefix(NibblesView a, NibblesView b) noexcept
{
    const auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
    return static_cast<std::size_t>(ia - a.begin());
}

inline bool starts_with(NibblesView s, NibblesView prefix) noexcept
{
    return prefix.size() <= s.size() && std::equal(prefix.begin(), prefix.end(), s.begin());
}

/// Compact (hex-prefix) encoding: flag nibble is 2*leaf + odd.
inline Bytes hex_prefix_encode(NibblesView path, bool leaf)
{
    const bool odd = path.size() % 2 == 1;
    const std::uint8_t flag = static_cast<std::uint8_t>((leaf ? 2 : 0) + (odd ? 1 : 0));
    Bytes out;
    out.reserve(path.size() / 2 + 1);
    std::size_t i = 0;
    if (odd)
        out.push_back(static_cast<std::uint8_t>((flag << 4) | path[i++]));
    else
        out.push_back(static_cast<std::uint8_t>(flag << 4));
    for (; i < path.size(); i += 2)
        out.push_back(static_cast<std::uint8_t>((path[i] << 4) | path[i + 1]));
    return out;
}

struct DecodedPath
{
    Nibbles path;
    bool leaf;
};

/// Throws InvalidProof on an unknown flag or a non-zero padding nibble.
inline DecodedPath hex_prefix_decode(BytesView compact)
{
    if (compact.empty())
        fail(Errc::InvalidProof, "empty compact path");
    const std::uint8_t flag = compact[0] >> 4;
    if (flag > 3)
        fail(Errc::InvalidProof, "bad compact path flag");
    const bool odd = flag & 1;
    DecodedPath out{{}, (flag & 2) != 0};
    if (odd)
        out.path.push_back(compact[0] & 0x0f);
    else if ((compact[0] & 0x0f) != 0)
        fail(Errc::InvalidProof, "non-zero padding in compact path");
    for (std::size_t i = 1; i < compact.size(); ++i)
    {
        out.path.push_back(compact[i] >> 4);
        out.path.push_back(compact[i] & 0x0f);
    }
    return out;
}
}  // namespace escape::mpt
