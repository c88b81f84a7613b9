// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/encoding/keccak.hpp>
#include <escape/encoding/rlp.hpp>

namespace escape
{
/// Address of a contract deployed with CREATE: keccak256(rlp([deployer, nonce]))[12:].
inline Address create_address(const Address& deployer, const u256& nonce)
{
    Bytes payload = rlp::encode_string(deployer);
    const auto n = rlp::encode_uint(nonce);
    payload.insert(payload.end(), n.begin(), n.end());
    const auto h = keccak256(rlp::encode_list_payload(payload));
    return Address::from_view(h.view().subspan(12));
}

/// Address of a contract deployed with CREATE2:
/// keccak256(0xff ++ deployer ++ salt ++ bytecode_hash)[12:].
inline Address create2_address(const Address& deployer, const Hash256& salt, const Hash256& bytecode_hash)
{
    const std::uint8_t marker[] = {0xff};
    const auto h = keccak256(concat({marker, deployer, salt, bytecode_hash}));
    return Address::from_view(h.view().subspan(12));
}
}  // namespace escape
