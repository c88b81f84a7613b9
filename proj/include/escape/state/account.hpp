// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/encoding.hpp>
#include <escape/mpt/trie.hpp>

namespace escape::state
{
/// Leaf of the account trie.
struct AccountState
{
    u256 nonce = 0;
    u256 balance = 0;
    Hash256 storage_root = mpt::empty_trie_root();
    Hash256 code_hash = empty_code_hash();

    Bytes rlp() const
    {
        Bytes payload;
        for (const auto& part : {rlp::encode_uint(nonce), rlp::encode_uint(balance),
                 rlp::encode_string(storage_root), rlp::encode_string(code_hash)})
            payload.insert(payload.end(), part.begin(), part.end());
        return rlp::encode_list_payload(payload);
    }

    /// Strict decode of a trie leaf; anything else is MalformedRlp.
    static AccountState from_rlp(BytesView encoded)
    {
        const auto item = rlp::decode(encoded);
        const auto& fields = item.items();
        if (fields.size() != 4)
            fail(Errc::MalformedRlp, "account must have 4 fields");
        AccountState a;
        a.nonce = from_minimal_be(fields[0].bytes());
        a.balance = from_minimal_be(fields[1].bytes());
        if (fields[2].bytes().size() != 32 || fields[3].bytes().size() != 32)
            fail(Errc::MalformedRlp, "account hash fields must be 32 octets");
        a.storage_root = Hash256::from_view(fields[2].bytes());
        a.code_hash = Hash256::from_view(fields[3].bytes());
        return a;
    }

    bool operator==(const AccountState&) const = default;
};

/// Storage trie leaf: RLP of the left-zero-trimmed big-endian word.
inline Bytes encode_storage_value(const u256& v)
{
    return rlp::encode_uint(v);
}

/// Inverse of encode_storage_value. A proven slot never holds zero, so an empty
/// string is rejected along with any non-canonical integer.
inline u256 decode_storage_value(BytesView leaf)
{
    const auto item = rlp::decode(leaf);
    const auto& raw = item.bytes();
    if (raw.empty())
        fail(Errc::MalformedRlp, "stored slot value is zero");
    return from_minimal_be(raw);
}
}  // namespace escape::state
