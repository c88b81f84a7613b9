// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/mpt/trie.hpp>

#include <optional>

namespace escape::mpt
{
/// Outcome of a successful verification: the proven value, or nullopt when the
/// proof demonstrates the key is absent.
struct ProofResult
{
    std::optional<Bytes> value;

    bool included() const noexcept { return value.has_value(); }
    bool operator==(const ProofResult&) const = default;
};

namespace detail
{
class ProofWalker
{
public:
    ProofWalker(const Hash256& root, const ProofNodes& proof) : root_{root}, proof_{proof} {}

    ProofResult run(NibblesView key)
    {
        if (proof_.nodes.empty())
        {
            if (root_ == empty_trie_root())
                return {};
            fail(Errc::InvalidProof, "empty proof for non-empty root");
        }

        rlp::Item node = take_hashed(root_);
        std::size_t pos = 0;
        while (true)
        {
            const auto& items = node.items();
            if (items.size() == 2)
            {
                const auto decoded = hex_prefix_decode(items[0].bytes());
                const auto rest = key.subspan(pos);
                if (decoded.leaf)
                {
                    const auto& value = items[1].bytes();
                    if (value.empty())
                        fail(Errc::InvalidProof, "leaf with empty value");
                    const bool match = std::equal(decoded.path.begin(), decoded.path.end(), rest.begin(), rest.end());
                    return finish(match ? ProofResult{value} : ProofResult{});
                }
                if (decoded.path.empty())
                    fail(Errc::InvalidProof, "extension with empty path");
                if (!starts_with(rest, decoded.path))
                    return finish({});
                pos += decoded.path.size();
                node = follow(items[1]);
            }
            else if (items.size() == 17)
            {
                if (pos == key.size())
                {
                    const auto& value = items[16].bytes();
                    return finish(value.empty() ? ProofResult{} : ProofResult{value});
                }
                const auto& ref = items[key[pos]];
                ++pos;
                if (ref.is_bytes() && ref.bytes().empty())
                    return finish({});
                node = follow(ref);
            }
            else
            {
                fail(Errc::InvalidProof, "node is neither a short node nor a branch");
            }
        }
    }

private:
    rlp::Item take_hashed(const Hash256& expected)
    {
        if (next_ >= proof_.nodes.size())
            fail(Errc::InvalidProof, "proof ends before the key path does");
        const auto& blob = proof_.nodes[next_++];
        if (keccak256(blob) != expected)
            fail(Errc::InvalidProof, "node hash mismatch at proof index " + std::to_string(next_ - 1));
        if (next_ > 1 && blob.size() < 32)
            fail(Errc::InvalidProof, "short node referenced by hash");
        return decode_node(blob);
    }

    rlp::Item follow(const rlp::Item& ref)
    {
        if (ref.is_list())
        {
            if (rlp::encode(ref).size() >= 32)
                fail(Errc::InvalidProof, "embedded node of 32 octets or more");
            return ref;
        }
        if (ref.bytes().size() != 32)
            fail(Errc::InvalidProof, "child reference is neither a hash nor an embedded node");
        return take_hashed(Hash256::from_view(ref.bytes()));
    }

    static rlp::Item decode_node(BytesView blob)
    {
        try
        {
            auto item = rlp::decode(blob);
            if (!item.is_list())
                fail(Errc::InvalidProof, "node is not a list");
            return item;
        }
        catch (const Error& e)
        {
            if (e.code() == Errc::MalformedRlp)
                fail(Errc::InvalidProof, e.what());
            throw;
        }
    }

    ProofResult finish(ProofResult result) const
    {
        if (next_ != proof_.nodes.size())
            fail(Errc::InvalidProof, "proof has unused trailing nodes");
        return result;
    }

    const Hash256& root_;
    const ProofNodes& proof_;
    std::size_t next_ = 0;
};
}  // namespace detail

/// Checks `proof` for `key` against `root`. The proof is untrusted: any hash
/// mismatch, malformed node, dangling reference, or surplus node raises
/// InvalidProof. Keys are raw; pass secure_key(...) for account/storage tries.
inline ProofResult verify_proof(const Hash256& root, BytesView key, const ProofNodes& proof)
{
    const auto path = to_nibbles(key);
    try
    {
        return detail::ProofWalker{root, proof}.run(path);
    }
    catch (const Error& e)
    {
        if (e.code() == Errc::MalformedRlp)
            fail(Errc::InvalidProof, e.what());
        throw;
    }
}
}  // namespace escape::mpt
