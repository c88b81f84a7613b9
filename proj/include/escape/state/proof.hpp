// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/mpt/proof.hpp>
#include <escape/state/world.hpp>

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace escape::state
{
struct SlotProof
{
    Word key;
    mpt::ProofNodes proof;
    std::optional<u256> value;  // nullopt: slot absent (zero)

    bool operator==(const SlotProof&) const = default;
};

/// Account and storage proofs for one address against one state root, in the
/// shape of an eth_getProof response.
struct ProofBundle
{
    Hash256 state_root;
    Address address;
    mpt::ProofNodes account_proof;
    std::optional<AccountState> account;  // nullopt: account absent
    std::vector<SlotProof> slot_proofs;

    bool operator==(const ProofBundle&) const = default;
};

/// Committed view of a world: the account trie, one storage trie per account,
/// and the ledger it was built from. Immutable once built.
class StateSnapshot
{
public:
    explicit StateSnapshot(WorldState world) : world_{std::move(world)}
    {
        for (const auto& [address, acc] : world_.accounts())
        {
            mpt::Trie storage;
            for (const auto& [slot, value] : acc.storage)
                storage.put(mpt::secure_key(slot), encode_storage_value(value));
            AccountState state{acc.nonce, acc.balance, storage.root_hash(), acc.code_hash};
            accounts_.put(mpt::secure_key(address), state.rlp());
            states_.emplace(address, state);
            storage_.emplace(address, std::move(storage));
        }
        root_ = accounts_.root_hash();
    }

    const Hash256& root() const noexcept { return root_; }
    const WorldState& world() const noexcept { return world_; }

    std::optional<AccountState> account(const Address& a) const
    {
        const auto it = states_.find(a);
        if (it == states_.end())
            return std::nullopt;
        return it->second;
    }

    ProofBundle get_proof(const Address& address, std::span<const Word> slots) const
    {
        ProofBundle bundle;
        bundle.state_root = root_;
        bundle.address = address;
        bundle.account_proof = accounts_.prove(mpt::secure_key(address));
        bundle.account = account(address);

        const auto st = storage_.find(address);
        for (const auto& slot : slots)
        {
            SlotProof sp{slot, {}, std::nullopt};
            if (st != storage_.end())
            {
                const auto key = mpt::secure_key(slot);
                sp.proof = st->second.prove(key);
                if (const auto v = st->second.get(key))
                    sp.value = decode_storage_value(*v);
            }
            bundle.slot_proofs.push_back(std::move(sp));
        }
        return bundle;
    }

private:
    WorldState world_;
    Hash256 root_;
    mpt::Trie accounts_;
    std::map<Address, mpt::Trie> storage_;
    std::map<Address, AccountState> states_;
};

inline Hash256 state_root(const WorldState& world)
{
    return StateSnapshot{world}.root();
}

inline ProofBundle get_proof(const WorldState& world, const Address& address, std::span<const Word> slots)
{
    return StateSnapshot{world}.get_proof(address, slots);
}

/// What a bundle proves once verified: values are taken from the proofs, never
/// from the bundle's own claims.
struct VerifiedAccount
{
    Address address;
    std::optional<AccountState> account;
    std::map<Word, std::optional<u256>> slots;
};

/// Verifies every proof in `bundle` against `root`. The bundle's claimed account
/// fields and slot values must agree with what the proofs show; an absent
/// account is equivalent to an all-default one. Throws InvalidProof otherwise.
inline VerifiedAccount verify_bundle(const Hash256& root, const ProofBundle& bundle)
{
    VerifiedAccount out;
    out.address = bundle.address;

    const auto acc = mpt::verify_proof(root, mpt::secure_key(bundle.address), bundle.account_proof);
    if (acc.value)
    {
        try
        {
            out.account = AccountState::from_rlp(*acc.value);
        }
        catch (const Error& e)
        {
            fail(Errc::InvalidProof, std::string{"account leaf: "} + e.what());
        }
    }
    if (bundle.account.value_or(AccountState{}) != out.account.value_or(AccountState{}))
        fail(Errc::InvalidProof, "claimed account fields differ from the proven leaf");

    const auto storage_root = out.account ? out.account->storage_root : mpt::empty_trie_root();
    for (const auto& sp : bundle.slot_proofs)
    {
        const auto r = mpt::verify_proof(storage_root, mpt::secure_key(sp.key), sp.proof);
        std::optional<u256> value;
        if (r.value)
        {
            try
            {
                value = decode_storage_value(*r.value);
            }
            catch (const Error& e)
            {
                fail(Errc::InvalidProof, std::string{"storage leaf: "} + e.what());
            }
        }
        if (sp.value.value_or(0) != value.value_or(0))
            fail(Errc::InvalidProof, "claimed value of slot " + sp.key.hex() + " differs from the proof");
        out.slots[sp.key] = value;
    }
    return out;
}
}  // namespace escape::state
