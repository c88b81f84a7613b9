// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/state/proof.hpp>

#include <concepts>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace escape::resolvers
{
using state::ProofBundle;
using state::WorldState;

using SlotRef = std::pair<Address, Word>;

/// Anything a resolver can read storage through. `read` returns nullopt for
/// an absent (zero) slot and throws when the slot cannot be read at all.
template <class R>
concept SlotReader = requires(const R& r, const Address& a, const Word& w) {
    { r.read(a, w) } -> std::same_as<std::optional<u256>>;
};

/// Storage reads backed by proofs verified against one root. Slots outside the
/// verified set fail with MissingSlotProof; they never read as zero.
class SlotReadContext
{
public:
    SlotReadContext() = default;

    /// Verifies every bundle against `root`. A bundle targeting another root
    /// fails with StaleRoot, a bad proof with InvalidProof.
    SlotReadContext(const Hash256& root, std::span<const ProofBundle> bundles) : root_{root}
    {
        for (const auto& b : bundles)
        {
            if (b.state_root != root)
                fail(Errc::StaleRoot, "bundle for " + b.address.hex() + " targets " + b.state_root.hex());
            const auto v = state::verify_bundle(root, b);
            for (const auto& [slot, value] : v.slots)
                reads_[{b.address, slot}] = value;
        }
    }

    const Hash256& root() const noexcept { return root_; }
    const std::map<SlotRef, std::optional<u256>>& verified_reads() const noexcept { return reads_; }

    std::optional<u256> read(const Address& contract, const Word& slot) const
    {
        const auto it = reads_.find({contract, slot});
        if (it == reads_.end())
            fail(Errc::MissingSlotProof, "no verified proof for slot " + slot.hex() + " of " + contract.hex());
        return it->second;
    }

private:
    Hash256 root_;
    std::map<SlotRef, std::optional<u256>> reads_;
};

/// Unproven reads straight from a ledger. Used off-chain to plan which slots a
/// resolver will need before building proofs.
class WorldReader
{
public:
    explicit WorldReader(const WorldState& world) : world_{&world} {}

    std::optional<u256> read(const Address& contract, const Word& slot) const
    {
        const auto v = world_->storage_at(contract, slot);
        if (v == 0)
            return std::nullopt;
        return v;
    }

private:
    const WorldState* world_;
};

/// Wraps a reader and records every slot requested, in order, without
/// duplicates. Failed reads are recorded too.
template <SlotReader R>
class RecordingReader
{
public:
    explicit RecordingReader(const R& inner) : inner_{&inner} {}

    std::optional<u256> read(const Address& contract, const Word& slot) const
    {
        const SlotRef ref{contract, slot};
        if (std::find(consulted_.begin(), consulted_.end(), ref) == consulted_.end())
            consulted_.push_back(ref);
        return inner_->read(contract, slot);
    }

    const std::vector<SlotRef>& consulted() const noexcept { return consulted_; }

private:
    const R* inner_;
    mutable std::vector<SlotRef> consulted_;
};
}  // namespace escape::resolvers
