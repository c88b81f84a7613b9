// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/l1/registry.hpp>
#include <escape/resolvers/library.hpp>

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace escape::l1
{
using resolvers::PayoutKind;
using resolvers::SlotRef;
using state::WorldState;

/// Sentinel asset address for native ETH.
inline const Address eth_asset{};

/// keccak256(escaper ++ asset_contract ++ discriminator).
inline Hash256 nullifier_key(const Address& escaper, const Address& asset_contract, const Word& discriminator)
{
    return keccak256(concat({escaper, asset_contract, discriminator}));
}

struct L1Payout
{
    Address asset;     // L1 token, or eth_asset
    Address l2_asset;  // L2 contract the entitlement came from, or eth_asset
    PayoutKind kind = PayoutKind::amount;
    u256 value;

    bool operator==(const L1Payout&) const = default;
};

struct EscapeReceipt
{
    Address claimer;
    Address entitled;
    Hash256 root;
    std::string resolver_id;  // empty for ETH escapes
    std::vector<L1Payout> payouts;
    std::vector<Hash256> nullifiers;
    std::vector<SlotRef> slots_consulted;

    bool operator==(const EscapeReceipt&) const = default;
};

enum class TokenStandard
{
    fungible,
    non_fungible,
};

using NftId = std::pair<Address, u256>;

/// L1 bridge: holds deposit escrow and pays out escapes against the latest
/// valid root, at most once per nullifier.
class L1Bridge
{
public:
    explicit L1Bridge(Seconds t = default_escape_delay) : t_{t} {}

    Seconds t() const noexcept { return t_; }

    /// Pairs a bridged L2 token with its L1 counterpart.
    void map_token(const Address& l2_token, const Address& l1_token, TokenStandard standard)
    {
        if (l2_to_l1_.contains(l2_token) || l1_to_l2_.contains(l1_token))
            fail(Errc::SchemaViolation, "token " + l2_token.hex() + " or " + l1_token.hex() + " is already mapped");
        l2_to_l1_[l2_token] = l1_token;
        l1_to_l2_[l1_token] = l2_token;
        standards_[l1_token] = standard;
    }

    std::optional<Address> l1_token_of(const Address& l2_token) const
    {
        const auto it = l2_to_l1_.find(l2_token);
        if (it == l2_to_l1_.end())
            return std::nullopt;
        return it->second;
    }

    std::optional<Address> l2_token_of(const Address& l1_token) const
    {
        const auto it = l1_to_l2_.find(l1_token);
        if (it == l1_to_l2_.end())
            return std::nullopt;
        return it->second;
    }

    // Deposits. Escrow always grows; the L2 side is credited only when `l2`
    // is given (the operator is live). Returns whether L2 was credited.

    bool deposit_eth(WorldState* l2, const Address& l2_recipient, const u256& amount)
    {
        if (amount == 0)
            fail(Errc::ZeroAmount, "ETH deposit of zero");
        eth_escrow_ += amount;
        eth_deposited_ += amount;
        if (l2)
            l2->credit_eth(l2_recipient, amount);
        return l2 != nullptr;
    }

    bool deposit_erc20(WorldState* l2, const Address& l1_token, const Address& l2_recipient, const u256& amount)
    {
        if (amount == 0)
            fail(Errc::ZeroAmount, "token deposit of zero");
        const auto l2_token = mapped(l1_token, TokenStandard::fungible);
        token_escrow_[l1_token] += amount;
        token_deposited_[l1_token] += amount;
        if (l2)
            l2->erc20_mint(l2_token, l2_recipient, amount);
        return l2 != nullptr;
    }

    bool deposit_erc721(WorldState* l2, const Address& l1_token, const Address& l2_recipient, const u256& token_id)
    {
        const auto l2_token = mapped(l1_token, TokenStandard::non_fungible);
        if (nft_escrow_.contains({l1_token, token_id}))
            fail(Errc::AlreadyMinted, "token id " + to_decimal(token_id) + " is already in escrow");
        if (l2)
            l2->erc721_mint(l2_token, token_id, l2_recipient);
        nft_escrow_.insert({l1_token, token_id});
        return l2 != nullptr;
    }

    /// Pays the whole proven ETH balance of `bundle.address` to `claimer`,
    /// who must be that address or its registered delegate.
    EscapeReceipt escape_eth(const L2Oracle& oracle, const DelegateRegistry& delegates, Seconds now,
        const Address& claimer, const state::ProofBundle& bundle)
    {
        const auto& latest = oracle.latest();
        require_enabled(oracle, now);
        if (bundle.state_root != latest.root)
            fail(Errc::StaleRoot, "bundle targets " + bundle.state_root.hex() + ", latest is " + latest.root.hex());
        const auto proven = state::verify_bundle(latest.root, bundle);
        const auto& entitled = bundle.address;
        if (!delegates.may_claim(claimer, entitled))
            fail(Errc::NothingToEscape, claimer.hex() + " may not claim for " + entitled.hex());
        const auto amount = proven.account ? proven.account->balance : u256{0};
        if (amount == 0)
            fail(Errc::NothingToEscape, entitled.hex() + " has no ETH at the latest root");
        const auto n = nullifier_key(entitled, eth_asset, Word{});
        if (nullifiers_.contains(n))
            fail(Errc::NullifierUsed, "ETH of " + entitled.hex() + " was already escaped");
        if (eth_escrow_ < amount)
            fail(Errc::EscrowInsufficient,
                "ETH escrow " + to_decimal(eth_escrow_) + " cannot cover " + to_decimal(amount));

        nullifiers_.insert(n);
        eth_escrow_ -= amount;
        eth_paid_ += amount;
        l1_balances_[claimer][eth_asset] += amount;
        return {claimer, entitled, latest.root, {}, {{eth_asset, eth_asset, PayoutKind::amount, amount}}, {n}, {}};
    }

    /// Runs the resolver dispatched for `l2_contract` over the verified
    /// bundles and pays the outcome. `on_behalf_of` names the entitled L2
    /// address when the claimer is its delegate.
    EscapeReceipt escape_asset(const L2Oracle& oracle, const ResolverRegistry& registry,
        const DelegateRegistry& delegates, const resolvers::ResolverLibrary& library, Seconds now,
        const Address& claimer, const Address& l2_contract, std::span<const state::ProofBundle> bundles,
        const resolvers::ResolverArgs& args, const std::optional<Address>& on_behalf_of = {})
    {
        const auto& latest = oracle.latest();
        require_enabled(oracle, now);
        const auto entitled = on_behalf_of.value_or(claimer);
        if (!delegates.may_claim(claimer, entitled))
            fail(Errc::NothingToEscape, claimer.hex() + " may not claim for " + entitled.hex());

        const auto chosen = resolvers::dispatch(registry, library, oracle, t_, l2_contract, now);
        const resolvers::SlotReadContext ctx{latest.root, bundles};
        const auto outcome = library.run(ctx, chosen.spec, l2_contract, entitled, args);

        Word discriminator;
        if (chosen.spec.kind == resolvers::ResolverKind::erc721)
            discriminator = to_word(*args.token_id);
        const auto n = nullifier_key(entitled, l2_contract, discriminator);
        if (nullifiers_.contains(n))
            fail(Errc::NullifierUsed, "entitlement of " + entitled.hex() + " in " + l2_contract.hex() +
                                          " was already escaped");

        EscapeReceipt receipt{claimer, entitled, latest.root, chosen.resolver_id, {}, {n}, outcome.slots_consulted};
        std::map<Address, u256> fungible_needed;
        for (const auto& p : outcome.payouts)
        {
            const auto l1 = l1_token_of(p.asset);
            if (!l1)
                fail(Errc::EscrowInsufficient, "L2 asset " + p.asset.hex() + " has no L1 escrow");
            if (p.kind == PayoutKind::amount)
                fungible_needed[*l1] += p.value;
            else if (!nft_escrow_.contains({*l1, p.value}))
                fail(Errc::EscrowInsufficient, "token id " + to_decimal(p.value) + " is not in escrow");
            receipt.payouts.push_back({*l1, p.asset, p.kind, p.value});
        }
        for (const auto& [token, need] : fungible_needed)
            if (token_escrow(token) < need)
                fail(Errc::EscrowInsufficient, "escrow of " + token.hex() + " holds " +
                                                   to_decimal(token_escrow(token)) + ", needs " + to_decimal(need));

        nullifiers_.insert(n);
        for (const auto& p : receipt.payouts)
        {
            if (p.kind == PayoutKind::amount)
            {
                token_escrow_[p.asset] -= p.value;
                token_paid_[p.asset] += p.value;
                l1_balances_[claimer][p.asset] += p.value;
            }
            else
            {
                nft_escrow_.erase({p.asset, p.value});
                l1_nfts_[claimer].insert({p.asset, p.value});
            }
        }
        return receipt;
    }

    const u256& eth_escrow() const noexcept { return eth_escrow_; }
    const u256& eth_deposited() const noexcept { return eth_deposited_; }
    const u256& eth_paid() const noexcept { return eth_paid_; }

    u256 token_escrow(const Address& l1_token) const { return lookup(token_escrow_, l1_token); }
    u256 token_deposited(const Address& l1_token) const { return lookup(token_deposited_, l1_token); }
    u256 token_paid(const Address& l1_token) const { return lookup(token_paid_, l1_token); }

    const std::map<Address, u256>& token_escrows() const noexcept { return token_escrow_; }
    const std::map<Address, u256>& tokens_deposited() const noexcept { return token_deposited_; }
    const std::map<Address, u256>& tokens_paid() const noexcept { return token_paid_; }
    const std::set<NftId>& nft_escrow() const noexcept { return nft_escrow_; }
    const std::set<Hash256>& nullifiers() const noexcept { return nullifiers_; }
    const std::map<Address, std::map<Address, u256>>& l1_balances() const noexcept { return l1_balances_; }
    const std::map<Address, std::set<NftId>>& l1_nfts() const noexcept { return l1_nfts_; }
    const std::map<Address, Address>& token_map() const noexcept { return l2_to_l1_; }

    u256 l1_balance(const Address& holder, const Address& asset) const
    {
        const auto it = l1_balances_.find(holder);
        return it == l1_balances_.end() ? u256{0} : lookup(it->second, asset);
    }

private:
    static u256 lookup(const std::map<Address, u256>& m, const Address& k)
    {
        const auto it = m.find(k);
        return it == m.end() ? u256{0} : it->second;
    }

    Address mapped(const Address& l1_token, TokenStandard standard) const
    {
        const auto it = l1_to_l2_.find(l1_token);
        if (it == l1_to_l2_.end() || standards_.at(l1_token) != standard)
            fail(Errc::UnknownContract, "L1 token " + l1_token.hex() + " is not bridged as that standard");
        return it->second;
    }

    void require_enabled(const L2Oracle& oracle, Seconds now) const
    {
        if (!escape_enabled(oracle, t_, now))
            fail(Errc::EscapeNotEnabled, "escapes open at " + std::to_string(oracle.latest().timestamp + t_) +
                                             ", now is " + std::to_string(now));
    }

    Seconds t_;
    u256 eth_escrow_ = 0;
    u256 eth_deposited_ = 0;
    u256 eth_paid_ = 0;
    std::map<Address, u256> token_escrow_;
    std::map<Address, u256> token_deposited_;
    std::map<Address, u256> token_paid_;
    std::set<NftId> nft_escrow_;
    std::set<Hash256> nullifiers_;
    std::map<Address, std::map<Address, u256>> l1_balances_;
    std::map<Address, std::set<NftId>> l1_nfts_;
    std::map<Address, Address> l2_to_l1_;
    std::map<Address, Address> l1_to_l2_;
    std::map<Address, TokenStandard> standards_;
};
}  // namespace escape::l1
