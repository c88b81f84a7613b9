// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/resolvers/context.hpp>
#include <escape/state/layout.hpp>

#include <functional>
#include <vector>

namespace escape::resolvers
{
using state::TokenLayout;

enum class PayoutKind
{
    amount,
    token_id,
};

/// One asset a resolver grants, named by its L2 contract.
struct AssetPayout
{
    Address asset;
    PayoutKind kind = PayoutKind::amount;
    u256 value;

    bool operator==(const AssetPayout&) const = default;
};

struct ResolverOutcome
{
    Address entitled;
    std::vector<AssetPayout> payouts;
    std::vector<SlotRef> slots_consulted;

    bool operator==(const ResolverOutcome&) const = default;
};

inline Word erc20_balance_slot(const Address& user, const u256& balances_slot)
{
    return state::mapping_slot(pad32(user), balances_slot);
}

inline Word erc721_owner_slot(const u256& token_id, const u256& owners_slot)
{
    return state::mapping_slot(to_word(token_id), owners_slot);
}

template <SlotReader R>
ResolverOutcome resolve_erc20(const R& ctx, const Address& token, const Address& user, const TokenLayout& layout)
{
    RecordingReader<R> rec{ctx};
    const auto balance = rec.read(token, erc20_balance_slot(user, layout.balances_slot));
    if (!balance || *balance == 0)
        fail(Errc::NothingToEscape, user.hex() + " holds no " + token.hex());
    return {user, {{token, PayoutKind::amount, *balance}}, rec.consulted()};
}

template <SlotReader R>
ResolverOutcome resolve_erc721(
    const R& ctx, const Address& token, const u256& token_id, const Address& claim_by, const TokenLayout& layout)
{
    RecordingReader<R> rec{ctx};
    const auto raw = rec.read(token, erc721_owner_slot(token_id, layout.owners_slot));
    if (!raw || *raw == 0)
        fail(Errc::NothingToEscape, "token id " + to_decimal(token_id) + " of " + token.hex() + " is not minted");
    const auto owner = low_address(to_word(*raw));
    if (owner != claim_by)
        fail(Errc::NotOwner, "token id " + to_decimal(token_id) + " is owned by " + owner.hex());
    return {claim_by, {{token, PayoutKind::token_id, token_id}}, rec.consulted()};
}

using LayoutLookup = std::function<TokenLayout(const Address&)>;

/// Forced burn of a provider's whole LP position: reads the pair's tokens,
/// the pair's balance in each, the LP supply and the provider's LP balance,
/// then pays floor(lp * balance / supply) of each token.
template <SlotReader R>
ResolverOutcome resolve_univ2(const R& ctx, const Address& pool, const Address& provider,
    const TokenLayout& pool_layout, const LayoutLookup& token_layout)
{
    RecordingReader<R> rec{ctx};
    const auto token_x = low_address(to_word(rec.read(pool, to_word(pool_layout.token0_slot)).value_or(0)));
    const auto token_y = low_address(to_word(rec.read(pool, to_word(pool_layout.token1_slot)).value_or(0)));
    if (token_x.is_zero() || token_y.is_zero())
        fail(Errc::NothingToEscape, "pool " + pool.hex() + " has no token pair recorded");

    const auto bal_x =
        rec.read(token_x, erc20_balance_slot(pool, token_layout(token_x).balances_slot)).value_or(0);
    const auto bal_y =
        rec.read(token_y, erc20_balance_slot(pool, token_layout(token_y).balances_slot)).value_or(0);
    const auto total = rec.read(pool, to_word(pool_layout.total_supply_slot)).value_or(0);
    const auto lp = rec.read(pool, erc20_balance_slot(provider, pool_layout.balances_slot)).value_or(0);

    if (lp == 0)
        fail(Errc::NothingToEscape, provider.hex() + " holds no LP tokens of " + pool.hex());
    if (total == 0)
        fail(Errc::ZeroSupply, "pool " + pool.hex() + " reports zero LP supply");

    const auto share = [&](const u256& bal) { return static_cast<u256>(u512{lp} * bal / total); };
    ResolverOutcome out{provider, {}, rec.consulted()};
    if (const auto x = share(bal_x); x != 0)
        out.payouts.push_back({token_x, PayoutKind::amount, x});
    if (const auto y = share(bal_y); y != 0)
        out.payouts.push_back({token_y, PayoutKind::amount, y});
    if (out.payouts.empty())
        fail(Errc::NothingToEscape, "LP share of " + provider.hex() + " rounds to nothing");
    return out;
}
}  // namespace escape::resolvers
