// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/json_util.hpp>
#include <escape/l1/bridge.hpp>

namespace escape::l1
{
using nlohmann::json;

inline json payout_to_json(const L1Payout& p)
{
    json j = {{"asset", p.asset.hex()}, {"l2_asset", p.l2_asset.hex()}};
    if (p.kind == PayoutKind::amount)
        j["amount"] = to_decimal(p.value);
    else
        j["tokenId"] = to_decimal(p.value);
    return j;
}

inline json receipt_to_json(const EscapeReceipt& r)
{
    json payouts = json::array();
    for (const auto& p : r.payouts)
        payouts.push_back(payout_to_json(p));
    json nullifiers = json::array();
    for (const auto& n : r.nullifiers)
        nullifiers.push_back(n.hex());
    json slots = json::array();
    for (const auto& [contract, slot] : r.slots_consulted)
        slots.push_back({{"contract", contract.hex()}, {"slot", slot.hex()}});
    return {{"claimer", r.claimer.hex()}, {"entitled", r.entitled.hex()}, {"root", r.root.hex()},
        {"resolver", r.resolver_id}, {"payouts", payouts}, {"nullifiers", nullifiers}, {"slots_consulted", slots}};
}

inline json amounts_to_json(const std::map<Address, u256>& m)
{
    json j = json::object();
    for (const auto& [k, v] : m)
        j[k.hex()] = to_decimal(v);
    return j;
}

inline json nfts_to_json(const std::set<NftId>& s)
{
    json j = json::array();
    for (const auto& [token, id] : s)
        j.push_back({{"token", token.hex()}, {"tokenId", to_decimal(id)}});
    return j;
}

inline json bridge_to_json(const L1Bridge& b)
{
    json nullifiers = json::array();
    for (const auto& n : b.nullifiers())
        nullifiers.push_back(n.hex());
    json balances = json::object();
    for (const auto& [holder, assets] : b.l1_balances())
        balances[holder.hex()] = amounts_to_json(assets);
    json nfts = json::object();
    for (const auto& [holder, ids] : b.l1_nfts())
        nfts[holder.hex()] = nfts_to_json(ids);
    json tokens = json::object();
    for (const auto& [l2, l1] : b.token_map())
        tokens[l2.hex()] = l1.hex();
    return {
        {"T", std::to_string(b.t())},
        {"eth_escrow", to_decimal(b.eth_escrow())},
        {"eth_deposited", to_decimal(b.eth_deposited())},
        {"eth_paid", to_decimal(b.eth_paid())},
        {"token_escrow", amounts_to_json(b.token_escrows())},
        {"tokens_deposited", amounts_to_json(b.tokens_deposited())},
        {"tokens_paid", amounts_to_json(b.tokens_paid())},
        {"nft_escrow", nfts_to_json(b.nft_escrow())},
        {"nullifiers", nullifiers},
        {"l1_balances", balances},
        {"l1_nfts", nfts},
        {"token_map", tokens},
    };
}

inline json registry_to_json(const ResolverRegistry& r, const DelegateRegistry& d)
{
    json resolvers = json::object();
    for (const auto& [contract, reg] : r.entries())
        resolvers[contract.hex()] = {{"resolver", reg.resolver_id}, {"kind", std::string{to_string(reg.kind)}},
            {"registered_at", std::to_string(reg.registered_at)}};
    json delegates = json::object();
    for (const auto& [wallet, rec] : d.records())
        delegates[wallet.hex()] = {
            {"delegate", rec.l1_delegate.hex()}, {"registered_at", std::to_string(rec.registered_at)}};
    return {{"resolvers", resolvers}, {"delegates", delegates}};
}
}  // namespace escape::l1
