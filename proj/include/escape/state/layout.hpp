// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/encoding.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace escape::state
{
enum class ContractKind
{
    erc20,
    erc721,
    univ2pair,
    wallet,
};

constexpr std::string_view to_string(ContractKind k) noexcept
{
    switch (k)
    {
    case ContractKind::erc20:
        return "erc20";
    case ContractKind::erc721:
        return "erc721";
    case ContractKind::univ2pair:
        return "univ2pair";
    case ContractKind::wallet:
        return "wallet";
    }
    return "unknown";
}

inline std::optional<ContractKind> contract_kind_from_string(std::string_view s) noexcept
{
    for (const auto k : {ContractKind::erc20, ContractKind::erc721, ContractKind::univ2pair, ContractKind::wallet})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

/// Storage slot indices of a token contract. Only the fields relevant to `kind`
/// are meaningful. Defaults follow the common OpenZeppelin ERC-20 layout and the
/// Uniswap v2 pair layout.
struct TokenLayout
{
    ContractKind kind = ContractKind::erc20;
    u256 balances_slot = 0;
    u256 total_supply_slot = 2;
    u256 owners_slot = 0;
    u256 token0_slot = 6;
    u256 token1_slot = 7;

    static TokenLayout erc20(u256 balances = 0, u256 total_supply = 2)
    {
        TokenLayout l;
        l.kind = ContractKind::erc20;
        l.balances_slot = balances;
        l.total_supply_slot = total_supply;
        return l;
    }

    static TokenLayout erc721(u256 owners = 0)
    {
        TokenLayout l;
        l.kind = ContractKind::erc721;
        l.owners_slot = owners;
        return l;
    }

    static TokenLayout univ2pair(u256 total_supply = 0, u256 balances = 1, u256 token0 = 6, u256 token1 = 7)
    {
        TokenLayout l;
        l.kind = ContractKind::univ2pair;
        l.total_supply_slot = total_supply;
        l.balances_slot = balances;
        l.token0_slot = token0;
        l.token1_slot = token1;
        return l;
    }

    std::vector<u256> used_slots() const
    {
        switch (kind)
        {
        case ContractKind::erc20:
            return {balances_slot, total_supply_slot};
        case ContractKind::erc721:
            return {owners_slot};
        case ContractKind::univ2pair:
            return {balances_slot, total_supply_slot, token0_slot, token1_slot};
        case ContractKind::wallet:
            break;
        }
        return {};
    }

    /// Throws SchemaViolation when two roles share a slot index.
    void validate() const
    {
        if (kind == ContractKind::wallet)
            fail(Errc::SchemaViolation, "wallets have no token layout");
        const auto slots = used_slots();
        for (std::size_t i = 0; i < slots.size(); ++i)
            for (std::size_t j = i + 1; j < slots.size(); ++j)
                if (slots[i] == slots[j])
                    fail(Errc::SchemaViolation,
                        std::string{to_string(kind)} + " layout reuses slot " + to_decimal(slots[i]));
    }

    bool operator==(const TokenLayout&) const = default;
};

/// Location of a Solidity mapping entry: keccak256(pad32(key) ++ pad32(index)).
inline Word mapping_slot(const Word& key, const u256& index)
{
    return keccak256(concat({key, to_word(index)}));
}
}  // namespace escape::state
