// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/state/account.hpp>
#include <escape/state/layout.hpp>

#include <boost/multiprecision/integer.hpp>

#include <map>
#include <optional>
#include <string>
#include <tuple>

namespace escape::state
{
struct ContractInfo
{
    ContractKind kind;
    std::optional<TokenLayout> layout;  // absent for wallets
    Address deployer;
    Hash256 code_hash;

    bool operator==(const ContractInfo&) const = default;
};

/// Which mapping a recorded storage write belongs to.
enum class MappingKind
{
    erc20_balance,
    erc721_owner,
};

/// Placeholder bytecode for each contract kind. The ledger never executes code;
/// the blob only fixes a distinct, reproducible code hash.
inline Bytes default_code(ContractKind kind)
{
    const auto tag = std::string{"escape-hatch placeholder code: "} + std::string{to_string(kind)};
    return {tag.begin(), tag.end()};
}

/// Ledger-level L2 world: accounts, contract storage and the token contracts
/// that live in it. Zero-valued slots are never stored.
class WorldState
{
public:
    struct Account
    {
        u256 nonce = 0;
        u256 balance = 0;
        Hash256 code_hash = empty_code_hash();
        std::map<Word, u256> storage;

        bool operator==(const Account&) const = default;
    };

    using MappingKey = std::tuple<Address, MappingKind, Word>;

    const std::map<Address, Account>& accounts() const noexcept { return accounts_; }
    const std::map<Address, ContractInfo>& contracts() const noexcept { return contracts_; }

    /// Every mapping entry written through the token ledgers, keyed by
    /// (contract, mapping, key word), with the slot it was written to.
    const std::map<MappingKey, Word>& mapping_writes() const noexcept { return mapping_writes_; }

    const Account* find(const Address& a) const
    {
        const auto it = accounts_.find(a);
        return it == accounts_.end() ? nullptr : &it->second;
    }

    const ContractInfo* contract(const Address& a) const
    {
        const auto it = contracts_.find(a);
        return it == contracts_.end() ? nullptr : &it->second;
    }

    u256 balance(const Address& a) const
    {
        const auto* acc = find(a);
        return acc ? acc->balance : u256{0};
    }

    u256 nonce(const Address& a) const
    {
        const auto* acc = find(a);
        return acc ? acc->nonce : u256{0};
    }

    void touch(const Address& a) { accounts_.try_emplace(a); }

    /// Raw installs used when loading a dumped world. No ledger rules apply.
    void restore_account(const Address& a, Account acc)
    {
        std::erase_if(acc.storage, [](const auto& kv) { return kv.second == 0; });
        accounts_[a] = std::move(acc);
    }

    void restore_contract(const Address& a, ContractInfo info) { contracts_[a] = std::move(info); }

    void set_balance(const Address& a, const u256& amount) { accounts_[a].balance = amount; }

    void credit_eth(const Address& a, const u256& amount) { accounts_[a].balance += amount; }

    void debit_eth(const Address& a, const u256& amount)
    {
        auto& acc = accounts_[a];
        if (acc.balance < amount)
            fail(Errc::InsufficientBalance, "ETH balance of " + a.hex());
        acc.balance -= amount;
    }

    void transfer_eth(const Address& from, const Address& to, const u256& amount)
    {
        debit_eth(from, amount);
        credit_eth(to, amount);
    }

    u256 storage_at(const Address& a, const Word& slot) const
    {
        const auto* acc = find(a);
        if (!acc)
            return 0;
        const auto it = acc->storage.find(slot);
        return it == acc->storage.end() ? u256{0} : it->second;
    }

    /// Writing zero removes the slot.
    void set_storage(const Address& a, const Word& slot, const u256& value)
    {
        auto& storage = accounts_[a].storage;
        if (value == 0)
            storage.erase(slot);
        else
            storage[slot] = value;
    }

    /// CREATE-style deployment: the address comes from the deployer's current
    /// nonce, which is then incremented.
    Address deploy(const Address& deployer, ContractKind kind, std::optional<TokenLayout> layout = {},
        const std::optional<Bytes>& code = {})
    {
        const auto address = create_address(deployer, nonce(deployer));
        install(address, deployer, kind, std::move(layout), code.value_or(default_code(kind)));
        return address;
    }

    /// CREATE2-style deployment by `deployer` (normally a factory contract).
    Address deploy_create2(const Address& deployer, const Hash256& salt, ContractKind kind,
        std::optional<TokenLayout> layout = {}, const std::optional<Bytes>& code = {})
    {
        const auto blob = code.value_or(default_code(kind));
        const auto address = create2_address(deployer, salt, keccak256(blob));
        install(address, deployer, kind, std::move(layout), blob);
        return address;
    }

    // ERC-20 ---------------------------------------------------------------

    Address erc20_deploy(const Address& deployer, const TokenLayout& layout = TokenLayout::erc20())
    {
        if (layout.kind != ContractKind::erc20)
            fail(Errc::SchemaViolation, "erc20_deploy needs an erc20 layout");
        return deploy(deployer, ContractKind::erc20, layout);
    }

    u256 erc20_balance(const Address& token, const Address& holder) const
    {
        const auto& l = fungible_layout(token);
        return storage_at(token, mapping_slot(pad32(holder), l.balances_slot));
    }

    u256 erc20_total_supply(const Address& token) const
    {
        return storage_at(token, to_word(fungible_layout(token).total_supply_slot));
    }

    void erc20_mint(const Address& token, const Address& to, const u256& amount)
    {
        const auto& l = fungible_layout(token);
        write_balance(token, l, to, erc20_balance(token, to) + amount);
        set_storage(token, to_word(l.total_supply_slot), erc20_total_supply(token) + amount);
    }

    void erc20_burn(const Address& token, const Address& from, const u256& amount)
    {
        const auto& l = fungible_layout(token);
        const auto bal = erc20_balance(token, from);
        if (bal < amount)
            fail(Errc::InsufficientBalance, "token balance of " + from.hex());
        write_balance(token, l, from, bal - amount);
        set_storage(token, to_word(l.total_supply_slot), erc20_total_supply(token) - amount);
    }

    void erc20_transfer(const Address& token, const Address& from, const Address& to, const u256& amount)
    {
        const auto& l = fungible_layout(token);
        const auto from_bal = erc20_balance(token, from);
        if (from_bal < amount)
            fail(Errc::InsufficientBalance,
                "token " + token.hex() + " balance of " + from.hex() + " is " + to_decimal(from_bal));
        write_balance(token, l, from, from_bal - amount);
        write_balance(token, l, to, erc20_balance(token, to) + amount);
    }

    // ERC-721 --------------------------------------------------------------

    Address erc721_deploy(const Address& deployer, const TokenLayout& layout = TokenLayout::erc721())
    {
        if (layout.kind != ContractKind::erc721)
            fail(Errc::SchemaViolation, "erc721_deploy needs an erc721 layout");
        return deploy(deployer, ContractKind::erc721, layout);
    }

    std::optional<Address> erc721_owner(const Address& token, const u256& token_id) const
    {
        const auto v = storage_at(token, owner_slot(token, token_id));
        if (v == 0)
            return std::nullopt;
        return low_address(to_word(v));
    }

    void erc721_mint(const Address& token, const u256& token_id, const Address& to)
    {
        if (erc721_owner(token, token_id))
            fail(Errc::AlreadyMinted, "token id " + to_decimal(token_id));
        write_owner(token, token_id, to);
    }

    void erc721_transfer(const Address& token, const u256& token_id, const Address& from, const Address& to)
    {
        const auto owner = erc721_owner(token, token_id);
        if (!owner || *owner != from)
            fail(Errc::NotOwner, "token id " + to_decimal(token_id) + " is not owned by " + from.hex());
        write_owner(token, token_id, to);
    }

    // Uniswap v2 pair --------------------------------------------------------

    Address univ2_deploy(const Address& deployer, const Address& token_x, const Address& token_y,
        const TokenLayout& layout = TokenLayout::univ2pair())
    {
        if (layout.kind != ContractKind::univ2pair)
            fail(Errc::SchemaViolation, "univ2_deploy needs a univ2pair layout");
        fungible_layout(token_x);
        fungible_layout(token_y);
        const auto pool = deploy(deployer, ContractKind::univ2pair, layout);
        set_storage(pool, to_word(layout.token0_slot), from_word(pad32(token_x)));
        set_storage(pool, to_word(layout.token1_slot), from_word(pad32(token_y)));
        return pool;
    }

    std::pair<Address, Address> univ2_tokens(const Address& pool) const
    {
        const auto& l = pool_layout(pool);
        return {low_address(to_word(storage_at(pool, to_word(l.token0_slot)))),
            low_address(to_word(storage_at(pool, to_word(l.token1_slot))))};
    }

    /// Moves both amounts from the provider into the pool and mints LP tokens:
    /// floor(sqrt(x*y)) for the first deposit, otherwise the smaller pro-rata
    /// share against the pool's balances before the deposit.
    u256 univ2_add_liquidity(const Address& pool, const Address& provider, const u256& amount_x, const u256& amount_y)
    {
        pool_layout(pool);
        const auto [token_x, token_y] = univ2_tokens(pool);
        if (erc20_balance(token_x, provider) < amount_x || erc20_balance(token_y, provider) < amount_y)
            fail(Errc::InsufficientBalance, "provider " + provider.hex() + " cannot fund the deposit");

        const auto bal_x = erc20_balance(token_x, pool);
        const auto bal_y = erc20_balance(token_y, pool);
        const auto total = erc20_total_supply(pool);
        u256 lp;
        if (total == 0)
            lp = static_cast<u256>(boost::multiprecision::sqrt(u512{amount_x} * u512{amount_y}));
        else
        {
            const auto by_x = static_cast<u256>(u512{amount_x} * total / bal_x);
            const auto by_y = static_cast<u256>(u512{amount_y} * total / bal_y);
            lp = std::min(by_x, by_y);
        }
        if (lp == 0)
            fail(Errc::InsufficientLiquidity, "deposit mints no LP tokens");

        erc20_transfer(token_x, provider, pool, amount_x);
        erc20_transfer(token_y, provider, pool, amount_y);
        erc20_mint(pool, provider, lp);
        return lp;
    }

    bool operator==(const WorldState&) const = default;

private:
    void install(const Address& address, const Address& deployer, ContractKind kind,
        std::optional<TokenLayout> layout, const Bytes& code)
    {
        if (contracts_.contains(address))
            fail(Errc::SchemaViolation, "contract already deployed at " + address.hex());
        if (layout)
            layout->validate();
        accounts_[deployer].nonce += 1;
        auto& acc = accounts_[address];
        acc.nonce = 1;
        acc.code_hash = keccak256(code);
        contracts_[address] = ContractInfo{kind, std::move(layout), deployer, acc.code_hash};
    }

    const TokenLayout& fungible_layout(const Address& token) const
    {
        const auto* c = contract(token);
        if (!c || !c->layout || (c->kind != ContractKind::erc20 && c->kind != ContractKind::univ2pair))
            fail(Errc::UnknownContract, "no ERC-20 ledger at " + token.hex());
        return *c->layout;
    }

    const TokenLayout& pool_layout(const Address& pool) const
    {
        const auto* c = contract(pool);
        if (!c || c->kind != ContractKind::univ2pair)
            fail(Errc::UnknownContract, "no Uniswap v2 pair at " + pool.hex());
        return *c->layout;
    }

    Word owner_slot(const Address& token, const u256& token_id) const
    {
        const auto* c = contract(token);
        if (!c || c->kind != ContractKind::erc721)
            fail(Errc::UnknownContract, "no ERC-721 ledger at " + token.hex());
        return mapping_slot(to_word(token_id), c->layout->owners_slot);
    }

    void write_balance(const Address& token, const TokenLayout& l, const Address& holder, const u256& value)
    {
        const auto key = pad32(holder);
        const auto slot = mapping_slot(key, l.balances_slot);
        set_storage(token, slot, value);
        mapping_writes_[{token, MappingKind::erc20_balance, key}] = slot;
    }

    void write_owner(const Address& token, const u256& token_id, const Address& owner)
    {
        const auto key = to_word(token_id);
        const auto slot = owner_slot(token, token_id);
        set_storage(token, slot, from_word(pad32(owner)));
        mapping_writes_[{token, MappingKind::erc721_owner, key}] = slot;
    }

    std::map<Address, Account> accounts_;
    std::map<Address, ContractInfo> contracts_;
    std::map<MappingKey, Word> mapping_writes_;
};
}  // namespace escape::state
