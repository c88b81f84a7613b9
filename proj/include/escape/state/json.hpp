// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/json_util.hpp>
#include <escape/state/proof.hpp>

namespace escape::state
{
using nlohmann::json;

inline json proof_nodes_to_json(const mpt::ProofNodes& p)
{
    json out = json::array();
    for (const auto& n : p.nodes)
        out.push_back(to_hex(n));
    return out;
}

inline mpt::ProofNodes proof_nodes_from_json(const json& j, const std::string& path)
{
    jsonio::expect_array(j, path);
    mpt::ProofNodes p;
    for (std::size_t i = 0; i < j.size(); ++i)
        p.nodes.push_back(jsonio::as_hex(j[i], jsonio::index_path(path, i)));
    return p;
}

/// eth_getProof response shape, plus the state root the proofs target.
inline json bundle_to_json(const ProofBundle& b)
{
    const auto acc = b.account.value_or(AccountState{});
    json storage = json::array();
    for (const auto& sp : b.slot_proofs)
        storage.push_back({{"key", sp.key.hex()}, {"value", to_quantity(sp.value.value_or(0))},
            {"proof", proof_nodes_to_json(sp.proof)}});
    return {
        {"address", b.address.hex()},
        {"stateRoot", b.state_root.hex()},
        {"accountProof", proof_nodes_to_json(b.account_proof)},
        {"balance", to_quantity(acc.balance)},
        {"nonce", to_quantity(acc.nonce)},
        {"storageHash", acc.storage_root.hex()},
        {"codeHash", acc.code_hash.hex()},
        {"storageProof", storage},
    };
}

/// The JSON form carries no explicit absence marker; an all-default account
/// parses as absent, which verify_bundle treats identically.
inline ProofBundle bundle_from_json(const json& j, const std::string& path = {})
{
    jsonio::only_fields(j, path,
        {"address", "stateRoot", "accountProof", "balance", "nonce", "storageHash", "codeHash", "storageProof"});
    ProofBundle b;
    b.address = jsonio::as_address(jsonio::field(j, path, "address"), jsonio::child_path(path, "address"));
    b.state_root = jsonio::as_hash(jsonio::field(j, path, "stateRoot"), jsonio::child_path(path, "stateRoot"));
    b.account_proof =
        proof_nodes_from_json(jsonio::field(j, path, "accountProof"), jsonio::child_path(path, "accountProof"));
    AccountState acc;
    acc.balance = jsonio::as_quantity(jsonio::field(j, path, "balance"), jsonio::child_path(path, "balance"));
    acc.nonce = jsonio::as_quantity(jsonio::field(j, path, "nonce"), jsonio::child_path(path, "nonce"));
    acc.storage_root = jsonio::as_hash(jsonio::field(j, path, "storageHash"), jsonio::child_path(path, "storageHash"));
    acc.code_hash = jsonio::as_hash(jsonio::field(j, path, "codeHash"), jsonio::child_path(path, "codeHash"));
    if (acc != AccountState{})
        b.account = acc;

    const auto sp_path = jsonio::child_path(path, "storageProof");
    const auto& sps = jsonio::field(j, path, "storageProof");
    jsonio::expect_array(sps, sp_path);
    for (std::size_t i = 0; i < sps.size(); ++i)
    {
        const auto p = jsonio::index_path(sp_path, i);
        jsonio::only_fields(sps[i], p, {"key", "value", "proof"});
        SlotProof sp;
        sp.key = jsonio::as_word(jsonio::field(sps[i], p, "key"), jsonio::child_path(p, "key"));
        const auto v = jsonio::as_quantity(jsonio::field(sps[i], p, "value"), jsonio::child_path(p, "value"));
        if (v != 0)
            sp.value = v;
        sp.proof = proof_nodes_from_json(jsonio::field(sps[i], p, "proof"), jsonio::child_path(p, "proof"));
        b.slot_proofs.push_back(std::move(sp));
    }
    return b;
}

/// Full dump of a world: accounts with storage and the contract registry.
/// Balances and nonces are decimal strings; storage words are 32-octet hex.
inline json world_to_json(const WorldState& w)
{
    json accounts = json::object();
    for (const auto& [address, acc] : w.accounts())
    {
        json storage = json::object();
        for (const auto& [slot, value] : acc.storage)
            storage[slot.hex()] = to_word(value).hex();
        accounts[address.hex()] = {{"nonce", to_decimal(acc.nonce)}, {"balance", to_decimal(acc.balance)},
            {"codeHash", acc.code_hash.hex()}, {"storage", storage}};
    }
    json contracts = json::object();
    for (const auto& [address, c] : w.contracts())
    {
        json entry = {{"kind", std::string{to_string(c.kind)}}, {"deployer", c.deployer.hex()},
            {"codeHash", c.code_hash.hex()}};
        if (c.layout)
        {
            json layout = json::object();
            const auto& l = *c.layout;
            switch (l.kind)
            {
            case ContractKind::erc20:
                layout = {{"balances_slot", to_decimal(l.balances_slot)},
                    {"total_supply_slot", to_decimal(l.total_supply_slot)}};
                break;
            case ContractKind::erc721:
                layout = {{"owners_slot", to_decimal(l.owners_slot)}};
                break;
            case ContractKind::univ2pair:
                layout = {{"balances_slot", to_decimal(l.balances_slot)},
                    {"total_supply_slot", to_decimal(l.total_supply_slot)},
                    {"token0_slot", to_decimal(l.token0_slot)}, {"token1_slot", to_decimal(l.token1_slot)}};
                break;
            case ContractKind::wallet:
                break;
            }
            entry["layout"] = layout;
        }
        contracts[address.hex()] = entry;
    }
    return {{"stateRoot", state_root(w).hex()}, {"accounts", accounts}, {"contracts", contracts}};
}

inline TokenLayout layout_from_json(ContractKind kind, const json& j, const std::string& path)
{
    TokenLayout l;
    switch (kind)
    {
    case ContractKind::erc20:
        l = TokenLayout::erc20();
        jsonio::only_fields(j, path, {"balances_slot", "total_supply_slot"});
        break;
    case ContractKind::erc721:
        l = TokenLayout::erc721();
        jsonio::only_fields(j, path, {"owners_slot"});
        break;
    case ContractKind::univ2pair:
        l = TokenLayout::univ2pair();
        jsonio::only_fields(j, path, {"balances_slot", "total_supply_slot", "token0_slot", "token1_slot"});
        break;
    case ContractKind::wallet:
        jsonio::schema_error(path, "wallets have no layout");
    }
    auto read = [&](std::string_view name, u256& out) {
        if (const auto it = j.find(std::string{name}); it != j.end())
            out = jsonio::as_uint(*it, jsonio::child_path(path, name));
    };
    read("balances_slot", l.balances_slot);
    read("total_supply_slot", l.total_supply_slot);
    read("owners_slot", l.owners_slot);
    read("token0_slot", l.token0_slot);
    read("token1_slot", l.token1_slot);
    try
    {
        l.validate();
    }
    catch (const Error& e)
    {
        jsonio::schema_error(path, e.what());
    }
    return l;
}

/// Inverse of world_to_json. The recorded stateRoot, when present, must match
/// the recomputed root.
inline WorldState world_from_json(const json& j, const std::string& path = {})
{
    jsonio::only_fields(j, path, {"stateRoot", "accounts", "contracts"});
    WorldState w;
    const auto accounts_path = jsonio::child_path(path, "accounts");
    const auto& accounts = jsonio::field(j, path, "accounts");
    jsonio::expect_object(accounts, accounts_path);
    for (const auto& [key, a] : accounts.items())
    {
        const auto p = jsonio::child_path(accounts_path, key);
        jsonio::only_fields(a, p, {"nonce", "balance", "codeHash", "storage"});
        const auto address = jsonio::as_address(json(key), p);
        WorldState::Account acc;
        if (a.contains("nonce"))
            acc.nonce = jsonio::as_uint(a["nonce"], jsonio::child_path(p, "nonce"));
        if (a.contains("balance"))
            acc.balance = jsonio::as_uint(a["balance"], jsonio::child_path(p, "balance"));
        if (a.contains("codeHash"))
            acc.code_hash = jsonio::as_hash(a["codeHash"], jsonio::child_path(p, "codeHash"));
        if (a.contains("storage"))
        {
            const auto sp = jsonio::child_path(p, "storage");
            jsonio::expect_object(a["storage"], sp);
            for (const auto& [slot, value] : a["storage"].items())
            {
                const auto word = jsonio::as_word(json(slot), jsonio::child_path(sp, slot));
                const auto v = from_word(jsonio::as_word(value, jsonio::child_path(sp, slot)));
                if (v != 0)
                    acc.storage[word] = v;
            }
        }
        w.restore_account(address, std::move(acc));
    }
    if (j.contains("contracts"))
    {
        const auto cp = jsonio::child_path(path, "contracts");
        jsonio::expect_object(j["contracts"], cp);
        for (const auto& [key, c] : j["contracts"].items())
        {
            const auto p = jsonio::child_path(cp, key);
            jsonio::only_fields(c, p, {"kind", "deployer", "codeHash", "layout"});
            const auto kind_name = jsonio::as_string(jsonio::field(c, p, "kind"), jsonio::child_path(p, "kind"));
            const auto kind = contract_kind_from_string(kind_name);
            if (!kind)
                jsonio::schema_error(jsonio::child_path(p, "kind"), "unknown contract kind '" + kind_name + "'");
            ContractInfo info{*kind, std::nullopt,
                jsonio::as_address(jsonio::field(c, p, "deployer"), jsonio::child_path(p, "deployer")),
                jsonio::as_hash(jsonio::field(c, p, "codeHash"), jsonio::child_path(p, "codeHash"))};
            if (*kind != ContractKind::wallet)
                info.layout = layout_from_json(*kind, jsonio::field(c, p, "layout"), jsonio::child_path(p, "layout"));
            w.restore_contract(jsonio::as_address(json(key), p), std::move(info));
        }
    }
    if (j.contains("stateRoot"))
    {
        const auto recorded = jsonio::as_hash(j["stateRoot"], jsonio::child_path(path, "stateRoot"));
        if (recorded != state_root(w))
            jsonio::schema_error(jsonio::child_path(path, "stateRoot"), "does not match the recomputed root");
    }
    return w;
}
}  // namespace escape::state
