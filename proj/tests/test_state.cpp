// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#include "oracles/reference_state.hpp"
#include "test_util.hpp"

#include <escape/state.hpp>

#include <algorithm>

using namespace escape;
using namespace escape::state;
using escape::test::addr;
using escape::test::expect_errc;
using escape::test::random_address;
using escape::test::random_word;

namespace
{
WorldState random_world(std::mt19937_64& rng, std::size_t accounts)
{
    WorldState w;
    for (std::size_t i = 0; i < accounts; ++i)
    {
        const auto a = random_address(rng);
        w.credit_eth(a, rng() % 1000000);
        if (rng() % 3 == 0)
        {
            const auto slots = rng() % 6;
            for (std::size_t s = 0; s < slots; ++s)
                w.set_storage(a, random_word(rng), 1 + rng() % 100000);
        }
    }
    return w;
}
}  // namespace

TEST(account, rlp_round_trip)
{
    AccountState a{5, 1000, mpt::empty_trie_root(), empty_code_hash()};
    EXPECT_EQ(AccountState::from_rlp(a.rlp()), a);
    expect_errc(Errc::MalformedRlp, [] { AccountState::from_rlp(Bytes{0xc0}); });
}

TEST(account, storage_value_encoding)
{
    EXPECT_EQ(encode_storage_value(1), (Bytes{0x01}));
    EXPECT_EQ(encode_storage_value(0x80), (Bytes{0x81, 0x80}));
    EXPECT_EQ(decode_storage_value(encode_storage_value(123456789)), 123456789);
    expect_errc(Errc::MalformedRlp, [] { decode_storage_value(Bytes{0x80}); });
    expect_errc(Errc::MalformedRlp, [] { decode_storage_value(Bytes{0x82, 0x00, 0x01}); });
}

TEST(state, empty_world_has_empty_root)
{
    EXPECT_EQ(state_root(WorldState{}), mpt::empty_trie_root());
}

TEST(state, root_matches_reference_for_random_worlds)
{
    std::mt19937_64 rng{101};
    for (int round = 0; round < 20; ++round)
    {
        const auto w = random_world(rng, 1 + rng() % 200);
        ASSERT_EQ(state_root(w), oracle::reference_state_root(w)) << "round " << round;
    }
}

TEST(state, single_credit_changes_root_once)
{
    WorldState w;
    const auto before = state_root(w);
    w.credit_eth(addr(1), 10);
    const auto after = state_root(w);
    EXPECT_NE(before, after);
    EXPECT_EQ(w.balance(addr(1)), 10);
    EXPECT_EQ(state_root(w), after);
}

TEST(state, zero_slot_is_pruned)
{
    WorldState a;
    a.credit_eth(addr(1), 1);
    WorldState b = a;
    b.set_storage(addr(1), Word{}, 7);
    b.set_storage(addr(1), Word{}, 0);
    EXPECT_EQ(state_root(a), state_root(b));
    EXPECT_TRUE(b.find(addr(1))->storage.empty());
}

TEST(state, insertion_order_does_not_matter)
{
    std::mt19937_64 rng{7};
    std::vector<std::pair<Address, u256>> credits;
    for (int i = 0; i < 50; ++i)
        credits.emplace_back(random_address(rng), 1 + rng() % 1000);
    WorldState a, b;
    for (const auto& [who, v] : credits)
        a.credit_eth(who, v);
    std::shuffle(credits.begin(), credits.end(), rng);
    for (const auto& [who, v] : credits)
        b.credit_eth(who, v);
    EXPECT_EQ(state_root(a), state_root(b));
}

TEST(state, erc20_mint_writes_mapping_slot)
{
    WorldState w;
    const auto token = w.erc20_deploy(addr(0xd0));
    EXPECT_EQ(token, create_address(addr(0xd0), 0));
    w.erc20_mint(token, addr(1), 500);
    EXPECT_EQ(w.storage_at(token, mapping_slot(pad32(addr(1)), 0)), 500);
    EXPECT_EQ(w.erc20_total_supply(token), 500);
    EXPECT_EQ(w.storage_at(token, to_word(2)), 500);
    EXPECT_EQ(state_root(w), oracle::reference_state_root(w));
}

TEST(state, erc20_custom_layout)
{
    WorldState w;
    const auto token = w.erc20_deploy(addr(0xd0), TokenLayout::erc20(5, 9));
    w.erc20_mint(token, addr(1), 42);
    EXPECT_EQ(w.storage_at(token, mapping_slot(pad32(addr(1)), 5)), 42);
    EXPECT_EQ(w.storage_at(token, to_word(9)), 42);
    EXPECT_EQ(w.storage_at(token, mapping_slot(pad32(addr(1)), 0)), 0);
}

TEST(state, erc20_transfer_conserves_supply)
{
    WorldState w;
    const auto token = w.erc20_deploy(addr(0xd0));
    w.erc20_mint(token, addr(1), 100);
    w.erc20_transfer(token, addr(1), addr(2), 30);
    EXPECT_EQ(w.erc20_balance(token, addr(1)), 70);
    EXPECT_EQ(w.erc20_balance(token, addr(2)), 30);
    EXPECT_EQ(w.erc20_total_supply(token), 100);
    expect_errc(Errc::InsufficientBalance, [&] { w.erc20_transfer(token, addr(2), addr(1), 31); });
    w.erc20_transfer(token, addr(2), addr(1), 30);
    EXPECT_TRUE(w.find(token)->storage.count(mapping_slot(pad32(addr(2)), 0)) == 0);
}

TEST(state, eth_transfer_conserves_total)
{
    std::mt19937_64 rng{9};
    WorldState w;
    std::vector<Address> users;
    for (int i = 0; i < 10; ++i)
    {
        users.push_back(random_address(rng));
        w.credit_eth(users.back(), 1000);
    }
    for (int i = 0; i < 500; ++i)
    {
        const auto& from = users[rng() % users.size()];
        const auto& to = users[rng() % users.size()];
        const u256 amount = rng() % 300;
        if (w.balance(from) >= amount)
            w.transfer_eth(from, to, amount);
        else
            expect_errc(Errc::InsufficientBalance, [&] { w.transfer_eth(from, to, amount); });
    }
    u256 total = 0;
    for (const auto& u : users)
        total += w.balance(u);
    EXPECT_EQ(total, 10000);
}

TEST(state, erc721_owner_slot_and_rules)
{
    WorldState w;
    const auto nft = w.erc721_deploy(addr(0xd0));
    w.erc721_mint(nft, 7, addr(1));
    EXPECT_EQ(w.storage_at(nft, mapping_slot(to_word(7), 0)), from_word(pad32(addr(1))));
    EXPECT_EQ(w.erc721_owner(nft, 7), addr(1));
    expect_errc(Errc::AlreadyMinted, [&] { w.erc721_mint(nft, 7, addr(2)); });
    expect_errc(Errc::NotOwner, [&] { w.erc721_transfer(nft, 7, addr(2), addr(3)); });
    w.erc721_transfer(nft, 7, addr(1), addr(2));
    EXPECT_EQ(w.erc721_owner(nft, 7), addr(2));
    EXPECT_FALSE(w.erc721_owner(nft, 8));
}

TEST(state, univ2_liquidity_math)
{
    WorldState w;
    const auto x = w.erc20_deploy(addr(0xd0));
    const auto y = w.erc20_deploy(addr(0xd0));
    const auto pool = w.univ2_deploy(addr(0xd0), x, y);
    EXPECT_EQ(w.univ2_tokens(pool), std::make_pair(x, y));
    w.erc20_mint(x, addr(1), 1000);
    w.erc20_mint(y, addr(1), 4000);
    w.erc20_mint(x, addr(2), 1000);
    w.erc20_mint(y, addr(2), 1000);

    EXPECT_EQ(w.univ2_add_liquidity(pool, addr(1), 100, 400), 200);
    // min(50*200/100, 100*200/400) = min(100, 50)
    EXPECT_EQ(w.univ2_add_liquidity(pool, addr(2), 50, 100), 50);
    EXPECT_EQ(w.erc20_total_supply(pool), 250);
    EXPECT_EQ(w.erc20_balance(pool, addr(1)), 200);
    EXPECT_EQ(w.erc20_balance(x, pool), 150);
    EXPECT_EQ(w.erc20_balance(y, pool), 500);
    expect_errc(Errc::InsufficientLiquidity, [&] { w.univ2_add_liquidity(pool, addr(2), 0, 1); });
    expect_errc(Errc::InsufficientBalance, [&] { w.univ2_add_liquidity(pool, addr(2), 5000, 1); });
    EXPECT_EQ(state_root(w), oracle::reference_state_root(w));
}

TEST(state, create2_deploy_address)
{
    WorldState w;
    Hash256 salt;
    salt.bytes[31] = 1;
    const auto a = w.deploy_create2(addr(0xfa), salt, ContractKind::wallet);
    EXPECT_EQ(a, create2_address(addr(0xfa), salt, keccak256(default_code(ContractKind::wallet))));
    expect_errc(Errc::SchemaViolation, [&] { w.deploy_create2(addr(0xfa), salt, ContractKind::wallet); });
}

TEST(state, layout_rejects_shared_slots)
{
    expect_errc(Errc::SchemaViolation, [] { TokenLayout::erc20(3, 3).validate(); });
    expect_errc(Errc::SchemaViolation, [] { TokenLayout::univ2pair(0, 1, 6, 1).validate(); });
}

TEST(state, unknown_contract)
{
    WorldState w;
    expect_errc(Errc::UnknownContract, [&] { w.erc20_mint(addr(9), addr(1), 1); });
}

TEST(proof, bundle_verifies_for_present_and_absent)
{
    WorldState w;
    const auto token = w.erc20_deploy(addr(0xd0));
    w.erc20_mint(token, addr(1), 77);
    w.credit_eth(addr(1), 5);
    const StateSnapshot snap{w};

    const Word present = mapping_slot(pad32(addr(1)), 0);
    const Word absent = mapping_slot(pad32(addr(2)), 0);
    const std::vector<Word> slots{present, absent};
    const auto bundle = snap.get_proof(token, slots);
    const auto v = verify_bundle(snap.root(), bundle);
    ASSERT_TRUE(v.account);
    EXPECT_EQ(v.account->nonce, 1);
    EXPECT_EQ(v.slots.at(present), u256{77});
    EXPECT_FALSE(v.slots.at(absent));

    const auto user = verify_bundle(snap.root(), snap.get_proof(addr(1), {}));
    EXPECT_EQ(user.account->balance, 5);

    const auto nobody = verify_bundle(snap.root(), snap.get_proof(addr(0x77), slots));
    EXPECT_FALSE(nobody.account);
    EXPECT_FALSE(nobody.slots.at(present));
}

TEST(proof, false_claims_are_rejected)
{
    WorldState w;
    w.credit_eth(addr(1), 5);
    w.set_storage(addr(1), Word{}, 9);
    const StateSnapshot snap{w};
    const std::vector<Word> slots{Word{}};
    auto b = snap.get_proof(addr(1), slots);

    auto inflated = b;
    inflated.account->balance = 6;
    expect_errc(Errc::InvalidProof, [&] { verify_bundle(snap.root(), inflated); });

    auto wrong_slot = b;
    wrong_slot.slot_proofs[0].value = 10;
    expect_errc(Errc::InvalidProof, [&] { verify_bundle(snap.root(), wrong_slot); });

    auto hidden = b;
    hidden.slot_proofs[0].value.reset();
    expect_errc(Errc::InvalidProof, [&] { verify_bundle(snap.root(), hidden); });

    auto other_address = b;
    other_address.address = addr(2);
    expect_errc(Errc::InvalidProof, [&] { verify_bundle(snap.root(), other_address); });

    expect_errc(Errc::InvalidProof, [&] { verify_bundle(mpt::empty_trie_root(), b); });
}

TEST(proof, random_round_trips)
{
    std::mt19937_64 rng{77};
    for (int round = 0; round < 10; ++round)
    {
        const auto w = random_world(rng, 50);
        const StateSnapshot snap{w};
        for (const auto& [address, acc] : w.accounts())
        {
            std::vector<Word> slots;
            for (const auto& [slot, _] : acc.storage)
                slots.push_back(slot);
            slots.push_back(random_word(rng));
            const auto v = verify_bundle(snap.root(), snap.get_proof(address, slots));
            ASSERT_TRUE(v.account);
            EXPECT_EQ(v.account->balance, acc.balance);
            for (const auto& [slot, value] : acc.storage)
                EXPECT_EQ(v.slots.at(slot), value);
        }
    }
}

TEST(json, bundle_round_trip)
{
    WorldState w;
    const auto token = w.erc20_deploy(addr(0xd0));
    w.erc20_mint(token, addr(1), 0x1234);
    const StateSnapshot snap{w};
    const std::vector<Word> slots{mapping_slot(pad32(addr(1)), 0), Word{}};
    const auto b = snap.get_proof(token, slots);
    const auto j = bundle_to_json(b);
    EXPECT_EQ(j["storageProof"][0]["value"], "0x1234");
    EXPECT_EQ(j["storageProof"][1]["value"], "0x0");
    EXPECT_EQ(j["nonce"], "0x1");
    EXPECT_EQ(bundle_from_json(j), b);

    const auto absent = snap.get_proof(addr(0x42), {});
    EXPECT_EQ(bundle_from_json(bundle_to_json(absent)), absent);
}

TEST(json, bundle_rejects_bad_shapes)
{
    const auto good = bundle_to_json(get_proof(WorldState{}, addr(1), {}));
    auto extra = good;
    extra["surprise"] = 1;
    expect_errc(Errc::SchemaViolation, [&] { bundle_from_json(extra); });
    auto short_addr = good;
    short_addr["address"] = "0x1234";
    expect_errc(Errc::SchemaViolation, [&] { bundle_from_json(short_addr); });
    auto missing = good;
    missing.erase("stateRoot");
    expect_errc(Errc::SchemaViolation, [&] { bundle_from_json(missing); });
}

TEST(json, world_round_trip)
{
    WorldState w;
    const auto x = w.erc20_deploy(addr(0xd0));
    const auto y = w.erc20_deploy(addr(0xd0), TokenLayout::erc20(3, 4));
    const auto nft = w.erc721_deploy(addr(0xd0));
    const auto pool = w.univ2_deploy(addr(0xd0), x, y);
    w.erc20_mint(x, addr(1), 100);
    w.erc20_mint(y, addr(1), 100);
    w.erc721_mint(nft, 3, addr(2));
    w.univ2_add_liquidity(pool, addr(1), 10, 40);
    w.credit_eth(addr(3), 99);

    const auto restored = world_from_json(world_to_json(w));
    EXPECT_EQ(state_root(restored), state_root(w));
    EXPECT_EQ(restored.accounts(), w.accounts());
    EXPECT_EQ(restored.contracts(), w.contracts());

    auto tampered = world_to_json(w);
    tampered["accounts"][addr(3).hex()]["balance"] = "100";
    expect_errc(Errc::SchemaViolation, [&] { world_from_json(tampered); });
}

TEST(json, parse_error_reports_position)
{
    try
    {
        jsonio::parse_text("{\n  \"a\": ,\n}", "doc.json");
        FAIL() << "expected ParseError";
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), Errc::ParseError);
        EXPECT_NE(std::string{e.what()}.find("doc.json:2:"), std::string::npos) << e.what();
    }
}
