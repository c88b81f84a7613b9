// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#include "oracles/reference_keccak.hpp"
#include "test_util.hpp"

#include <escape/resolvers.hpp>
#include <escape/state.hpp>

#include <set>

using namespace escape;
using namespace escape::resolvers;
using escape::state::StateSnapshot;
using escape::test::addr;
using escape::test::expect_errc;
using escape::test::random_address;

namespace
{
struct MapReader
{
    std::map<SlotRef, u256> slots;

    std::optional<u256> read(const Address& a, const Word& w) const
    {
        const auto it = slots.find({a, w});
        if (it == slots.end())
            return std::nullopt;
        return it->second;
    }
};

Hash256 oracle_hash(const Bytes& preimage)
{
    const auto h = oracle::reference_keccak256(preimage);
    return Hash256::from_view(h);
}

/// Plans the slots a resolver needs by running it over the ledger, then
/// builds proofs for exactly those slots.
template <class F>
std::vector<state::ProofBundle> plan_bundles(const StateSnapshot& snap, F&& run)
{
    const WorldReader world{snap.world()};
    RecordingReader<WorldReader> rec{world};
    try
    {
        run(rec);
    }
    catch (const Error&)
    {
    }
    std::map<Address, std::vector<Word>> by_contract;
    for (const auto& [c, s] : rec.consulted())
        by_contract[c].push_back(s);
    std::vector<state::ProofBundle> out;
    for (const auto& [c, slots] : by_contract)
        out.push_back(snap.get_proof(c, slots));
    return out;
}

struct Pool
{
    state::WorldState w;
    Address x, y, pool;
};

Pool make_pool()
{
    Pool p;
    p.x = p.w.erc20_deploy(addr(0xd0));
    p.y = p.w.erc20_deploy(addr(0xd0));
    p.pool = p.w.univ2_deploy(addr(0xd0), p.x, p.y);
    return p;
}
}  // namespace

TEST(slots, erc20_balance_slot_vector)
{
    Bytes pre(64, 0);
    pre[31] = 0x01;
    EXPECT_EQ(erc20_balance_slot(addr(1), 0), oracle_hash(pre));
}

TEST(slots, erc721_owner_slot_vector)
{
    EXPECT_EQ(erc721_owner_slot(0, 0), oracle_hash(Bytes(64, 0)));
    Bytes pre(64, 0);
    pre[31] = 7;
    pre[63] = 2;
    EXPECT_EQ(erc721_owner_slot(7, 2), oracle_hash(pre));
}

TEST(slots, distinct_inputs_give_distinct_slots)
{
    std::mt19937_64 rng{5};
    std::set<Word> seen;
    for (int i = 0; i < 1000; ++i)
        seen.insert(erc20_balance_slot(random_address(rng), 0));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_NE(erc20_balance_slot(addr(1), 0), erc20_balance_slot(addr(1), 1));
    std::set<Word> ids;
    for (unsigned i = 0; i < 1000; ++i)
        ids.insert(erc721_owner_slot(i, 0));
    EXPECT_EQ(ids.size(), 1000u);
}

TEST(slots, agree_with_ledger_writes)
{
    state::WorldState w;
    const auto t = w.erc20_deploy(addr(0xd0), TokenLayout::erc20(4, 5));
    const auto n = w.erc721_deploy(addr(0xd0), TokenLayout::erc721(2));
    w.erc20_mint(t, addr(1), 10);
    w.erc721_mint(n, 7, addr(1));
    EXPECT_EQ(w.storage_at(t, erc20_balance_slot(addr(1), 4)), 10);
    EXPECT_EQ(w.erc721_owner(n, 7), addr(1));
    EXPECT_EQ(w.storage_at(n, erc721_owner_slot(7, 2)), from_word(pad32(addr(1))));
}

TEST(resolve_erc20, proven_balance_is_paid_in_full)
{
    state::WorldState w;
    const auto t = w.erc20_deploy(addr(0xd0));
    w.erc20_mint(t, addr(1), 500);
    const StateSnapshot snap{w};
    const std::vector<Word> slots{erc20_balance_slot(addr(1), 0), erc20_balance_slot(addr(2), 0)};
    const std::vector bundles{snap.get_proof(t, slots)};
    const SlotReadContext ctx{snap.root(), bundles};

    const auto out = resolve_erc20(ctx, t, addr(1), TokenLayout::erc20());
    ASSERT_EQ(out.payouts.size(), 1u);
    EXPECT_EQ(out.payouts[0], (AssetPayout{t, PayoutKind::amount, 500}));
    EXPECT_EQ(out.entitled, addr(1));
    EXPECT_EQ(out.slots_consulted, (std::vector<SlotRef>{{t, slots[0]}}));

    expect_errc(Errc::NothingToEscape, [&] { resolve_erc20(ctx, t, addr(2), TokenLayout::erc20()); });
    expect_errc(Errc::MissingSlotProof, [&] { resolve_erc20(ctx, t, addr(3), TokenLayout::erc20()); });
}

TEST(resolve_erc20, context_rejects_foreign_root_and_bad_proof)
{
    state::WorldState w;
    const auto t = w.erc20_deploy(addr(0xd0));
    w.erc20_mint(t, addr(1), 500);
    const StateSnapshot snap{w};
    const std::vector<Word> slots{erc20_balance_slot(addr(1), 0)};
    std::vector bundles{snap.get_proof(t, slots)};
    expect_errc(Errc::StaleRoot, [&] { SlotReadContext(mpt::empty_trie_root(), bundles); });
    bundles[0].slot_proofs[0].value = 501;
    expect_errc(Errc::InvalidProof, [&] { SlotReadContext(snap.root(), bundles); });
}

TEST(resolve_erc721, owner_rules)
{
    state::WorldState w;
    const auto n = w.erc721_deploy(addr(0xd0));
    w.erc721_mint(n, 7, addr(1));
    const StateSnapshot snap{w};
    const std::vector<Word> slots{erc721_owner_slot(7, 0), erc721_owner_slot(8, 0)};
    const std::vector bundles{snap.get_proof(n, slots)};
    const SlotReadContext ctx{snap.root(), bundles};

    const auto out = resolve_erc721(ctx, n, 7, addr(1), TokenLayout::erc721());
    EXPECT_EQ(out.payouts, (std::vector<AssetPayout>{{n, PayoutKind::token_id, 7}}));
    expect_errc(Errc::NotOwner, [&] { resolve_erc721(ctx, n, 7, addr(2), TokenLayout::erc721()); });
    expect_errc(Errc::NothingToEscape, [&] { resolve_erc721(ctx, n, 8, addr(1), TokenLayout::erc721()); });
    expect_errc(Errc::MissingSlotProof, [&] { resolve_erc721(ctx, n, 9, addr(1), TokenLayout::erc721()); });
}

TEST(resolve_univ2, pro_rata_examples)
{
    const auto layout = TokenLayout::univ2pair();
    const auto erc20 = [](const Address&) { return TokenLayout::erc20(); };
    const auto pool = addr(0xa0), x = addr(0xa1), y = addr(0xa2), lp = addr(1);
    const auto make = [&](u256 lp_bal, u256 total, u256 bx, u256 by) {
        MapReader r;
        r.slots[{pool, to_word(6)}] = from_word(pad32(x));
        r.slots[{pool, to_word(7)}] = from_word(pad32(y));
        r.slots[{x, erc20_balance_slot(pool, 0)}] = bx;
        r.slots[{y, erc20_balance_slot(pool, 0)}] = by;
        r.slots[{pool, to_word(0)}] = total;
        r.slots[{pool, erc20_balance_slot(lp, 1)}] = lp_bal;
        return r;
    };

    auto out = resolve_univ2(make(100, 1000, 5000, 300), pool, lp, layout, erc20);
    EXPECT_EQ(out.payouts,
        (std::vector<AssetPayout>{{x, PayoutKind::amount, 500}, {y, PayoutKind::amount, 30}}));
    EXPECT_EQ(out.slots_consulted.size(), 6u);

    out = resolve_univ2(make(1000, 1000, 5000, 300), pool, lp, layout, erc20);
    EXPECT_EQ(out.payouts,
        (std::vector<AssetPayout>{{x, PayoutKind::amount, 5000}, {y, PayoutKind::amount, 300}}));

    out = resolve_univ2(make(1, 3, 10, 0), pool, lp, layout, erc20);
    EXPECT_EQ(out.payouts, (std::vector<AssetPayout>{{x, PayoutKind::amount, 3}}));

    expect_errc(Errc::NothingToEscape, [&] { resolve_univ2(make(0, 1000, 5, 5), pool, lp, layout, erc20); });
    expect_errc(Errc::ZeroSupply, [&] { resolve_univ2(make(10, 0, 5, 5), pool, lp, layout, erc20); });
    expect_errc(Errc::NothingToEscape, [&] { resolve_univ2(make(1, 1000, 5, 5), pool, lp, layout, erc20); });
}

TEST(resolve_univ2, withholding_any_required_proof_fails)
{
    auto p = make_pool();
    p.w.erc20_mint(p.x, addr(1), 1000);
    p.w.erc20_mint(p.y, addr(1), 1000);
    p.w.univ2_add_liquidity(p.pool, addr(1), 300, 700);
    const StateSnapshot snap{p.w};
    ResolverLibrary lib;
    const ResolverSpec spec{ResolverKind::univ2, std::nullopt};
    auto run = [&](const auto& reader) { return lib.run(reader, spec, p.pool, addr(1), {}); };

    const auto bundles = plan_bundles(snap, run);
    const SlotReadContext full{snap.root(), bundles};
    const auto outcome = run(full);
    EXPECT_EQ(run(full), outcome);
    ASSERT_EQ(outcome.slots_consulted.size(), 6u);
    for (const auto& ref : outcome.slots_consulted)
        EXPECT_TRUE(full.verified_reads().contains(ref));

    for (const auto& withheld : outcome.slots_consulted)
    {
        auto partial = bundles;
        for (auto& b : partial)
            std::erase_if(b.slot_proofs, [&](const auto& sp) { return SlotRef{b.address, sp.key} == withheld; });
        const SlotReadContext ctx{snap.root(), partial};
        expect_errc(Errc::MissingSlotProof, [&] { run(ctx); });
    }
}

TEST(resolve_univ2, dust_bound_when_all_providers_exit)
{
    std::mt19937_64 rng{31};
    for (int round = 0; round < 30; ++round)
    {
        auto p = make_pool();
        const auto providers = 1 + rng() % 20;
        for (std::size_t i = 0; i < providers; ++i)
        {
            const auto who = random_address(rng);
            const u256 ax = 1 + rng() % 1000000, ay = 1 + rng() % 1000000;
            p.w.erc20_mint(p.x, who, ax);
            p.w.erc20_mint(p.y, who, ay);
            try
            {
                p.w.univ2_add_liquidity(p.pool, who, ax, ay);
            }
            catch (const Error& e)
            {
                ASSERT_EQ(e.code(), Errc::InsufficientLiquidity);
            }
        }
        const WorldReader reader{p.w};
        const auto bal_x = p.w.erc20_balance(p.x, p.pool), bal_y = p.w.erc20_balance(p.y, p.pool);
        u256 sum_x = 0, sum_y = 0, holders = 0;
        for (const auto& [key, slot] : p.w.mapping_writes())
        {
            const auto& [contract, kind, word] = key;
            if (contract != p.pool || p.w.storage_at(p.pool, slot) == 0)
                continue;
            ++holders;
            const auto out = resolve_univ2(reader, p.pool, low_address(word), TokenLayout::univ2pair(),
                [](const Address&) { return TokenLayout::erc20(); });
            for (const auto& pay : out.payouts)
                (pay.asset == p.x ? sum_x : sum_y) += pay.value;
        }
        EXPECT_LE(sum_x, bal_x);
        EXPECT_LE(sum_y, bal_y);
        EXPECT_LT(bal_x - sum_x, holders);
        EXPECT_LT(bal_y - sum_y, holders);
    }
}

TEST(library, layout_selection)
{
    ResolverLibrary lib;
    lib.declare_layout(addr(1), TokenLayout::erc20(3, 4));
    const auto& d20 = *lib.find(std::string{default_erc20_resolver});
    EXPECT_EQ(lib.layout_for(d20, addr(1)), TokenLayout::erc20(3, 4));
    EXPECT_EQ(lib.layout_for(d20, addr(2)), TokenLayout::erc20());
    lib.add("fixed", {ResolverKind::erc20, TokenLayout::erc20(9, 8)});
    EXPECT_EQ(lib.layout_for(*lib.find("fixed"), addr(1)), TokenLayout::erc20(9, 8));
    expect_errc(Errc::SchemaViolation, [&] { lib.add("fixed", {}); });
    expect_errc(Errc::SchemaViolation, [&] { lib.run(MapReader{}, {ResolverKind::erc721, {}}, addr(1), addr(2), {}); });
}

TEST(dispatch, registered_default_and_missing)
{
    const Address messenger = addr(0xee);
    l1::ResolverRegistry reg{messenger};
    ResolverLibrary lib;
    lib.add("custom", {ResolverKind::erc20, TokenLayout::erc20(1, 2)});
    lib.declare_layout(addr(1), TokenLayout::erc20());
    lib.declare_layout(addr(3), TokenLayout::erc721());
    l1::L2Oracle oracle;
    oracle.propose_root(Hash256{}, 1000, 1, true);
    const l1::Seconds t = 100;

    reg.set_resolver({messenger, addr(2)}, "custom", 10);
    EXPECT_EQ(dispatch(reg, lib, oracle, t, addr(2), 1100).resolver_id, "custom");
    expect_errc(Errc::ResolverNotYetActive, [&] { dispatch(reg, lib, oracle, t, addr(2), 1099); });
    EXPECT_EQ(dispatch(reg, lib, oracle, t, addr(1), 1100).resolver_id, default_erc20_resolver);
    EXPECT_EQ(dispatch(reg, lib, oracle, t, addr(3), 1100).resolver_id, default_erc721_resolver);
    expect_errc(Errc::NoResolver, [&] { dispatch(reg, lib, oracle, t, addr(4), 1100); });

    reg.set_resolver({messenger, addr(5)}, "never-defined", 10);
    expect_errc(Errc::NoResolver, [&] { dispatch(reg, lib, oracle, t, addr(5), 1100); });

    reg.register_post_failure_create(oracle, t, addr(0xd0), 0, create_address(addr(0xd0), 0), "custom", 1100);
    const auto post = create_address(addr(0xd0), 0);
    expect_errc(Errc::ResolverNotYetActive, [&] { dispatch(reg, lib, oracle, t, post, 1199); });
    EXPECT_EQ(dispatch(reg, lib, oracle, t, post, 1200).registration, l1::RegistrationKind::post_failure);
}
