// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/sim/simulation.hpp>

#include <string>
#include <vector>

namespace escape::sim
{
struct Report
{
    json doc;
    bool passed = false;
    std::vector<std::string> failures;
    state::WorldState final_world;

    /// Canonical text: sorted keys, two-space indent, trailing newline.
    std::string text() const { return doc.dump(2) + "\n"; }
};

namespace detail
{
inline bool changes_l2(ActionKind k)
{
    switch (k)
    {
    case ActionKind::EthTransfer:
    case ActionKind::Erc20Mint:
    case ActionKind::Erc20Transfer:
    case ActionKind::Erc721Mint:
    case ActionKind::Erc721Transfer:
    case ActionKind::AddLiquidity:
    case ActionKind::ProposeRoot:
    case ActionKind::RegisterResolverLive:
    case ActionKind::RegisterDelegate:
        return true;
    default:
        return false;
    }
}

inline json payouts_as_expected(const Simulation& sim, const std::vector<ExpectedPayout>& expected)
{
    json out = json::array();
    for (const auto& e : expected)
    {
        const auto asset = e.asset == "ETH" ? l1::eth_asset : sim.resolve(e.asset);
        json p = {{"l2_asset", asset.hex()}};
        if (e.amount)
            p["amount"] = to_decimal(*e.amount);
        else
            p["tokenId"] = to_decimal(*e.token_id);
        out.push_back(p);
    }
    return out;
}

inline json payouts_as_received(const json& receipt)
{
    json out = json::array();
    for (const auto& p : receipt["payouts"])
    {
        json q = {{"l2_asset", p["l2_asset"]}};
        for (const auto* k : {"amount", "tokenId"})
            if (p.contains(k))
                q[k] = p[k];
        out.push_back(q);
    }
    return out;
}

inline json conservation(const l1::L1Bridge& b, bool& balanced)
{
    balanced = b.eth_paid() + b.eth_escrow() == b.eth_deposited();
    json tokens = json::object();
    for (const auto& [token, deposited] : b.tokens_deposited())
    {
        const bool ok = b.token_paid(token) + b.token_escrow(token) == deposited;
        balanced = balanced && ok;
        tokens[token.hex()] = {{"deposited", to_decimal(deposited)}, {"paid", to_decimal(b.token_paid(token))},
            {"escrow", to_decimal(b.token_escrow(token))}, {"balanced", ok}};
    }
    return {{"eth",
                {{"deposited", to_decimal(b.eth_deposited())}, {"paid", to_decimal(b.eth_paid())},
                    {"escrow", to_decimal(b.eth_escrow())},
                    {"balanced", b.eth_paid() + b.eth_escrow() == b.eth_deposited()}}},
        {"tokens", tokens}, {"balanced", balanced}};
}

inline json evaluate(const Simulation& sim, const Assertion& a, bool conserved)
{
    const auto& b = sim.bridge();
    const auto& body = a.body;
    const auto path = jsonio::index_path("assertions", a.index);
    json actual, expected;
    bool passed = false;

    const auto expect_uint = [&](const u256& value) {
        const auto want = jsonio::as_uint(body["equals"], jsonio::child_path(path, "equals"));
        expected = to_decimal(want);
        actual = to_decimal(value);
        passed = value == want;
    };

    if (a.kind == "eth_escrow")
        expect_uint(b.eth_escrow());
    else if (a.kind == "token_escrow")
        expect_uint(b.token_escrow(sim.l1_asset(sim.resolve(body.at("token").get<std::string>()))));
    else if (a.kind == "l1_balance")
    {
        const auto asset_ref = body.at("asset").get<std::string>();
        const auto asset = asset_ref == "ETH" ? l1::eth_asset : sim.l1_asset(sim.resolve(asset_ref));
        expect_uint(b.l1_balance(sim.resolve(body.at("holder").get<std::string>()), asset));
    }
    else if (a.kind == "l1_nft_owner")
    {
        const auto holder = sim.resolve(body.at("holder").get<std::string>());
        const auto token = sim.l1_asset(sim.resolve(body.at("token").get<std::string>()));
        const auto id = jsonio::as_uint(body.at("token_id"), jsonio::child_path(path, "token_id"));
        const auto it = b.l1_nfts().find(holder);
        const bool holds = it != b.l1_nfts().end() && it->second.contains({token, id});
        const bool want = body.contains("equals") ? jsonio::as_bool(body["equals"], path + ".equals") : true;
        expected = want;
        actual = holds;
        passed = holds == want;
    }
    else if (a.kind == "nullifier_count")
        expect_uint(b.nullifiers().size());
    else if (a.kind == "l2_balance")
        expect_uint(sim.world().balance(sim.resolve(body.at("holder").get<std::string>())));
    else if (a.kind == "escape_enabled")
    {
        const bool want = jsonio::as_bool(body["equals"], jsonio::child_path(path, "equals"));
        const bool enabled = !sim.oracle().empty() && l1::escape_enabled(sim.oracle(), b.t(), sim.now());
        expected = want;
        actual = enabled;
        passed = enabled == want;
    }
    else if (a.kind == "conservation")
    {
        expected = true;
        actual = conserved;
        passed = conserved;
    }

    json out = {{"index", a.index}, {"kind", a.kind}, {"expected", expected}, {"actual", actual}, {"passed", passed}};
    if (body.contains("note"))
        out["note"] = body["note"];
    return out;
}
}  // namespace detail

/// Executes the timeline and evaluates every expectation. Action-level errors
/// are recorded, never thrown. Genesis problems raise SchemaViolation.
inline Report run_scenario(const Scenario& s)
{
    std::unique_ptr<Simulation> owned;
    try
    {
        owned = std::make_unique<Simulation>(s);
    }
    catch (const Error& e)
    {
        fail(Errc::SchemaViolation, std::string{"genesis: "} + e.what());
    }
    auto& sim = *owned;
    Report r;
    json actions = json::array();
    json silence_violations = json::array();
    bool failed_seen = false;

    for (const auto& a : s.timeline)
    {
        json entry = {{"index", a.index}, {"action", std::string{to_string(a.kind)}}, {"at", std::to_string(a.time)},
            {"expected", a.expect}};
        if (!a.note.empty())
            entry["note"] = a.note;
        std::string outcome = "ok";
        try
        {
            entry["details"] = sim.apply(a);
        }
        catch (const Simulation::Rejected& rej)
        {
            outcome = "rejected";
            entry["details"] = {{"root", rej.root.hex()}};
        }
        catch (const Error& e)
        {
            outcome = std::string{to_string(e.code())};
            entry["error"] = e.what();
        }
        entry["outcome"] = outcome;

        bool matched = outcome == a.expect;
        if (matched && outcome == "ok" && a.expect_payouts)
        {
            const auto want = detail::payouts_as_expected(sim, *a.expect_payouts);
            const auto got = detail::payouts_as_received(entry["details"]["receipt"]);
            if (want != got)
            {
                matched = false;
                r.failures.push_back("action " + std::to_string(a.index) + " (" + std::string{to_string(a.kind)} +
                                     "): payouts " + got.dump() + " differ from expected " + want.dump());
            }
        }
        else if (!matched)
            r.failures.push_back("action " + std::to_string(a.index) + " (" + std::string{to_string(a.kind)} +
                                 "): expected " + a.expect + ", got " + outcome);
        entry["matched"] = matched;

        if (failed_seen && outcome == "ok" && detail::changes_l2(a.kind))
            silence_violations.push_back(a.index);
        if (a.kind == ActionKind::OperatorFailure)
            failed_seen = true;
        actions.push_back(std::move(entry));
    }

    bool conserved = false;
    const auto conservation = detail::conservation(sim.bridge(), conserved);
    json assertions = json::array();
    for (const auto& a : s.assertions)
    {
        auto res = detail::evaluate(sim, a, conserved);
        if (!res["passed"].get<bool>())
            r.failures.push_back("assertion " + std::to_string(a.index) + " (" + a.kind + "): expected " +
                                 res["expected"].dump() + ", got " + res["actual"].dump());
        assertions.push_back(std::move(res));
    }
    if (!silence_violations.empty())
        r.failures.push_back("post-failure silence broken by actions " + silence_violations.dump());

    json nullifiers = json::array();
    for (const auto& n : sim.bridge().nullifiers())
        nullifiers.push_back(n.hex());
    json latest = nullptr;
    if (!sim.oracle().empty())
        latest = {{"root", sim.oracle().latest().root.hex()},
            {"timestamp", std::to_string(sim.oracle().latest().timestamp)},
            {"l2_block_number", std::to_string(sim.oracle().latest().l2_block_number)}};

    r.passed = r.failures.empty();
    r.doc = {
        {"scenario", s.name},
        {"parameters", {{"T", std::to_string(s.t)}}},
        {"actions", actions},
        {"bridge", l1::bridge_to_json(sim.bridge())},
        {"registries", l1::registry_to_json(sim.registry(), sim.delegates())},
        {"nullifiers", nullifiers},
        {"conservation", conservation},
        {"post_failure_silence", {{"held", silence_violations.empty()}, {"violations", silence_violations}}},
        {"l2",
            {{"operator_failed", sim.failed()}, {"state_root", state::state_root(sim.world()).hex()},
                {"latest_valid_root", latest}, {"clock", std::to_string(sim.now())}}},
        {"assertions", assertions},
        {"failures", r.failures},
        {"passed", r.passed},
    };
    r.final_world = sim.world();
    return r;
}
}  // namespace escape::sim
