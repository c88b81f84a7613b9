// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/l1.hpp>
#include <escape/sim/scenario.hpp>
#include <escape/state.hpp>

#include <memory>

namespace escape::sim
{
using state::ProofBundle;
using state::StateSnapshot;

/// Address the simulated cross-domain messenger lives at on L1.
inline const Address messenger_address = Address::from_view(from_hex("0x4200000000000000000000000000000000000007"));

/// Every moving part of one scenario: the L2 ledger, the four L1 machines and
/// the logical clock. Actions are applied one at a time; each either succeeds
/// and returns its details or throws the error it ran into.
class Simulation
{
public:
    /// Thrown for a root proposal whose validity proof fails.
    struct Rejected
    {
        Hash256 root;
    };

    explicit Simulation(const Scenario& s)
      : scenario_{&s},
        messenger_{messenger_address},
        registry_{messenger_address},
        delegates_{messenger_address},
        bridge_{s.t}
    {
        for (const auto& [name, a] : s.users)
            names_.emplace(name, a);
        for (const auto& r : s.resolvers)
            library_.add(r.id, r.spec);
        for (const auto& c : s.contracts)
            deploy(c);
    }

    Address resolve(std::string_view ref) const
    {
        if (ref.starts_with("0x"))
            return Address::from_view(from_hex(ref));
        const auto it = names_.find(ref);
        if (it == names_.end())
            fail(Errc::SchemaViolation, "unknown entity '" + std::string{ref} + "'");
        return it->second;
    }

    /// Runs one action at its scheduled time.
    json apply(const Action& a)
    {
        now_ = a.time;
        switch (a.kind)
        {
        case ActionKind::DepositEth:
            return {{"l2_credit_applied", bridge_.deposit_eth(live_world(), ref(a, "to"), amount(a))}};
        case ActionKind::DepositErc20:
            return {{"l2_credit_applied",
                bridge_.deposit_erc20(live_world(), l1_of(ref(a, "token")), ref(a, "to"), amount(a))}};
        case ActionKind::DepositErc721:
            return {{"l2_credit_applied",
                bridge_.deposit_erc721(live_world(), l1_of(ref(a, "token")), ref(a, "to"), num(a, "token_id"))}};
        case ActionKind::EthTransfer:
            l2().transfer_eth(ref(a, "from"), ref(a, "to"), amount(a));
            return json::object();
        case ActionKind::Erc20Mint:
            l2().erc20_mint(ref(a, "token"), ref(a, "to"), amount(a));
            return json::object();
        case ActionKind::Erc20Transfer:
            l2().erc20_transfer(ref(a, "token"), ref(a, "from"), ref(a, "to"), amount(a));
            return json::object();
        case ActionKind::Erc721Mint:
            l2().erc721_mint(ref(a, "token"), num(a, "token_id"), ref(a, "to"));
            return json::object();
        case ActionKind::Erc721Transfer:
            l2().erc721_transfer(ref(a, "token"), num(a, "token_id"), ref(a, "from"), ref(a, "to"));
            return json::object();
        case ActionKind::AddLiquidity:
            return {{"lp_minted", to_decimal(l2().univ2_add_liquidity(ref(a, "pool"), ref(a, "provider"),
                                      num(a, "amount_x"), num(a, "amount_y")))}};
        case ActionKind::ProposeRoot:
            return propose_root(a);
        case ActionKind::RegisterResolverLive:
            return register_live(a);
        case ActionKind::RegisterResolverPostFailure:
            return register_post_failure(a);
        case ActionKind::RegisterDelegate:
            return register_delegate(a);
        case ActionKind::OperatorFailure:
            failed_ = true;
            messenger_.halt();
            return json::object();
        case ActionKind::AttemptEscape:
            return {{"receipt", l1::receipt_to_json(attempt_escape(a))}};
        case ActionKind::AdvanceClock:
            return {{"clock", std::to_string(now_)}};
        }
        return json::object();
    }

    /// Proofs an honest off-chain client would assemble for an asset escape:
    /// the resolver is dry-run over the snapshot ledger and every slot it
    /// touches is proven. Dispatch failures yield no bundles; the bridge
    /// reports them when the escape is attempted.
    std::vector<ProofBundle> plan_asset_bundles(const StateSnapshot& snap, const Address& contract,
        const Address& entitled, const resolvers::ResolverArgs& args,
        std::optional<std::size_t> withhold = {}) const
    {
        std::vector<resolvers::SlotRef> consulted;
        try
        {
            const auto chosen = resolvers::dispatch(registry_, library_, oracle_, bridge_.t(), contract, now_);
            const resolvers::WorldReader reader{snap.world()};
            resolvers::RecordingReader<resolvers::WorldReader> rec{reader};
            try
            {
                library_.run(rec, chosen.spec, contract, entitled, args);
            }
            catch (const Error&)
            {
            }
            consulted = rec.consulted();
        }
        catch (const Error&)
        {
            return {};
        }
        if (withhold && *withhold < consulted.size())
            consulted.erase(consulted.begin() + static_cast<std::ptrdiff_t>(*withhold));

        std::vector<Address> order;
        std::map<Address, std::vector<Word>> by_contract;
        for (const auto& [c, slot] : consulted)
        {
            if (!by_contract.contains(c))
                order.push_back(c);
            by_contract[c].push_back(slot);
        }
        std::vector<ProofBundle> out;
        for (const auto& c : order)
            out.push_back(snap.get_proof(c, by_contract[c]));
        return out;
    }

    const Scenario& scenario() const noexcept { return *scenario_; }
    const state::WorldState& world() const noexcept { return world_; }
    const l1::L1Bridge& bridge() const noexcept { return bridge_; }
    const l1::L2Oracle& oracle() const noexcept { return oracle_; }
    const l1::ResolverRegistry& registry() const noexcept { return registry_; }
    const l1::DelegateRegistry& delegates() const noexcept { return delegates_; }
    const resolvers::ResolverLibrary& library() const noexcept { return library_; }
    Seconds now() const noexcept { return now_; }
    bool failed() const noexcept { return failed_; }

    /// Snapshot committed under `root`, if the harness built one.
    std::shared_ptr<const StateSnapshot> snapshot(const Hash256& root) const
    {
        const auto it = snapshots_.find(root);
        return it == snapshots_.end() ? nullptr : it->second;
    }

    /// L1 address of a bridged L2 token, or the address itself otherwise.
    Address l1_asset(const Address& a) const { return bridge_.l1_token_of(a).value_or(a); }

private:
    void deploy(const ContractDecl& c)
    {
        using state::ContractKind;
        const auto deployer = resolve(c.deployer);
        auto layout = c.layout;
        if (!layout)
        {
            if (c.kind == ContractKind::erc20)
                layout = state::TokenLayout::erc20();
            else if (c.kind == ContractKind::erc721)
                layout = state::TokenLayout::erc721();
            else if (c.kind == ContractKind::univ2pair)
                layout = state::TokenLayout::univ2pair();
        }

        Address address;
        if (c.kind == ContractKind::univ2pair)
        {
            const auto t0 = resolve(c.token0), t1 = resolve(c.token1);
            if (c.create2_salt)
            {
                world_.erc20_total_supply(t0);  // both sides must be fungible tokens
                world_.erc20_total_supply(t1);
                address = world_.deploy_create2(deployer, *c.create2_salt, c.kind, layout);
                world_.set_storage(address, to_word(layout->token0_slot), from_word(pad32(t0)));
                world_.set_storage(address, to_word(layout->token1_slot), from_word(pad32(t1)));
            }
            else
                address = world_.univ2_deploy(deployer, t0, t1, *layout);
        }
        else if (c.create2_salt)
            address = world_.deploy_create2(deployer, *c.create2_salt, c.kind, layout);
        else
            address = world_.deploy(deployer, c.kind, layout);

        names_.emplace(c.name, address);
        if (layout)
            library_.declare_layout(address, *layout);
        if (c.l1_token)
            bridge_.map_token(address, *c.l1_token,
                c.kind == ContractKind::erc721 ? l1::TokenStandard::non_fungible : l1::TokenStandard::fungible);
    }

    Address ref(const Action& a, std::string_view field) const { return resolve(*a.ref(field)); }
    static u256 num(const Action& a, std::string_view field) { return *a.uint(field); }
    static u256 amount(const Action& a) { return num(a, "amount"); }

    Address l1_of(const Address& l2_token) const
    {
        const auto l1 = bridge_.l1_token_of(l2_token);
        if (!l1)
            fail(Errc::UnknownContract, l2_token.hex() + " is not a bridged token");
        return *l1;
    }

    state::WorldState* live_world() { return failed_ ? nullptr : &world_; }

    state::WorldState& l2()
    {
        if (failed_)
            fail(Errc::L2AlreadyFailed, "the L2 operator has failed; no L2 transactions are processed");
        return world_;
    }

    json propose_root(const Action& a)
    {
        l2();
        Hash256 root;
        if (a.root)
            root = Hash256::from_hex(*a.root);
        else
        {
            auto snap = std::make_shared<const StateSnapshot>(world_);
            root = snap->root();
            snapshots_.emplace(root, std::move(snap));
        }
        const auto outcome = oracle_.propose_root(root, now_, oracle_.records().size() + 1, a.valid.value_or(true));
        if (outcome == l1::RootOutcome::rejected)
            throw Rejected{root};
        return {{"root", root.hex()}};
    }

    json register_live(const Action& a)
    {
        const auto contract = ref(a, "contract");
        if (a.via == "direct")
            registry_.set_resolver({ref(a, "caller"), contract}, a.resolver, now_);
        else
            messenger_.relay(contract, [&](const l1::MessengerCall& c) { registry_.set_resolver(c, a.resolver, now_); });
        return json::object();
    }

    json register_post_failure(const Action& a)
    {
        const auto caller = ref(a, "caller");
        const auto contract = ref(a, "contract");
        if (const auto nonce = a.uint("nonce"))
            registry_.register_post_failure_create(oracle_, bridge_.t(), caller, *nonce, contract, a.resolver, now_);
        else
        {
            Hash256 code_hash;
            if (a.bytecode_hash)
                code_hash = *a.bytecode_hash;
            else if (const auto* info = world_.contract(contract))
                code_hash = info->code_hash;
            else
                fail(Errc::UnknownContract, contract.hex() + " has no recorded code; give bytecode_hash");
            registry_.register_post_failure_create2(
                oracle_, bridge_.t(), caller, *a.salt, code_hash, contract, a.resolver, now_);
        }
        return json::object();
    }

    json register_delegate(const Action& a)
    {
        const auto wallet = ref(a, "wallet");
        const auto delegate = ref(a, "delegate");
        if (a.via == "direct")
            delegates_.set_delegate({ref(a, "caller"), wallet}, delegate, now_);
        else
            messenger_.relay(wallet, [&](const l1::MessengerCall& c) { delegates_.set_delegate(c, delegate, now_); });
        return json::object();
    }

    /// Root the claimer builds proofs against, and the snapshot behind it.
    std::pair<Hash256, std::shared_ptr<const StateSnapshot>> proof_target(const ProofOptions& o) const
    {
        Hash256 root;
        if (o.root == "latest")
            root = oracle_.latest().root;
        else if (o.root == "previous")
        {
            const auto& records = oracle_.records();
            if (records.size() < 2)
                fail(Errc::NoValidRoot, "there is no valid root before the latest one");
            root = records[records.size() - 2].root;
        }
        else
            root = Hash256::from_hex(o.root);
        auto snap = snapshot(root);
        if (!snap)
            snap = std::make_shared<const StateSnapshot>(world_);
        return {root, snap};
    }

    static void corrupt(std::vector<ProofBundle>& bundles)
    {
        if (bundles.empty())
            return;
        auto& nodes = bundles.front().account_proof.nodes;
        if (nodes.empty() || nodes.back().empty())
            nodes.push_back(Bytes{0x80});
        else
            nodes.back().back() ^= 0x01;
    }

    l1::EscapeReceipt attempt_escape(const Action& a)
    {
        const auto claimer = ref(a, "claimer");
        const std::optional<Address> on_behalf_of =
            a.ref("on_behalf_of") ? std::optional{ref(a, "on_behalf_of")} : std::nullopt;
        const auto entitled = on_behalf_of.value_or(claimer);
        const auto [root, snap] = proof_target(a.proof);

        if (a.escape == "eth")
        {
            std::vector<ProofBundle> bundles{snap->get_proof(entitled, {})};
            bundles[0].state_root = root;
            if (a.proof.corrupt)
                corrupt(bundles);
            return bridge_.escape_eth(oracle_, delegates_, now_, claimer, bundles[0]);
        }

        const auto target = ref(a, "target");
        const resolvers::ResolverArgs args{a.uint("token_id")};
        auto bundles = plan_asset_bundles(*snap, target, entitled, args, a.proof.withhold_slot);
        for (auto& b : bundles)
            b.state_root = root;
        if (a.proof.corrupt)
            corrupt(bundles);
        return bridge_.escape_asset(
            oracle_, registry_, delegates_, library_, now_, claimer, target, bundles, args, on_behalf_of);
    }

    const Scenario* scenario_;
    std::map<std::string, Address, std::less<>> names_;
    state::WorldState world_;
    l1::CrossDomainMessenger messenger_;
    l1::L2Oracle oracle_;
    l1::ResolverRegistry registry_;
    l1::DelegateRegistry delegates_;
    resolvers::ResolverLibrary library_;
    l1::L1Bridge bridge_;
    std::map<Hash256, std::shared_ptr<const StateSnapshot>> snapshots_;
    Seconds now_ = 0;
    bool failed_ = false;
};
}  // namespace escape::sim
