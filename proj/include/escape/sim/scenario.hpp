// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/json_util.hpp>
#include <escape/l1/oracle.hpp>
#include <escape/resolvers/library.hpp>
#include <escape/state/json.hpp>

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace escape::sim
{
using l1::Seconds;
using nlohmann::json;

enum class ActionKind
{
    DepositEth,
    DepositErc20,
    DepositErc721,
    EthTransfer,
    Erc20Mint,
    Erc20Transfer,
    Erc721Mint,
    Erc721Transfer,
    AddLiquidity,
    ProposeRoot,
    RegisterResolverLive,
    RegisterResolverPostFailure,
    RegisterDelegate,
    OperatorFailure,
    AttemptEscape,
    AdvanceClock,
};

struct ActionSchema
{
    ActionKind kind;
    std::string_view name;
    std::vector<std::string_view> required;
    std::vector<std::string_view> optional;
};

inline const std::vector<ActionSchema>& action_schemas()
{
    static const std::vector<ActionSchema> schemas{
        {ActionKind::DepositEth, "DepositEth", {"to", "amount"}, {}},
        {ActionKind::DepositErc20, "DepositErc20", {"token", "to", "amount"}, {}},
        {ActionKind::DepositErc721, "DepositErc721", {"token", "to", "token_id"}, {}},
        {ActionKind::EthTransfer, "EthTransfer", {"from", "to", "amount"}, {}},
        {ActionKind::Erc20Mint, "Erc20Mint", {"token", "to", "amount"}, {}},
        {ActionKind::Erc20Transfer, "Erc20Transfer", {"token", "from", "to", "amount"}, {}},
        {ActionKind::Erc721Mint, "Erc721Mint", {"token", "to", "token_id"}, {}},
        {ActionKind::Erc721Transfer, "Erc721Transfer", {"token", "from", "to", "token_id"}, {}},
        {ActionKind::AddLiquidity, "AddLiquidity", {"pool", "provider", "amount_x", "amount_y"}, {}},
        {ActionKind::ProposeRoot, "ProposeRoot", {}, {"valid", "root"}},
        {ActionKind::RegisterResolverLive, "RegisterResolverLive", {"contract", "resolver"}, {"via", "caller"}},
        {ActionKind::RegisterResolverPostFailure, "RegisterResolverPostFailure", {"caller", "contract", "resolver"},
            {"nonce", "salt", "bytecode_hash"}},
        {ActionKind::RegisterDelegate, "RegisterDelegate", {"wallet", "delegate"}, {"via", "caller"}},
        {ActionKind::OperatorFailure, "OperatorFailure", {}, {}},
        {ActionKind::AttemptEscape, "AttemptEscape", {"escape", "claimer"},
            {"target", "on_behalf_of", "token_id", "proof", "expect_payouts"}},
        {ActionKind::AdvanceClock, "AdvanceClock", {}, {"by", "by_T"}},
    };
    return schemas;
}

inline std::string_view to_string(ActionKind k)
{
    for (const auto& s : action_schemas())
        if (s.kind == k)
            return s.name;
    return "unknown";
}

/// Fields holding an entity reference: a declared name or a 0x address.
inline constexpr std::array<std::string_view, 12> ref_fields{
    "to", "from", "token", "pool", "provider", "contract", "caller", "wallet", "delegate", "claimer", "target",
    "on_behalf_of"};

inline constexpr std::array<std::string_view, 5> uint_fields{"amount", "token_id", "amount_x", "amount_y", "nonce"};

struct ExpectedPayout
{
    std::string asset;  // "ETH" or an L2 token reference
    std::optional<u256> amount;
    std::optional<u256> token_id;
};

struct ProofOptions
{
    std::string root = "latest";  // latest | previous | 0x-hex root
    std::optional<std::size_t> withhold_slot;
    bool corrupt = false;
};

struct Action
{
    std::size_t index = 0;
    ActionKind kind = ActionKind::AdvanceClock;
    std::optional<Seconds> at;
    Seconds time = 0;  // clock value the action runs at
    std::string expect = "ok";
    std::string note;

    std::map<std::string, std::string, std::less<>> refs;
    std::map<std::string, u256, std::less<>> uints;
    std::optional<bool> valid;
    std::optional<std::string> root;
    std::string resolver;
    std::string via = "messenger";
    std::optional<Hash256> salt;
    std::optional<Hash256> bytecode_hash;
    std::string escape;
    ProofOptions proof;
    std::optional<std::vector<ExpectedPayout>> expect_payouts;
    std::int64_t by = 0;
    std::int64_t by_t = 0;

    const std::string* ref(std::string_view field) const
    {
        const auto it = refs.find(field);
        return it == refs.end() ? nullptr : &it->second;
    }

    std::optional<u256> uint(std::string_view field) const
    {
        const auto it = uints.find(field);
        if (it == uints.end())
            return std::nullopt;
        return it->second;
    }
};

struct ContractDecl
{
    std::string name;
    state::ContractKind kind = state::ContractKind::erc20;
    std::string deployer;
    std::optional<state::TokenLayout> layout;
    std::optional<Address> l1_token;
    std::optional<Hash256> create2_salt;
    std::string token0, token1;
};

struct ResolverDecl
{
    std::string id;
    resolvers::ResolverSpec spec;
};

struct Assertion
{
    std::size_t index = 0;
    std::string kind;
    json body;
};

struct Scenario
{
    std::string name;
    std::string description;
    Seconds t = l1::default_escape_delay;
    std::map<std::string, Address, std::less<>> users;
    std::vector<ContractDecl> contracts;
    std::vector<ResolverDecl> resolvers;
    std::vector<Action> timeline;
    std::vector<Assertion> assertions;
};

inline const std::set<std::string, std::less<>>& assertion_kinds()
{
    static const std::set<std::string, std::less<>> kinds{"eth_escrow", "token_escrow", "l1_balance", "l1_nft_owner",
        "nullifier_count", "l2_balance", "escape_enabled", "conservation"};
    return kinds;
}

namespace detail
{
using jsonio::as_address;
using jsonio::as_bool;
using jsonio::as_hash;
using jsonio::as_int64;
using jsonio::as_string;
using jsonio::as_uint;
using jsonio::child_path;
using jsonio::field;
using jsonio::index_path;
using jsonio::only_fields;
using jsonio::schema_error;

class Parser
{
public:
    explicit Parser(std::optional<Seconds> t_override) : t_override_{t_override} {}

    Scenario parse(const json& doc)
    {
        only_fields(doc, "", {"name", "description", "parameters", "genesis", "resolvers", "timeline", "assertions"});
        s_.name = as_string(field(doc, "", "name"), "name");
        if (doc.contains("description"))
            s_.description = as_string(doc["description"], "description");
        if (doc.contains("parameters"))
            parse_parameters(doc["parameters"]);
        if (t_override_)
            s_.t = *t_override_;
        parse_genesis(field(doc, "", "genesis"));
        if (doc.contains("resolvers"))
            parse_resolvers(doc["resolvers"]);
        parse_timeline(field(doc, "", "timeline"));
        if (doc.contains("assertions"))
            parse_assertions(doc["assertions"]);
        return std::move(s_);
    }

private:
    void parse_parameters(const json& j)
    {
        only_fields(j, "parameters", {"T"});
        if (j.contains("T"))
        {
            const auto t = as_int64(j["T"], "parameters.T");
            if (t <= 0)
                schema_error("parameters.T", "must be positive");
            s_.t = static_cast<Seconds>(t);
        }
    }

    void check_new_name(const std::string& name, const std::string& path)
    {
        if (name.empty() || name.starts_with("0x") || name == "ETH")
            schema_error(path, "invalid entity name '" + name + "'");
        if (!names_.insert(name).second)
            schema_error(path, "duplicate entity name '" + name + "'");
    }

    std::string parse_ref(const json& j, const std::string& path) const
    {
        const auto s = as_string(j, path);
        if (s.starts_with("0x"))
        {
            as_address(j, path);
            return s;
        }
        if (!names_.contains(s))
            schema_error(path, "unknown entity '" + s + "'");
        return s;
    }

    void parse_genesis(const json& g)
    {
        only_fields(g, "genesis", {"users", "contracts"});
        if (g.contains("users"))
        {
            jsonio::expect_object(g["users"], "genesis.users");
            for (const auto& [name, a] : g["users"].items())
            {
                const auto p = child_path("genesis.users", name);
                check_new_name(name, p);
                s_.users.emplace(name, as_address(a, p));
            }
        }
        if (!g.contains("contracts"))
            return;
        const std::string cp = "genesis.contracts";
        jsonio::expect_array(g["contracts"], cp);
        for (std::size_t i = 0; i < g["contracts"].size(); ++i)
        {
            const auto& c = g["contracts"][i];
            const auto p = index_path(cp, i);
            only_fields(c, p, {"name", "kind", "deployer", "layout", "l1_token", "create2_salt", "token0", "token1"});
            ContractDecl d;
            d.name = as_string(field(c, p, "name"), child_path(p, "name"));
            const auto kind_name = as_string(field(c, p, "kind"), child_path(p, "kind"));
            const auto kind = state::contract_kind_from_string(kind_name);
            if (!kind)
                schema_error(child_path(p, "kind"), "unknown contract kind '" + kind_name + "'");
            d.kind = *kind;
            d.deployer = parse_ref(field(c, p, "deployer"), child_path(p, "deployer"));
            if (c.contains("layout"))
                d.layout = state::layout_from_json(d.kind, c["layout"], child_path(p, "layout"));
            if (c.contains("l1_token"))
            {
                if (d.kind != state::ContractKind::erc20 && d.kind != state::ContractKind::erc721)
                    schema_error(child_path(p, "l1_token"), "only ERC-20 and ERC-721 contracts are bridged");
                d.l1_token = as_address(c["l1_token"], child_path(p, "l1_token"));
            }
            if (c.contains("create2_salt"))
                d.create2_salt = as_hash(c["create2_salt"], child_path(p, "create2_salt"));
            if (d.kind == state::ContractKind::univ2pair)
            {
                d.token0 = parse_ref(field(c, p, "token0"), child_path(p, "token0"));
                d.token1 = parse_ref(field(c, p, "token1"), child_path(p, "token1"));
            }
            else if (c.contains("token0") || c.contains("token1"))
                schema_error(p, "token0/token1 apply to univ2pair contracts only");
            check_new_name(d.name, child_path(p, "name"));
            s_.contracts.push_back(std::move(d));
        }
    }

    void parse_resolvers(const json& j)
    {
        jsonio::expect_array(j, "resolvers");
        for (std::size_t i = 0; i < j.size(); ++i)
        {
            const auto p = index_path("resolvers", i);
            only_fields(j[i], p, {"id", "kind", "layout"});
            ResolverDecl d;
            d.id = as_string(field(j[i], p, "id"), child_path(p, "id"));
            const auto kind_name = as_string(field(j[i], p, "kind"), child_path(p, "kind"));
            const auto kind = resolvers::resolver_kind_from_string(kind_name);
            if (!kind)
                schema_error(child_path(p, "kind"), "unknown resolver kind '" + kind_name + "'");
            d.spec.kind = *kind;
            if (j[i].contains("layout"))
            {
                const auto ck = *kind == resolvers::ResolverKind::erc20    ? state::ContractKind::erc20
                                : *kind == resolvers::ResolverKind::erc721 ? state::ContractKind::erc721
                                                                           : state::ContractKind::univ2pair;
                d.spec.layout = state::layout_from_json(ck, j[i]["layout"], child_path(p, "layout"));
            }
            if (!resolver_ids_.insert(d.id).second)
                schema_error(child_path(p, "id"), "duplicate resolver id '" + d.id + "'");
            s_.resolvers.push_back(std::move(d));
        }
    }

    void parse_timeline(const json& j)
    {
        jsonio::expect_array(j, "timeline");
        Seconds clock = 0;
        bool failed = false;
        for (std::size_t i = 0; i < j.size(); ++i)
        {
            const auto p = index_path("timeline", i);
            jsonio::expect_object(j[i], p);
            const auto name = as_string(field(j[i], p, "action"), child_path(p, "action"));
            const ActionSchema* schema = nullptr;
            for (const auto& s : action_schemas())
                if (s.name == name)
                    schema = &s;
            if (!schema)
                schema_error(child_path(p, "action"), "unknown action kind '" + name + "'");

            for (const auto& [key, _] : j[i].items())
            {
                const bool known = key == "action" || key == "at" || key == "expect" || key == "note" ||
                                   std::ranges::find(schema->required, key) != schema->required.end() ||
                                   std::ranges::find(schema->optional, key) != schema->optional.end();
                if (!known)
                    schema_error(child_path(p, key), "unknown field for " + name);
            }
            for (const auto req : schema->required)
                field(j[i], p, req);

            Action a = parse_action(*schema, j[i], p);
            a.index = i;
            if (a.at)
            {
                if (*a.at < clock)
                    schema_error(child_path(p, "at"), "timestamp " + std::to_string(*a.at) +
                                                          " is earlier than the clock (" + std::to_string(clock) + ")");
                clock = *a.at;
            }
            a.time = clock;
            if (a.kind == ActionKind::AdvanceClock)
            {
                const auto delta = static_cast<__int128>(a.by_t) * s_.t + a.by;
                if (delta < 0)
                    schema_error(p, "AdvanceClock would move the clock backwards");
                clock += static_cast<Seconds>(delta);
                a.time = clock;
            }
            if (a.kind == ActionKind::OperatorFailure)
            {
                if (failed)
                    schema_error(p, "at most one OperatorFailure is allowed");
                failed = true;
            }
            s_.timeline.push_back(std::move(a));
        }
    }

    Action parse_action(const ActionSchema& schema, const json& j, const std::string& p)
    {
        Action a;
        a.kind = schema.kind;
        if (j.contains("at"))
        {
            const auto at = as_int64(j["at"], child_path(p, "at"));
            if (at < 0)
                schema_error(child_path(p, "at"), "must be non-negative");
            a.at = static_cast<Seconds>(at);
        }
        if (j.contains("expect"))
        {
            a.expect = as_string(j["expect"], child_path(p, "expect"));
            if (a.expect != "ok" && a.expect != "rejected" && !errc_from_string(a.expect))
                schema_error(child_path(p, "expect"), "unknown outcome '" + a.expect + "'");
        }
        if (j.contains("note"))
            a.note = as_string(j["note"], child_path(p, "note"));
        for (const auto f : ref_fields)
            if (const auto it = j.find(std::string{f}); it != j.end())
                a.refs.emplace(std::string{f}, parse_ref(*it, child_path(p, f)));
        for (const auto f : uint_fields)
            if (const auto it = j.find(std::string{f}); it != j.end())
                a.uints.emplace(std::string{f}, as_uint(*it, child_path(p, f)));
        if (j.contains("valid"))
            a.valid = as_bool(j["valid"], child_path(p, "valid"));
        if (j.contains("root"))
        {
            a.root = as_string(j["root"], child_path(p, "root"));
            as_hash(j["root"], child_path(p, "root"));
        }
        if (j.contains("resolver"))
        {
            a.resolver = as_string(j["resolver"], child_path(p, "resolver"));
            if (!resolver_ids_.contains(a.resolver))
                schema_error(child_path(p, "resolver"), "unknown resolver '" + a.resolver + "'");
        }
        if (j.contains("via"))
        {
            a.via = as_string(j["via"], child_path(p, "via"));
            if (a.via != "messenger" && a.via != "direct")
                schema_error(child_path(p, "via"), "must be 'messenger' or 'direct'");
            if (a.via == "direct" && !a.ref("caller"))
                schema_error(child_path(p, "caller"), "direct calls need a caller");
        }
        if (j.contains("salt"))
            a.salt = as_hash(j["salt"], child_path(p, "salt"));
        if (j.contains("bytecode_hash"))
            a.bytecode_hash = as_hash(j["bytecode_hash"], child_path(p, "bytecode_hash"));
        if (a.kind == ActionKind::RegisterResolverPostFailure && a.uint("nonce").has_value() == a.salt.has_value())
            schema_error(p, "give exactly one of nonce or salt");
        if (j.contains("escape"))
        {
            a.escape = as_string(j["escape"], child_path(p, "escape"));
            if (a.escape != "eth" && a.escape != "asset")
                schema_error(child_path(p, "escape"), "must be 'eth' or 'asset'");
            if (a.escape == "asset" && !a.ref("target"))
                schema_error(child_path(p, "target"), "asset escapes need a target contract");
        }
        if (j.contains("proof"))
            a.proof = parse_proof(j["proof"], child_path(p, "proof"));
        if (j.contains("expect_payouts"))
            a.expect_payouts = parse_payouts(j["expect_payouts"], child_path(p, "expect_payouts"));
        if (j.contains("by"))
            a.by = as_int64(j["by"], child_path(p, "by"));
        if (j.contains("by_T"))
            a.by_t = as_int64(j["by_T"], child_path(p, "by_T"));
        return a;
    }

    ProofOptions parse_proof(const json& j, const std::string& p) const
    {
        only_fields(j, p, {"root", "withhold_slot", "corrupt"});
        ProofOptions o;
        if (j.contains("root"))
        {
            o.root = as_string(j["root"], child_path(p, "root"));
            if (o.root != "latest" && o.root != "previous")
                as_hash(j["root"], child_path(p, "root"));
        }
        if (j.contains("withhold_slot"))
            o.withhold_slot = static_cast<std::size_t>(as_uint(j["withhold_slot"], child_path(p, "withhold_slot")));
        if (j.contains("corrupt"))
            o.corrupt = as_bool(j["corrupt"], child_path(p, "corrupt"));
        return o;
    }

    std::vector<ExpectedPayout> parse_payouts(const json& j, const std::string& p) const
    {
        jsonio::expect_array(j, p);
        std::vector<ExpectedPayout> out;
        for (std::size_t i = 0; i < j.size(); ++i)
        {
            const auto ip = index_path(p, i);
            only_fields(j[i], ip, {"asset", "amount", "token_id"});
            ExpectedPayout e;
            const auto asset = as_string(field(j[i], ip, "asset"), child_path(ip, "asset"));
            e.asset = asset == "ETH" ? asset : parse_ref(j[i]["asset"], child_path(ip, "asset"));
            if (j[i].contains("amount"))
                e.amount = as_uint(j[i]["amount"], child_path(ip, "amount"));
            if (j[i].contains("token_id"))
                e.token_id = as_uint(j[i]["token_id"], child_path(ip, "token_id"));
            if (e.amount.has_value() == e.token_id.has_value())
                schema_error(ip, "give exactly one of amount or token_id");
            out.push_back(std::move(e));
        }
        return out;
    }

    void parse_assertions(const json& j)
    {
        jsonio::expect_array(j, "assertions");
        for (std::size_t i = 0; i < j.size(); ++i)
        {
            const auto p = index_path("assertions", i);
            only_fields(j[i], p, {"kind", "equals", "token", "holder", "asset", "token_id", "note"});
            Assertion a{i, as_string(field(j[i], p, "kind"), child_path(p, "kind")), j[i]};
            if (!assertion_kinds().contains(a.kind))
                schema_error(child_path(p, "kind"), "unknown assertion kind '" + a.kind + "'");
            for (const auto f : {"token", "holder"})
                if (j[i].contains(f))
                    parse_ref(j[i][f], child_path(p, f));
            if (j[i].contains("asset") && j[i]["asset"] != "ETH")
                parse_ref(j[i]["asset"], child_path(p, "asset"));
            static const std::map<std::string, std::vector<std::string_view>, std::less<>> required{
                {"eth_escrow", {"equals"}}, {"token_escrow", {"token", "equals"}},
                {"l1_balance", {"holder", "asset", "equals"}}, {"l1_nft_owner", {"holder", "token", "token_id"}},
                {"nullifier_count", {"equals"}}, {"l2_balance", {"holder", "equals"}}, {"escape_enabled", {"equals"}},
                {"conservation", {}}};
            for (const auto f : required.at(a.kind))
                field(j[i], p, f);
            s_.assertions.push_back(std::move(a));
        }
    }

    std::optional<Seconds> t_override_;
    Scenario s_;
    std::set<std::string, std::less<>> names_;
    std::set<std::string, std::less<>> resolver_ids_{
        std::string{resolvers::default_erc20_resolver}, std::string{resolvers::default_erc721_resolver}};
};
}  // namespace detail

/// Validates a parsed document. Syntax errors are ParseError; structural
/// problems are SchemaViolation naming the offending field path.
inline Scenario parse_scenario(const json& doc, std::optional<Seconds> t_override = {})
{
    return detail::Parser{t_override}.parse(doc);
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        fail(Errc::ParseError, path.string() + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Scenario load_scenario(const std::filesystem::path& path, std::optional<Seconds> t_override = {})
{
    const auto text = read_file(path);
    return parse_scenario(jsonio::parse_text(text, path.string()), t_override);
}
}  // namespace escape::sim
