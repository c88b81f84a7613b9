// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/l1/registry.hpp>
#include <escape/resolvers/resolvers.hpp>

#include <map>
#include <optional>
#include <string>

namespace escape::resolvers
{
enum class ResolverKind
{
    erc20,
    erc721,
    univ2,
};

constexpr std::string_view to_string(ResolverKind k) noexcept
{
    switch (k)
    {
    case ResolverKind::erc20:
        return "erc20";
    case ResolverKind::erc721:
        return "erc721";
    case ResolverKind::univ2:
        return "univ2";
    }
    return "unknown";
}

inline std::optional<ResolverKind> resolver_kind_from_string(std::string_view s) noexcept
{
    for (const auto k : {ResolverKind::erc20, ResolverKind::erc721, ResolverKind::univ2})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

/// A deployable resolver: which algorithm, and optionally a fixed layout for
/// the contract it serves. Without one, the contract's declared layout is used.
struct ResolverSpec
{
    ResolverKind kind = ResolverKind::erc20;
    std::optional<TokenLayout> layout;

    bool operator==(const ResolverSpec&) const = default;
};

/// Arguments carried by an escape request.
struct ResolverArgs
{
    std::optional<u256> token_id;
};

inline constexpr std::string_view default_erc20_resolver = "default-erc20";
inline constexpr std::string_view default_erc721_resolver = "default-erc721";

/// Resolvers known to the L1 side by identifier, plus the storage layouts
/// declared for L2 contracts.
class ResolverLibrary
{
public:
    ResolverLibrary()
    {
        specs_.emplace(default_erc20_resolver, ResolverSpec{ResolverKind::erc20, std::nullopt});
        specs_.emplace(default_erc721_resolver, ResolverSpec{ResolverKind::erc721, std::nullopt});
    }

    void add(const std::string& id, ResolverSpec spec)
    {
        if (spec.layout)
            spec.layout->validate();
        if (!specs_.emplace(id, std::move(spec)).second)
            fail(Errc::SchemaViolation, "resolver '" + id + "' is already defined");
    }

    const ResolverSpec* find(const std::string& id) const
    {
        const auto it = specs_.find(id);
        return it == specs_.end() ? nullptr : &it->second;
    }

    void declare_layout(const Address& contract, const TokenLayout& layout)
    {
        layout.validate();
        declared_[contract] = layout;
    }

    const TokenLayout* declared_layout(const Address& contract) const
    {
        const auto it = declared_.find(contract);
        return it == declared_.end() ? nullptr : &it->second;
    }

    /// Layout a resolver of `spec` uses for `contract`.
    TokenLayout layout_for(const ResolverSpec& spec, const Address& contract) const
    {
        if (spec.layout)
            return *spec.layout;
        const auto want = spec.kind == ResolverKind::erc20  ? state::ContractKind::erc20
                          : spec.kind == ResolverKind::erc721 ? state::ContractKind::erc721
                                                              : state::ContractKind::univ2pair;
        if (const auto* d = declared_layout(contract); d && d->kind == want)
            return *d;
        switch (spec.kind)
        {
        case ResolverKind::erc20:
            return TokenLayout::erc20();
        case ResolverKind::erc721:
            return TokenLayout::erc721();
        case ResolverKind::univ2:
            break;
        }
        return TokenLayout::univ2pair();
    }

    /// Layout of a fungible token read by the pool resolver.
    TokenLayout token_layout(const Address& token) const
    {
        if (const auto* d = declared_layout(token); d && d->kind != state::ContractKind::erc721)
            return *d;
        return TokenLayout::erc20();
    }

    template <SlotReader R>
    ResolverOutcome run(const R& reader, const ResolverSpec& spec, const Address& contract, const Address& entitled,
        const ResolverArgs& args) const
    {
        const auto layout = layout_for(spec, contract);
        switch (spec.kind)
        {
        case ResolverKind::erc20:
            return resolve_erc20(reader, contract, entitled, layout);
        case ResolverKind::erc721:
            if (!args.token_id)
                fail(Errc::SchemaViolation, "the ERC-721 resolver needs a token_id argument");
            return resolve_erc721(reader, contract, *args.token_id, entitled, layout);
        case ResolverKind::univ2:
            break;
        }
        return resolve_univ2(reader, contract, entitled, layout, [this](const Address& t) { return token_layout(t); });
    }

    const std::map<std::string, ResolverSpec, std::less<>>& specs() const noexcept { return specs_; }
    const std::map<Address, TokenLayout>& declared() const noexcept { return declared_; }

private:
    std::map<std::string, ResolverSpec, std::less<>> specs_;
    std::map<Address, TokenLayout> declared_;
};

struct Dispatched
{
    std::string resolver_id;
    ResolverSpec spec;
    std::optional<l1::RegistrationKind> registration;  // nullopt: built-in default
};

/// Picks the resolver for `l2_contract` at `now`: the registered one if it is
/// active, otherwise a default matching the declared layout.
inline Dispatched dispatch(const l1::ResolverRegistry& registry, const ResolverLibrary& library,
    const l1::L2Oracle& oracle, l1::Seconds t, const Address& l2_contract, l1::Seconds now)
{
    const auto since = oracle.latest().timestamp;
    if (const auto* reg = registry.find(l2_contract))
    {
        const auto delay = reg->kind == l1::RegistrationKind::live ? t : 2 * t;
        if (!l1::elapsed(since, delay, now))
            fail(Errc::ResolverNotYetActive, "resolver '" + reg->resolver_id + "' for " + l2_contract.hex() +
                                                 " activates at " + std::to_string(since + delay));
        const auto* spec = library.find(reg->resolver_id);
        if (!spec)
            fail(Errc::NoResolver, "registered resolver '" + reg->resolver_id + "' is not in the library");
        return {reg->resolver_id, *spec, reg->kind};
    }

    const auto* declared = library.declared_layout(l2_contract);
    std::string_view id;
    if (declared && declared->kind == state::ContractKind::erc20)
        id = default_erc20_resolver;
    else if (declared && declared->kind == state::ContractKind::erc721)
        id = default_erc721_resolver;
    else
        fail(Errc::NoResolver, "no resolver registered for " + l2_contract.hex());
    if (!l1::elapsed(since, t, now))
        fail(Errc::ResolverNotYetActive, "default resolver activates at " + std::to_string(since + t));
    return {std::string{id}, *library.find(std::string{id}), std::nullopt};
}
}  // namespace escape::resolvers
