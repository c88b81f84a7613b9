// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/l1/messenger.hpp>
#include <escape/l1/oracle.hpp>

#include <map>
#include <optional>
#include <string>

namespace escape::l1
{
enum class RegistrationKind
{
    live,
    post_failure,
};

constexpr std::string_view to_string(RegistrationKind k) noexcept
{
    return k == RegistrationKind::live ? "live" : "post_failure";
}

struct ResolverRegistration
{
    Address l2_contract;
    std::string resolver_id;
    RegistrationKind kind = RegistrationKind::live;
    Seconds registered_at = 0;

    bool operator==(const ResolverRegistration&) const = default;
};

/// Maps L2 contracts to the resolver that computes their escape entitlements.
class ResolverRegistry
{
public:
    explicit ResolverRegistry(const Address& messenger) : messenger_{messenger} {}

    /// Registration sent by the L2 contract itself through the messenger.
    /// A later registration replaces an earlier one.
    void set_resolver(const MessengerCall& call, const std::string& resolver_id, Seconds now)
    {
        if (call.msg_sender != messenger_)
            fail(Errc::NotViaMessenger, "caller " + call.msg_sender.hex() + " is not the messenger");
        entries_[call.xdomain_sender] = {call.xdomain_sender, resolver_id, RegistrationKind::live, now};
    }

    /// Registration by the deployer after the operator failed, proven by
    /// recomputing the CREATE address from (caller, nonce).
    void register_post_failure_create(const L2Oracle& oracle, Seconds t, const Address& caller, const u256& nonce,
        const Address& l2_contract, const std::string& resolver_id, Seconds now)
    {
        check_post_failure(oracle, t, l2_contract, now);
        if (create_address(caller, nonce) != l2_contract)
            fail(Errc::DeployerMismatch,
                caller.hex() + " with nonce " + to_decimal(nonce) + " did not deploy " + l2_contract.hex());
        entries_[l2_contract] = {l2_contract, resolver_id, RegistrationKind::post_failure, now};
    }

    /// As above, for a CREATE2 deployment.
    void register_post_failure_create2(const L2Oracle& oracle, Seconds t, const Address& caller, const Hash256& salt,
        const Hash256& bytecode_hash, const Address& l2_contract, const std::string& resolver_id, Seconds now)
    {
        check_post_failure(oracle, t, l2_contract, now);
        if (create2_address(caller, salt, bytecode_hash) != l2_contract)
            fail(Errc::DeployerMismatch, "CREATE2 inputs from " + caller.hex() + " do not yield " + l2_contract.hex());
        entries_[l2_contract] = {l2_contract, resolver_id, RegistrationKind::post_failure, now};
    }

    const ResolverRegistration* find(const Address& l2_contract) const
    {
        const auto it = entries_.find(l2_contract);
        return it == entries_.end() ? nullptr : &it->second;
    }

    const std::map<Address, ResolverRegistration>& entries() const noexcept { return entries_; }

private:
    void check_post_failure(const L2Oracle& oracle, Seconds t, const Address& l2_contract, Seconds now) const
    {
        if (!escape_enabled(oracle, t, now))
            fail(Errc::EscapeNotEnabled, "post-failure registration before the escape delay has passed");
        if (const auto* r = find(l2_contract); r && r->kind == RegistrationKind::live)
            fail(Errc::LiveResolverExists, l2_contract.hex() + " registered '" + r->resolver_id + "' while live");
    }

    Address messenger_;
    std::map<Address, ResolverRegistration> entries_;
};

struct DelegateRecord
{
    Address l2_wallet;
    Address l1_delegate;
    Seconds registered_at = 0;

    bool operator==(const DelegateRecord&) const = default;
};

/// L1 accounts allowed to escape on behalf of L2 smart wallets.
class DelegateRegistry
{
public:
    explicit DelegateRegistry(const Address& messenger) : messenger_{messenger} {}

    void set_delegate(const MessengerCall& call, const Address& l1_delegate, Seconds now)
    {
        if (call.msg_sender != messenger_)
            fail(Errc::NotViaMessenger, "caller " + call.msg_sender.hex() + " is not the messenger");
        records_[call.xdomain_sender] = {call.xdomain_sender, l1_delegate, now};
    }

    std::optional<Address> delegate_of(const Address& l2_wallet) const
    {
        const auto it = records_.find(l2_wallet);
        if (it == records_.end())
            return std::nullopt;
        return it->second.l1_delegate;
    }

    /// True when `claimer` may act for `entitled`.
    bool may_claim(const Address& claimer, const Address& entitled) const
    {
        return claimer == entitled || delegate_of(entitled) == claimer;
    }

    const std::map<Address, DelegateRecord>& records() const noexcept { return records_; }

private:
    Address messenger_;
    std::map<Address, DelegateRecord> records_;
};
}  // namespace escape::l1
