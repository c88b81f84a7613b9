// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/encoding.hpp>

#include <utility>

namespace escape::l1
{
/// Caller context of an L1 call. Messages relayed from L2 arrive with the
/// messenger as msg_sender and the originating L2 contract as xdomain_sender.
struct MessengerCall
{
    Address msg_sender;
    Address xdomain_sender;
};

/// Simulated L2 to L1 message channel. It only relays while the L2 operator
/// is live.
class CrossDomainMessenger
{
public:
    explicit CrossDomainMessenger(const Address& address) : address_{address} {}

    const Address& address() const noexcept { return address_; }
    bool live() const noexcept { return live_; }
    void halt() noexcept { live_ = false; }

    template <class F>
    decltype(auto) relay(const Address& l2_sender, F&& f) const
    {
        if (!live_)
            fail(Errc::L2AlreadyFailed, "the L2 operator has failed; no messages are relayed");
        return std::forward<F>(f)(MessengerCall{address_, l2_sender});
    }

private:
    Address address_;
    bool live_ = true;
};
}  // namespace escape::l1
