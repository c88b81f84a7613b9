// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/encoding.hpp>

#include <cstdint>
#include <vector>

namespace escape::l1
{
/// Logical clock value in seconds.
using Seconds = std::uint64_t;

inline constexpr Seconds default_escape_delay = 604800;

struct StateRootRecord
{
    Hash256 root;
    Seconds timestamp = 0;
    std::uint64_t l2_block_number = 0;
    bool valid = true;

    bool operator==(const StateRootRecord&) const = default;
};

enum class RootOutcome
{
    accepted,
    rejected,
};

/// Append-only log of accepted L2 state roots. A proposal whose validity proof
/// fails is rejected and leaves the log untouched.
class L2Oracle
{
public:
    RootOutcome propose_root(const Hash256& root, Seconds timestamp, std::uint64_t block_number, bool valid)
    {
        if (!records_.empty() && timestamp < records_.back().timestamp)
            fail(Errc::NonMonotoneTimestamp, "root timestamp " + std::to_string(timestamp) + " precedes " +
                                                 std::to_string(records_.back().timestamp));
        if (!valid)
            return RootOutcome::rejected;
        records_.push_back({root, timestamp, block_number, true});
        return RootOutcome::accepted;
    }

    bool empty() const noexcept { return records_.empty(); }

    /// Most recent valid root; NoValidRoot when none was ever accepted.
    const StateRootRecord& latest() const
    {
        if (records_.empty())
            fail(Errc::NoValidRoot, "no valid state root has been accepted");
        return records_.back();
    }

    const std::vector<StateRootRecord>& records() const noexcept { return records_; }

private:
    std::vector<StateRootRecord> records_;
};

/// True once `delay` seconds have passed since `since` (inclusive).
constexpr bool elapsed(Seconds since, Seconds delay, Seconds now) noexcept
{
    return now >= since && now - since >= delay;
}

/// Escapes open once T seconds have passed since the latest valid root.
inline bool escape_enabled(const L2Oracle& oracle, Seconds t, Seconds now)
{
    return elapsed(oracle.latest().timestamp, t, now);
}
}  // namespace escape::l1
