// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace escape
{
/// Every failure the library can report. The names are stable: they appear in
/// reports, fixtures and CLI output.
enum class Errc
{
    MalformedRlp,
    WrongKeyLength,
    InvalidProof,
    InsufficientBalance,
    InsufficientLiquidity,
    AlreadyMinted,
    NotOwner,
    NonMonotoneTimestamp,
    NoValidRoot,
    EscapeNotEnabled,
    StaleRoot,
    NullifierUsed,
    NothingToEscape,
    EscrowInsufficient,
    NoResolver,
    ResolverNotYetActive,
    MissingSlotProof,
    NotViaMessenger,
    L2AlreadyFailed,
    DeployerMismatch,
    LiveResolverExists,
    ZeroSupply,
    ZeroAmount,
    UnknownContract,
    ParseError,
    SchemaViolation,
};

inline constexpr std::array<std::pair<Errc, std::string_view>, 26> errc_names{{
    {Errc::MalformedRlp, "MalformedRlp"},
    {Errc::WrongKeyLength, "WrongKeyLength"},
    {Errc::InvalidProof, "InvalidProof"},
    {Errc::InsufficientBalance, "InsufficientBalance"},
    {Errc::InsufficientLiquidity, "InsufficientLiquidity"},
    {Errc::AlreadyMinted, "AlreadyMinted"},
    {Errc::NotOwner, "NotOwner"},
    {Errc::NonMonotoneTimestamp, "NonMonotoneTimestamp"},
    {Errc::NoValidRoot, "NoValidRoot"},
    {Errc::EscapeNotEnabled, "EscapeNotEnabled"},
    {Errc::StaleRoot, "StaleRoot"},
    {Errc::NullifierUsed, "NullifierUsed"},
    {Errc::NothingToEscape, "NothingToEscape"},
    {Errc::EscrowInsufficient, "EscrowInsufficient"},
    {Errc::NoResolver, "NoResolver"},
    {Errc::ResolverNotYetActive, "ResolverNotYetActive"},
    {Errc::MissingSlotProof, "MissingSlotProof"},
    {Errc::NotViaMessenger, "NotViaMessenger"},
    {Errc::L2AlreadyFailed, "L2AlreadyFailed"},
    {Errc::DeployerMismatch, "DeployerMismatch"},
    {Errc::LiveResolverExists, "LiveResolverExists"},
    {Errc::ZeroSupply, "ZeroSupply"},
    {Errc::ZeroAmount, "ZeroAmount"},
    {Errc::UnknownContract, "UnknownContract"},
    {Errc::ParseError, "ParseError"},
    {Errc::SchemaViolation, "SchemaViolation"},
}};

constexpr std::string_view to_string(Errc code) noexcept
{
    for (const auto& [c, name] : errc_names)
        if (c == code)
            return name;
    return "Unknown";
}

constexpr std::optional<Errc> errc_from_string(std::string_view name) noexcept
{
    for (const auto& [c, n] : errc_names)
        if (n == name)
            return c;
    return std::nullopt;
}

class Error : public std::runtime_error
{
public:
    explicit Error(Errc code, const std::string& detail = {})
      : std::runtime_error{detail.empty() ? std::string{to_string(code)} :
                                            std::string{to_string(code)} + ": " + detail},
        code_{code}
    {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail = {})
{
    throw Error{code, detail};
}
}  // namespace escape
