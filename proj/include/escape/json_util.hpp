// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/encoding.hpp>

#include <json.hpp>

#include <initializer_list>
#include <string>
#include <string_view>

/// Strict accessors for the JSON documents the tools read. Every failure names
/// the offending field path.
namespace escape::jsonio
{
using nlohmann::json;

inline std::string child_path(const std::string& path, std::string_view field)
{
    return path.empty() ? std::string{field} : path + "." + std::string{field};
}

inline std::string index_path(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what)
{
    fail(Errc::SchemaViolation, (path.empty() ? std::string{"document"} : path) + ": " + what);
}

inline void expect_object(const json& j, const std::string& path)
{
    if (!j.is_object())
        schema_error(path, "expected an object");
}

inline void expect_array(const json& j, const std::string& path)
{
    if (!j.is_array())
        schema_error(path, "expected an array");
}

/// Rejects any key outside `allowed`.
inline void only_fields(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed)
{
    expect_object(j, path);
    for (const auto& [key, _] : j.items())
    {
        bool ok = false;
        for (const auto a : allowed)
            ok = ok || a == key;
        if (!ok)
            schema_error(child_path(path, key), "unknown field");
    }
}

inline const json& field(const json& j, const std::string& path, std::string_view name)
{
    const auto it = j.find(std::string{name});
    if (it == j.end())
        schema_error(child_path(path, name), "missing required field");
    return *it;
}

inline std::string as_string(const json& j, const std::string& path)
{
    if (!j.is_string())
        schema_error(path, "expected a string");
    return j.get<std::string>();
}

inline bool as_bool(const json& j, const std::string& path)
{
    if (!j.is_boolean())
        schema_error(path, "expected a boolean");
    return j.get<bool>();
}

/// Non-negative integer given either as a JSON integer or a decimal string.
/// Floats are rejected.
inline u256 as_uint(const json& j, const std::string& path)
{
    if (j.is_number_unsigned())
        return j.get<std::uint64_t>();
    if (j.is_number_integer())
    {
        const auto v = j.get<std::int64_t>();
        if (v < 0)
            schema_error(path, "expected a non-negative integer");
        return static_cast<std::uint64_t>(v);
    }
    if (j.is_string())
    {
        try
        {
            return parse_decimal(j.get<std::string>());
        }
        catch (const Error& e)
        {
            schema_error(path, e.what());
        }
    }
    schema_error(path, "expected an integer or decimal string");
}

/// Signed 64-bit integer (JSON integer only).
inline std::int64_t as_int64(const json& j, const std::string& path)
{
    if (!j.is_number_integer())
        schema_error(path, "expected an integer");
    return j.get<std::int64_t>();
}

inline Bytes as_hex(const json& j, const std::string& path)
{
    const auto s = as_string(j, path);
    if (!s.starts_with("0x"))
        schema_error(path, "hex value must be 0x-prefixed");
    try
    {
        return from_hex(s);
    }
    catch (const Error& e)
    {
        schema_error(path, e.what());
    }
}

inline Address as_address(const json& j, const std::string& path)
{
    const auto b = as_hex(j, path);
    if (b.size() != 20)
        schema_error(path, "expected a 20-octet address");
    return Address::from_view(b);
}

inline Hash256 as_hash(const json& j, const std::string& path)
{
    const auto b = as_hex(j, path);
    if (b.size() != 32)
        schema_error(path, "expected a 32-octet value");
    return Hash256::from_view(b);
}

/// 32-octet word from hex; shorter values are left-padded with zeros.
inline Word as_word(const json& j, const std::string& path)
{
    const auto b = as_hex(j, path);
    if (b.size() > 32)
        schema_error(path, "word longer than 32 octets");
    Word w;
    std::copy(b.begin(), b.end(), w.bytes.begin() + (32 - b.size()));
    return w;
}

inline u256 as_quantity(const json& j, const std::string& path)
{
    try
    {
        return parse_quantity(as_string(j, path));
    }
    catch (const Error& e)
    {
        schema_error(path, e.what());
    }
}

/// Parses text, reporting syntax errors as ParseError with line and column.
inline json parse_text(std::string_view text, const std::string& source)
{
    try
    {
        return json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error& e)
    {
        std::size_t line = 1, col = 1;
        const auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < upto; ++i)
        {
            if (text[i] == '\n')
            {
                ++line;
                col = 1;
            }
            else
                ++col;
        }
        fail(Errc::ParseError, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}
}  // namespace escape::jsonio
