// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/encoding/address.hpp>
#include <escape/encoding/bytes.hpp>
#include <escape/encoding/keccak.hpp>
#include <escape/encoding/rlp.hpp>
#include <escape/encoding/uint256.hpp>
