// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/mpt/nibbles.hpp>
#include <escape/mpt/proof.hpp>
#include <escape/mpt/trie.hpp>
