// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/state/account.hpp>
#include <escape/state/json.hpp>
#include <escape/state/layout.hpp>
#include <escape/state/proof.hpp>
#include <escape/state/world.hpp>
