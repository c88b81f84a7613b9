// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/l1/bridge.hpp>
#include <escape/l1/json.hpp>
#include <escape/l1/messenger.hpp>
#include <escape/l1/oracle.hpp>
#include <escape/l1/registry.hpp>
