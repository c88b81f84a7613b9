// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/resolvers/context.hpp>
#include <escape/resolvers/library.hpp>
#include <escape/resolvers/resolvers.hpp>
