// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <escape/sim/report.hpp>
#include <escape/sim/scenario.hpp>
#include <escape/sim/simulation.hpp>
