// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

// Umbrella header.
#pragma once

#include "bounds.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "lanczos.hpp"
#include "magnon.hpp"
#include "operators.hpp"
#include "sector.hpp"
#include "spectral.hpp"
#include "weights.hpp"
