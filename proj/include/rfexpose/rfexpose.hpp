// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header for the rfexpose library: downlink exposure simulation for
// cellular systems (geometry, antenna patterns, propagation, link budget,
// dosimetry, scenario orchestration, CSV/SVG output).

#include "rfexpose/antenna.hpp"
#include "rfexpose/constants.hpp"
#include "rfexpose/csv.hpp"
#include "rfexpose/errors.hpp"
#include "rfexpose/exposure.hpp"
#include "rfexpose/geometry.hpp"
#include "rfexpose/link.hpp"
#include "rfexpose/propagation.hpp"
#include "rfexpose/scenario.hpp"
#include "rfexpose/svg_plot.hpp"
#include "rfexpose/sweep_row.hpp"
