// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "knapqaoa/train.hpp"

namespace knapqaoa::bench {

/// Renders the grid as an SVG heatmap: color-mapped best-value cells, a red
/// dot (class "red-dot") on every cell beating the (0,0) baseline, a star
/// (class "argmax-star") on the argmax cell and circles (class "top3") on the
/// three best cells.
std::string heatmap_to_svg(const train::GridResult& grid);

void emit_heatmap_svg(const train::GridResult& grid, const std::filesystem::path& path);

}  // namespace knapqaoa::bench
