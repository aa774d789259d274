// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "knapqaoa/heatmap_svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "knapqaoa/errors.hpp"

namespace knapqaoa::bench {

namespace {

constexpr int kCell = 14;
constexpr int kMarginLeft = 56;
constexpr int kMarginBottom = 40;
constexpr int kMarginTop = 16;
constexpr int kMarginRight = 16;

std::string color_for(double t) {
  // Dark blue -> teal -> yellow ramp.
  t = std::clamp(t, 0.0, 1.0);
  const auto lerp = [](double a, double b, double u) { return a + (b - a) * u; };
  double r, g, b;
  if (t < 0.5) {
    const double u = t / 0.5;
    r = lerp(25, 33, u);
    g = lerp(25, 145, u);
    b = lerp(95, 140, u);
  } else {
    const double u = (t - 0.5) / 0.5;
    r = lerp(33, 250, u);
    g = lerp(145, 221, u);
    b = lerp(140, 50, u);
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(r), static_cast<int>(g),
                static_cast<int>(b));
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string heatmap_to_svg(const train::GridResult& grid) {
  if (grid.gammas.empty() || grid.betas.empty())
    throw std::invalid_argument("empty heatmap");
  const std::size_t ng = grid.gammas.size();
  const std::size_t nb = grid.betas.size();
  const int width = kMarginLeft + static_cast<int>(ng) * kCell + kMarginRight;
  const int height = kMarginTop + static_cast<int>(nb) * kCell + kMarginBottom;

  double lo = 0.0, hi = 1.0;
  bool seen = false;
  for (double v : grid.best_value) {
    if (v < 0.0) continue;  // no feasible support
    if (!seen) {
      lo = hi = v;
      seen = true;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!seen || hi == lo) hi = lo + 1.0;

  // gamma on the x axis, beta on the y axis (origin bottom-left).
  const auto cell_x = [&](std::size_t gi) { return kMarginLeft + static_cast<int>(gi) * kCell; };
  const auto cell_y = [&](std::size_t bi) {
    return kMarginTop + static_cast<int>(nb - 1 - bi) * kCell;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t gi = 0; gi < ng; ++gi)
    for (std::size_t bi = 0; bi < nb; ++bi) {
      const std::size_t c = grid.cell(gi, bi);
      const double v = grid.best_value[c];
      const std::string fill = v < 0.0 ? "#d0d0d0" : color_for((v - lo) / (hi - lo));
      svg += "<rect class=\"cell\" x=\"" + std::to_string(cell_x(gi)) + "\" y=\"" +
             std::to_string(cell_y(bi)) + "\" width=\"" + std::to_string(kCell) + "\" height=\"" +
             std::to_string(kCell) + "\" fill=\"" + fill + "\"><title>gamma=" +
             fmt(grid.gammas[gi]) + " beta=" + fmt(grid.betas[bi]) + " best=" + fmt(v) +
             "</title></rect>\n";
    }
  for (std::size_t gi = 0; gi < ng; ++gi)
    for (std::size_t bi = 0; bi < nb; ++bi) {
      if (!grid.red_dot[grid.cell(gi, bi)]) continue;
      svg += "<circle class=\"red-dot\" cx=\"" + std::to_string(cell_x(gi) + kCell / 2) +
             "\" cy=\"" + std::to_string(cell_y(bi) + kCell / 2) +
             "\" r=\"2\" fill=\"red\"/>\n";
    }
  for (std::size_t rank = 0; rank < grid.top3.size(); ++rank) {
    const std::size_t c = grid.top3[rank];
    const std::size_t gi = c / nb;
    const std::size_t bi = c % nb;
    svg += "<circle class=\"top3\" cx=\"" + std::to_string(cell_x(gi) + kCell / 2) + "\" cy=\"" +
           std::to_string(cell_y(bi) + kCell / 2) +
           "\" r=\"6\" fill=\"none\" stroke=\"#c40000\" stroke-width=\"1.5\"/>\n";
  }
  {
    const double cx = cell_x(grid.argmax_gamma) + kCell / 2.0;
    const double cy = cell_y(grid.argmax_beta) + kCell / 2.0;
    std::string points;
    for (int k = 0; k < 10; ++k) {
      const double radius = (k % 2 == 0) ? 6.0 : 2.6;
      const double angle = -std::numbers::pi / 2 + k * std::numbers::pi / 5;
      points += fmt(cx + radius * std::cos(angle)) + "," + fmt(cy + radius * std::sin(angle));
      if (k != 9) points += " ";
    }
    svg += "<polygon class=\"argmax-star\" points=\"" + points +
           "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  // Axis labels: endpoints only.
  svg += "<text x=\"" + std::to_string(kMarginLeft) + "\" y=\"" +
         std::to_string(height - kMarginBottom / 2) + "\" font-size=\"10\">gamma " +
         fmt(grid.gammas.front()) + " .. " + fmt(grid.gammas.back()) + "</text>\n";
  svg += "<text x=\"4\" y=\"" + std::to_string(kMarginTop + 10) +
         "\" font-size=\"10\">beta " + fmt(grid.betas.back()) + "</text>\n";
  svg += "<text x=\"4\" y=\"" + std::to_string(kMarginTop + static_cast<int>(nb) * kCell) +
         "\" font-size=\"10\">" + fmt(grid.betas.front()) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

void emit_heatmap_svg(const train::GridResult& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << heatmap_to_svg(grid);
}

}  // namespace knapqaoa::bench
