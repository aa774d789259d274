// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>
#include <string>

#include "knapqaoa/heatmap_svg.hpp"
#include "knapqaoa/knapsack.hpp"
#include "knapqaoa/train.hpp"

using namespace knapqaoa;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size()))
    ++count;
  return count;
}

train::GridResult synthetic_grid(std::size_t ng, std::size_t nb) {
  train::GridResult grid;
  grid.gammas = train::linspace(0.0, 0.01, ng);
  grid.betas = train::linspace(0.0, 3.1, nb);
  grid.best_value.assign(ng * nb, 100.0);
  grid.mean_objective.assign(ng * nb, 50.0);
  grid.valid_ratio.assign(ng * nb, 0.5);
  grid.red_dot.assign(ng * nb, 0);
  grid.baseline_best = 100.0;
  grid.top3 = {0};
  if (ng * nb > 2) grid.top3 = {0, 1, 2};
  return grid;
}

}  // namespace

TEST_CASE("a single-cell heatmap draws one cell with the star on it") {
  const auto grid = synthetic_grid(1, 1);
  const auto svg = bench::heatmap_to_svg(grid);
  CHECK(count_occurrences(svg, "class=\"cell\"") == 1);
  CHECK(count_occurrences(svg, "argmax-star") == 1);
}

TEST_CASE("a constant heatmap has no red dots") {
  const auto grid = synthetic_grid(4, 3);
  const auto svg = bench::heatmap_to_svg(grid);
  CHECK(count_occurrences(svg, "class=\"cell\"") == 12);
  CHECK(count_occurrences(svg, "red-dot") == 0);
}

TEST_CASE("rendered red dots agree with the csv recount") {
  const auto inst = knap::gen_inverse_strongly_correlated(10, 42);
  cop::CopulaSpec spec;
  spec.probs = knap::smoothed_probabilities(inst, 30.0);
  const auto pairing = cop::PairingScheme::ring(10);
  const auto grange = train::default_gamma_range(inst);
  const auto grid = train::grid_search_p1(
      inst, spec, pairing, train::linspace(grange.first, grange.second, 8),
      train::linspace(0.0, 3.1, 8), 0, 0, 1e-3);

  std::size_t expected_red = 0;
  for (auto dot : grid.red_dot) expected_red += dot;

  const auto svg = bench::heatmap_to_svg(grid);
  CHECK(count_occurrences(svg, "red-dot") == expected_red);
  CHECK(count_occurrences(svg, "class=\"top3\"") == grid.top3.size());

  // The same count must be recoverable from the persisted csv alone.
  std::istringstream csv(grid.to_csv());
  std::string line;
  std::getline(csv, line);  // header
  std::size_t recount = 0;
  while (std::getline(csv, line)) {
    const auto last_comma = line.rfind(',');
    const auto second_last = line.rfind(',', last_comma - 1);
    const auto third_last = line.rfind(',', second_last - 1);
    const double best = std::stod(line.substr(third_last + 1, second_last - third_last - 1));
    if (best > grid.baseline_best) ++recount;
  }
  CHECK(recount == expected_red);
}
