// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "knapqaoa/errors.hpp"
#include "knapqaoa/knapsack.hpp"
#include "knapqaoa/knapsack_io.hpp"
#include "support/fixtures.hpp"

using namespace knapqaoa;
using fixtures::classic3;

TEST_CASE("generator respects the inversely-strongly-correlated construction") {
  const auto inst = knap::gen_inverse_strongly_correlated(150, 7);
  REQUIRE(inst.size() == 150);
  double weight_sum = 0.0;
  for (const auto& item : inst.items) {
    CHECK(item.value >= 1);
    CHECK(item.value <= 1000);
    const double gap = item.weight - item.value;
    CHECK(gap >= 98);
    CHECK(gap <= 102);
    CHECK(item.value == std::floor(item.value));
    CHECK(item.weight == std::floor(item.weight));
    weight_sum += item.weight;
  }
  // Capacity must equal ceil(alpha * sum(w) / 100) for some alpha in 10..20.
  bool matches_formula = false;
  for (std::uint64_t alpha = 10; alpha <= 20; ++alpha) {
    const double cap = std::ceil(alpha * weight_sum / 100.0);
    if (cap == inst.capacity) matches_formula = true;
  }
  CHECK(matches_formula);
}

TEST_CASE("generator is deterministic and rejects n = 0") {
  const auto a = knap::gen_inverse_strongly_correlated(1, 42);
  const auto b = knap::gen_inverse_strongly_correlated(1, 42);
  CHECK(a.items[0].value == b.items[0].value);
  CHECK(a.items[0].weight == b.items[0].weight);
  CHECK(a.capacity == b.capacity);
  CHECK_THROWS_AS(knap::gen_inverse_strongly_correlated(0, 1), std::invalid_argument);
}

TEST_CASE("lazy greedy walks ratios and stops at the first rejection") {
  const auto inst = classic3();  // ratios 6, 5, 4
  const auto result = knap::lazy_greedy(inst);
  CHECK(result.selection.to_string() == "110");
  CHECK(result.value == 160);
  CHECK(result.weight == 30);
  CHECK_FALSE(result.proven_optimal);
  CHECK(result.upper_bound >= result.value);
}

TEST_CASE("lazy greedy selects everything when capacity never binds") {
  knap::KnapsackInstance inst;
  inst.items = {{5, 1}, {3, 2}, {8, 4}};
  inst.capacity = 10;
  const auto result = knap::lazy_greedy(inst);
  CHECK(result.selection.to_string() == "111");
  CHECK(result.weight == 7);
}

TEST_CASE("lazy greedy stops immediately when the best-ratio item overflows") {
  knap::KnapsackInstance inst;
  inst.items = {{100, 60}, {1, 70}};
  inst.capacity = 50;
  const auto result = knap::lazy_greedy(inst);
  CHECK(result.selection.to_string() == "00");
  CHECK(result.value == 0);
}

TEST_CASE("greedy selection is a prefix of ones in ratio order") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto inst = fixtures::random_instance(12, 1000 + seed, seed % 2 == 0);
    const auto result = knap::lazy_greedy(inst);
    const auto ev = knap::evaluate(inst, result.selection);
    CHECK(ev.feasible);
    CHECK(ev.value == result.value);
    const auto order = knap::ratio_order(inst);
    bool seen_zero = false;
    for (std::size_t idx : order) {
      if (!result.selection.bits[idx]) seen_zero = true;
      if (seen_zero) CHECK_FALSE(result.selection.bits[idx]);
    }
  }
}

TEST_CASE("smoothed probabilities sit at the logistic midpoint scaled by C") {
  // sum(w) = 60, capacity 50 -> C = 0.2; item B is the first rejection, so
  // its ratio equals r*.
  knap::KnapsackInstance inst;
  inst.items = {{20, 10}, {45, 45}, {2.5, 5}};
  inst.capacity = 50;
  const auto stop = knap::greedy_stop(inst);
  REQUIRE(stop.first_rejected.has_value());
  CHECK(*stop.first_rejected == 1);
  CHECK(stop.stop_ratio == doctest::Approx(1.0));
  const auto probs = knap::smoothed_probabilities(inst, 3.0);
  CHECK(probs[1] == doctest::Approx(1.0 / 1.2).epsilon(1e-12));
}

TEST_CASE("steep smoothing recovers the greedy split away from the threshold") {
  knap::KnapsackInstance inst;
  inst.items = {{20, 10}, {45, 45}, {2.5, 5}};
  inst.capacity = 50;
  const auto probs = knap::smoothed_probabilities(inst, 1e6);
  CHECK(probs[0] == doctest::Approx(1.0).epsilon(1e-9));  // ratio 2 > r* = 1
  CHECK(probs[2] == doctest::Approx(0.0).epsilon(1e-9));  // ratio 0.5 < r*
}

TEST_CASE("smoothed probability is one half when C = 1 at the threshold") {
  knap::KnapsackInstance inst;
  inst.items = {{1, 2}};
  inst.capacity = 1;  // sum(w)/c = 2 -> C = 1, and the only item is rejected
  const auto probs = knap::smoothed_probabilities(inst, 12.0);
  CHECK(probs[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("smoothed probabilities are monotone in the ratio") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = fixtures::random_instance(14, 2000 + seed, true);
    const auto probs = knap::smoothed_probabilities(inst, 4.0);
    const auto order = knap::ratio_order(inst);
    for (std::size_t k = 1; k < order.size(); ++k) {
      // order is ratio non-increasing, so probabilities follow suit
      CHECK(probs[order[k - 1]] >= probs[order[k]] - 1e-12);
    }
    for (double p : probs) {
      // Strictly inside (0,1) in real arithmetic; the exponential can
      // underflow to exactly 1 in doubles for extreme ratios.
      CHECK(p > 0.0);
      CHECK(p <= 1.0);
    }
  }
}

TEST_CASE("smoothing clamps the everything-fits case toward one") {
  knap::KnapsackInstance inst;
  inst.items = {{5, 1}, {1, 2}};
  inst.capacity = 10;  // sum(w) <= c
  const auto probs = knap::smoothed_probabilities(inst, 5.0);
  for (double p : probs) CHECK(p > 0.999);
  CHECK_THROWS_AS(knap::smoothed_probabilities(inst, 0.0), std::invalid_argument);
}

TEST_CASE("evaluate sums selected items and flags capacity violations") {
  const auto inst = classic3();
  const auto ev1 = knap::evaluate(inst, knap::Selection::from_string("110"));
  CHECK(ev1.value == 160);
  CHECK(ev1.weight == 30);
  CHECK(ev1.feasible);
  const auto ev0 = knap::evaluate(inst, knap::Selection::from_string("000"));
  CHECK(ev0.value == 0);
  CHECK(ev0.weight == 0);
  CHECK(ev0.feasible);
  const auto ev2 = knap::evaluate(inst, knap::Selection::from_string("111"));
  CHECK(ev2.value == 280);
  CHECK(ev2.weight == 60);
  CHECK_FALSE(ev2.feasible);
  CHECK_THROWS_AS(knap::evaluate(inst, knap::Selection::from_string("11")),
                  std::invalid_argument);
}

TEST_CASE("text round trip preserves every field bit-exactly") {
  auto inst = classic3();
  inst.items[0].value = 60.000000000000014;  // not representable in short decimal
  const auto path = std::filesystem::temp_directory_path() / "knapqaoa_roundtrip.txt";
  knap::save_instance(inst, path);
  const auto loaded = knap::load_instance(path);
  REQUIRE(loaded.size() == inst.size());
  CHECK(loaded.id == inst.id);
  CHECK(loaded.capacity == inst.capacity);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    CHECK(loaded.items[i].value == inst.items[i].value);
    CHECK(loaded.items[i].weight == inst.items[i].weight);
  }
  std::filesystem::remove(path);
}

TEST_CASE("generated instances survive save/load with identical serialization") {
  const auto inst = knap::gen_inverse_strongly_correlated(150, 99);
  const auto text = knap::to_text(inst);
  const auto reloaded = knap::from_text(text);
  CHECK(knap::to_text(reloaded) == text);
}

TEST_CASE("loader rejects malformed files with line context") {
  CHECK_THROWS_AS(knap::from_text("2 50\n10 0\n5 1\n"), ParseError);       // zero weight
  CHECK_THROWS_AS(knap::from_text("1 0\n10 5\n"), ParseError);             // capacity <= 0
  CHECK_THROWS_AS(knap::from_text("2 50\n10 5\n"), ParseError);            // count mismatch
  CHECK_THROWS_AS(knap::from_text("2 50\n10\n5 1\n"), ParseError);         // missing field
  CHECK_THROWS_AS(knap::from_text("abc 50\n"), ParseError);                // junk header
  try {
    knap::from_text("2 50\n10 0\n5 1\n", "bad.txt");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bad.txt:2") != std::string::npos);
  }
}

TEST_CASE("json mirror round trips") {
  const auto inst = knap::gen_inverse_strongly_correlated(20, 5);
  const auto j = knap::to_json(inst);
  const auto back = knap::from_json(j);
  CHECK(back.id == inst.id);
  CHECK(back.capacity == inst.capacity);
  REQUIRE(back.size() == inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    CHECK(back.items[i].value == inst.items[i].value);
    CHECK(back.items[i].weight == inst.items[i].weight);
  }
}

TEST_CASE("generated capacity stays within the alpha range bounds") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = knap::gen_inverse_strongly_correlated(40, seed);
    double weight_sum = 0.0;
    for (const auto& item : inst.items) weight_sum += item.weight;
    CHECK(inst.capacity >= std::ceil(10.0 * weight_sum / 100.0));
    CHECK(inst.capacity <= std::ceil(20.0 * weight_sum / 100.0));
  }
}
