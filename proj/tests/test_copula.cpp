// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "knapqaoa/copula.hpp"
#include "knapqaoa/rng.hpp"
#include "support/dense_oracle.hpp"
#include "support/fixtures.hpp"

using namespace knapqaoa;

namespace {

sim::StateVector random_state(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  sim::StateVector state(n);
  auto amps = state.amplitudes();
  double norm = 0.0;
  for (auto& a : amps) {
    a = {rng.uniform_real(-1, 1), rng.uniform_real(-1, 1)};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return state;
}

double distribution_distance(const sim::StateVector& a, const sim::StateVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i)
    worst = std::max(worst, std::abs(std::norm(a[i]) - std::norm(b[i])));
  return worst;
}

}  // namespace

TEST_CASE("copula pmf factorizes at theta zero and matches hand values at minus one") {
  const auto indep = cop::copula_pmf(0.3, 0.8, 0.0);
  CHECK(indep.q11 == doctest::Approx(0.24).epsilon(1e-15));
  CHECK(indep.q00 == doctest::Approx(0.14).epsilon(1e-15));
  CHECK(indep.q01 == doctest::Approx(0.56).epsilon(1e-15));
  CHECK(indep.q10 == doctest::Approx(0.06).epsilon(1e-15));

  const auto anti = cop::copula_pmf(0.5, 0.5, -1.0);
  CHECK(anti.q00 == doctest::Approx(3.0 / 16).epsilon(1e-15));
  CHECK(anti.q01 == doctest::Approx(5.0 / 16).epsilon(1e-15));
  CHECK(anti.q10 == doctest::Approx(5.0 / 16).epsilon(1e-15));
  CHECK(anti.q11 == doctest::Approx(3.0 / 16).epsilon(1e-15));

  const auto degenerate = cop::copula_pmf(0.0, 0.7, -0.5);
  CHECK(degenerate.q10 == 0.0);
  CHECK(degenerate.q11 == 0.0);
  CHECK(degenerate.q00 == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(degenerate.q01 == doctest::Approx(0.7).epsilon(1e-15));

  CHECK_THROWS_AS(cop::copula_pmf(1.2, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(cop::copula_pmf(0.5, 0.5, -1.5), std::invalid_argument);
}

TEST_CASE("copula pmf is a proper joint distribution with exact marginals") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const double p1 = rng.uniform01();
    const double p2 = rng.uniform01();
    const double theta = rng.uniform_real(-1.0, 1.0);
    const auto pmf = cop::copula_pmf(p1, p2, theta);
    CHECK(pmf.q00 >= -1e-15);
    CHECK(pmf.q01 >= -1e-15);
    CHECK(pmf.q10 >= -1e-15);
    CHECK(pmf.q11 >= -1e-15);
    CHECK(pmf.q00 + pmf.q01 + pmf.q10 + pmf.q11 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pmf.q10 + pmf.q11 == doctest::Approx(p1).epsilon(1e-12));
    CHECK(pmf.q01 + pmf.q11 == doctest::Approx(p2).epsilon(1e-12));
  }
}

TEST_CASE("copula preparation reproduces the pmf from the all-zero state") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const double p1 = rng.uniform01();
    const double p2 = rng.uniform01();
    sim::StateVector state(2);
    cop::apply_rcop(state, 0, 1, p1, p2);
    const auto pmf = cop::copula_pmf(p1, p2, -1.0);
    CHECK(std::norm(state[0]) == doctest::Approx(pmf.q00).epsilon(1e-10));
    CHECK(std::norm(state[1]) == doctest::Approx(pmf.q10).epsilon(1e-10));  // qubit0 = 1
    CHECK(std::norm(state[2]) == doctest::Approx(pmf.q01).epsilon(1e-10));
    CHECK(std::norm(state[3]) == doctest::Approx(pmf.q11).epsilon(1e-10));
  }
}

TEST_CASE("copula preparation with degenerate marginals is the identity on zero") {
  sim::StateVector state(2);
  cop::apply_rcop(state, 0, 1, 0.0, 0.0);
  CHECK(std::abs(state[0] - sim::Amplitude{1, 0}) < 1e-14);
}

TEST_CASE("copula preparation is unitary") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const double p1 = rng.uniform01();
    const double p2 = rng.uniform01();
    auto state = random_state(3, 500 + trial);
    const auto before = oracle::state_to_vector(state);
    cop::apply_rcop(state, 2, 0, p1, p2);
    cop::apply_rcop_dagger(state, 2, 0, p1, p2);
    CHECK(oracle::max_abs_diff(before, oracle::state_to_vector(state)) < 1e-12);
  }
}

TEST_CASE("general-theta conditionals agree with the printed minus-one forms") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const double p1 = rng.uniform01();
    const double p2 = rng.uniform01();
    const double printed_one = p2 * (1.0 - (1.0 - p1) * (1.0 - p2));
    const double printed_zero = p2 * (1.0 + p1 * (1.0 - p2));
    CHECK(cop::conditional_given_one(p1, p2, -1.0) ==
          doctest::Approx(printed_one).epsilon(1e-12));
    CHECK(cop::conditional_given_zero(p1, p2, -1.0) ==
          doctest::Approx(printed_zero).epsilon(1e-12));
  }
}

TEST_CASE("mixer at beta zero is the identity and beta pi preserves distributions") {
  cop::CopulaSpec spec;
  spec.probs = {0.3, 0.6, 0.8, 0.2};
  const auto pairing = cop::PairingScheme::ring(4);
  auto state = random_state(4, 60);
  const auto before = state;
  cop::apply_copula_mixer(state, 0.0, spec, pairing);
  CHECK(oracle::max_abs_diff(oracle::state_to_vector(before), oracle::state_to_vector(state)) <
        1e-12);

  cop::apply_copula_mixer(state, std::numbers::pi, spec, pairing);
  CHECK(distribution_distance(before, state) < 1e-12);

  cop::apply_copula_mixer(state, 0.37, spec, pairing);
  CHECK(std::abs(state.norm_squared() - 1.0) < 1e-10);
}

TEST_CASE("paired warm-start states are eigenstates of their own mixer") {
  cop::CopulaSpec spec;
  spec.probs = {0.35, 0.7, 0.15, 0.9, 0.5, 0.45};
  const auto pairing = cop::PairingScheme::disjoint_pairs(6);
  sim::StateVector state(6);
  for (const auto& [i, j] : pairing.sublayers.front())
    cop::apply_rcop(state, i, j, spec.probs[i], spec.probs[j], spec.theta);
  const auto reference = state;
  for (double beta : {0.2, 0.9, 2.4}) {
    auto mixed = reference;
    cop::apply_copula_mixer(mixed, beta, spec, pairing);
    CHECK(distribution_distance(reference, mixed) < 1e-10);
  }
}

TEST_CASE("mixer equals the dense conjugated construction") {
  cop::CopulaSpec spec;
  spec.probs = {0.25, 0.65, 0.4, 0.85};
  spec.theta = -1.0;
  const auto pairing = cop::PairingScheme::ring(4);
  const double beta = 0.73;
  auto state = random_state(4, 91);
  auto reference = oracle::state_to_vector(state);
  cop::apply_copula_mixer(state, beta, spec, pairing);
  for (const auto& sublayer : pairing.sublayers) {
    for (const auto& [i, j] : sublayer) {
      const auto r = oracle::embed_two_qubit(4, i, j,
                                             cop::rcop_matrix(spec.probs[i], spec.probs[j]));
      oracle::Matrix r_dag(16, oracle::Vector(16));
      for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b) r_dag[a][b] = std::conj(r[b][a]);
      reference = oracle::apply(r_dag, reference);
      reference = oracle::apply(oracle::rz_matrix(4, i, 2.0 * beta), reference);
      reference = oracle::apply(oracle::rz_matrix(4, j, 2.0 * beta), reference);
      reference = oracle::apply(r, reference);
    }
  }
  CHECK(oracle::max_abs_diff(reference, oracle::state_to_vector(state)) < 1e-10);
}

TEST_CASE("cost layer is diagonal, additive, and value-driven") {
  const std::vector<double> values{2.0, 5.0, 1.0};
  auto state = random_state(3, 44);
  const auto before = state;
  cop::apply_cost_layer(state, 0.0, values);
  CHECK(oracle::max_abs_diff(oracle::state_to_vector(before), oracle::state_to_vector(state)) <
        1e-15);

  cop::apply_cost_layer(state, 0.31, values);
  CHECK(distribution_distance(before, state) < 1e-13);

  auto once = before;
  cop::apply_cost_layer(once, 0.5, values);
  auto twice = before;
  cop::apply_cost_layer(twice, 0.2, values);
  cop::apply_cost_layer(twice, 0.3, values);
  CHECK(oracle::max_abs_diff(oracle::state_to_vector(once), oracle::state_to_vector(twice)) <
        1e-12);

  CHECK_THROWS_AS(cop::apply_cost_layer(state, 0.1, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("depth-zero circuits reproduce the product warm start exactly") {
  const auto inst = knap::gen_inverse_strongly_correlated(8, 12);
  cop::CopulaSpec spec;
  spec.probs = knap::smoothed_probabilities(inst, 6.0);
  const auto pairing = cop::PairingScheme::ring(8);
  const auto state = cop::run_circuit(inst, spec, pairing, cop::QaoaParams{});
  const auto expected = sim::init_product_state(spec.probs);
  CHECK(oracle::max_abs_diff(oracle::state_to_vector(expected), oracle::state_to_vector(state)) ==
        0.0);
}

TEST_CASE("a hard warm start pins the depth-zero distribution to one bitstring") {
  knap::KnapsackInstance inst;
  inst.items = {{20, 10}, {45, 45}, {2.5, 5}};
  inst.capacity = 50;
  cop::CopulaSpec spec;
  spec.probs = {1.0, 0.0, 0.0};  // the k -> infinity limit away from the threshold
  const auto pairing = cop::PairingScheme::ring(3);
  cop::QaoaParams params;
  params.gammas = {0.4};
  params.betas = {0.0};  // mixer off: diagonal circuit keeps the basis state
  const auto state = cop::run_circuit(inst, spec, pairing, params);
  const auto dist = sim::distribution(state, 1e-12);
  REQUIRE(dist.size() == 1);
  CHECK(dist.begin()->first == "100");
}

TEST_CASE("circuits preserve the norm at depth") {
  const auto inst = knap::gen_inverse_strongly_correlated(12, 3);
  cop::CopulaSpec spec;
  spec.probs = knap::smoothed_probabilities(inst, 8.0);
  const auto pairing = cop::PairingScheme::ring(12);
  Rng rng(8);
  cop::QaoaParams params;
  for (int layer = 0; layer < 5; ++layer) {
    params.gammas.push_back(rng.uniform_real(0, 0.005));
    params.betas.push_back(rng.uniform_real(0, std::numbers::pi));
  }
  const auto state = cop::run_circuit(inst, spec, pairing, params);
  CHECK(std::abs(state.norm_squared() - 1.0) < 1e-10);
}

TEST_CASE("sampled objective masks infeasible bitstrings") {
  const auto inst = fixtures::classic3();
  sim::SampleSet all_bad;
  all_bad.counts["111"] = 10;
  all_bad.shots = 10;
  CHECK(cop::objective_from_samples(inst, all_bad) == 0.0);

  sim::SampleSet single;
  single.counts["110"] = 4;
  single.shots = 4;
  CHECK(cop::objective_from_samples(inst, single) == doctest::Approx(160.0));

  sim::SampleSet mixed;
  mixed.counts["110"] = 3;
  mixed.counts["111"] = 1;
  mixed.shots = 4;
  CHECK(cop::objective_from_samples(inst, mixed) == doctest::Approx(120.0));
}

TEST_CASE("instance table mirrors evaluate over all bitstrings") {
  const auto inst = fixtures::random_instance(10, 321, true);
  const auto table = cop::InstanceTable::build(inst);
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t idx = rng.uniform_int(0, (1u << 10) - 1);
    const auto bits = sim::StateVector::index_to_bitstring(idx, 10);
    const auto ev = knap::evaluate(inst, knap::Selection::from_string(bits));
    CHECK(table.value[idx] == doctest::Approx(ev.value).epsilon(1e-12));
    CHECK(static_cast<bool>(table.feasible[idx]) == ev.feasible);
  }
}

TEST_CASE("exact objective agrees with the sampled objective in the limit") {
  const auto inst = knap::gen_inverse_strongly_correlated(10, 9);
  cop::CopulaSpec spec;
  spec.probs = knap::smoothed_probabilities(inst, 8.0);
  const auto pairing = cop::PairingScheme::ring(10);
  cop::QaoaParams params;
  params.gammas = {0.002};
  params.betas = {0.4};
  const auto state = cop::run_circuit(inst, spec, pairing, params);
  const auto table = cop::InstanceTable::build(inst);
  const double exact = cop::objective_from_distribution(table, state);
  const double sampled =
      cop::objective_from_samples(inst, sim::sample(state, 200'000, 17));
  CHECK(sampled == doctest::Approx(exact).epsilon(0.02));
}

TEST_CASE("ring pairing two-colors even rings and drops the odd wrap edge") {
  const auto even = cop::PairingScheme::ring(6);
  REQUIRE(even.sublayers.size() == 2);
  CHECK(even.sublayers[0].size() == 3);
  CHECK(even.sublayers[1].size() == 3);
  even.validate(6);

  const auto odd = cop::PairingScheme::ring(5);
  std::size_t edges = 0;
  for (const auto& sub : odd.sublayers) edges += sub.size();
  CHECK(edges == 4);  // path, no wrap
  odd.validate(5);

  CHECK(cop::PairingScheme::ring(1).sublayers.empty());
  const auto two = cop::PairingScheme::ring(2);
  REQUIRE(two.sublayers.size() == 1);
  CHECK(two.sublayers[0].size() == 1);

  cop::PairingScheme bad;
  bad.sublayers = {{{0, 1}, {1, 2}}};
  CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);
}

TEST_CASE("circuit description lists init, cost, and mixer gates") {
  const auto inst = fixtures::classic3();
  cop::CopulaSpec spec;
  spec.probs = {0.2, 0.5, 0.7};
  const auto pairing = cop::PairingScheme::ring(3);
  cop::QaoaParams params;
  params.gammas = {0.1};
  params.betas = {0.2};
  const auto description = nlohmann::json::parse(cop::describe_circuit(inst, spec, pairing, params));
  REQUIRE(description.is_array());
  std::size_t pair_count = 0;
  for (const auto& sub : pairing.sublayers) pair_count += sub.size();
  CHECK(description.size() == 3 + 3 + 8 * pair_count);
  for (const auto& gate : description) {
    CHECK(gate.contains("gate"));
    CHECK(gate.contains("qubits"));
    CHECK(gate.contains("angle"));
  }
}
