#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qet/io.hpp"
#include "qet/sim.hpp"

using namespace qet;

TEST_CASE("simulate_counts basics") {
  const UnitaryParams identity{1, 0, 0, 0};
  RngStream rng(1);
  const auto rec = simulate_counts(identity, {4, 2, Basis::HV}, 1000, rng);
  CHECK(rec.tallies[2] == 1000.0);  // p_HV = 1 puts all mass on (2,2)
  CHECK(rec.total() == rec.shots);

  RngStream rng2(1);
  const auto empty = simulate_counts(identity, {4, 2, Basis::HV}, 0, rng2);
  CHECK(empty.total() == 0.0);
}

TEST_CASE("zero-probability outcomes stay (almost) empty") {
  // p_HV = 1/2: outcomes (1,3) and (3,1) have exactly zero probability
  const auto truth = normalize(0.5, 0.5, 0.5, 0.5);
  RngStream rng(77);
  const auto rec = simulate_counts(truth, {4, 2, Basis::HV}, 100000, rng);
  CHECK(rec.tallies[1] / rec.shots < 0.003);
  CHECK(rec.tallies[3] / rec.shots < 0.003);
}

TEST_CASE("empirical frequencies converge to the exact distribution") {
  const auto truth = normalize(0.8, 0.4, 0.3, 0.33);
  const double p = probs_from_params(truth).p_hv;
  const auto exact = outcome_distribution(4, 2, p);
  RngStream rng(5);
  const auto rec = simulate_counts(truth, {4, 2, Basis::HV}, 1000000, rng);
  for (int k = 0; k <= 4; ++k) {
    CHECK(std::abs(rec.tallies[k] / rec.shots - exact.prob[k]) < 5e-3);
  }
}

TEST_CASE("determinism: same seed, same record") {
  const auto truth = normalize(0.6, 0.2, -0.5, 0.4);
  RngStream a(99), b(99);
  const auto r1 = simulate_counts(truth, {4, 2, Basis::DA}, 5000, a);
  const auto r2 = simulate_counts(truth, {4, 2, Basis::DA}, 5000, b);
  CHECK(r1.tallies == r2.tallies);

  const auto e1 = run_protocol(truth, 4, 1800, 0.1, 4242);
  const auto e2 = run_protocol(truth, 4, 1800, 0.1, 4242);
  CHECK(json(e1) == json(e2));
}

TEST_CASE("pair probabilities match the closed forms") {
  RngStream rng(77);
  for (int i = 0; i < 200; ++i) {
    const auto u = haar_sample(rng);
    const auto p = probs_from_params(u);
    const auto q = cross_probs_from_params(u);
    CHECK(pair_probability(u, CrossPair::HH) == doctest::Approx(p.p_hv).epsilon(1e-12));
    CHECK(pair_probability(u, CrossPair::DD) == doctest::Approx(p.p_da).epsilon(1e-12));
    CHECK(pair_probability(u, CrossPair::RR) == doctest::Approx(p.p_rl).epsilon(1e-12));
    CHECK(pair_probability(u, CrossPair::HD) == doctest::Approx(q.q_hd).epsilon(1e-12));
    CHECK(pair_probability(u, CrossPair::HR) == doctest::Approx(q.q_hr).epsilon(1e-12));
    CHECK(pair_probability(u, CrossPair::DR) == doctest::Approx(q.q_dr).epsilon(1e-12));
  }
}

TEST_CASE("cross-basis records") {
  const UnitaryParams identity{1, 0, 0, 0};
  RngStream rng(10);
  const auto recs = simulate_cross_basis(identity, 90000, rng);
  REQUIRE(recs.size() == 9);
  for (const auto& r : recs) {
    CHECK(r.shots == 10000.0);
    const bool same = static_cast<int>(r.pair) % 4 == 0;  // HH, DD, RR
    const double expect = same ? 1.0 : 0.5;
    CHECK(r.successes / r.shots == doctest::Approx(expect).epsilon(0.05));
  }

  const auto centre = normalize(0.5, 0.5, 0.5, 0.5);
  RngStream rng2(11);
  const auto c = simulate_cross_basis(centre, 90000, rng2);
  CHECK(c[1].pair == CrossPair::HD);
  CHECK(c[1].successes / c[1].shots == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c[5].pair == CrossPair::DR);
  CHECK(c[5].successes / c[5].shots == doctest::Approx(0.0).epsilon(1e-12));

  RngStream rng3(12);
  const auto tiny = simulate_cross_basis(identity, 9, rng3);
  for (const auto& r : tiny) CHECK(r.shots == 1.0);

  RngStream rng4(13);
  CHECK_THROWS_AS(simulate_cross_basis(identity, 0, rng4), std::invalid_argument);
}

TEST_CASE("budget planning") {
  const auto even = plan_budget(1800, 4, 0.0);
  CHECK(even.coarse_photons == 0);
  CHECK(even.probes_per_basis == std::array<long, 3>{150, 150, 150});
  CHECK(even.consumed_photons == 1800);

  const auto singles = plan_budget(1800, 1, 0.0);
  CHECK(singles.probes_per_basis == std::array<long, 3>{600, 600, 600});

  const auto uneven = plan_budget(800, 4, 0.0);
  CHECK(uneven.probes_per_basis == std::array<long, 3>{66, 67, 67});
  CHECK(uneven.consumed_photons == 800);

  const auto coarse = plan_budget(1800, 4, 0.1);
  CHECK(coarse.coarse_photons == 180);
  CHECK(coarse.consumed_photons <= 1800);
  CHECK(coarse.consumed_photons > 1800 - 12);

  CHECK_THROWS_WITH_AS(static_cast<void>(plan_budget(10, 4, 0.0)),
                       doctest::Contains("at least"), std::invalid_argument);
}

TEST_CASE("run_protocol accounting and exact mode") {
  const auto truth = normalize(0.29, 0.34, -0.33, 0.83);
  const auto rec = run_protocol(truth, 4, 1800, 0.1, 7);
  REQUIRE(rec.main.size() == 3);
  CHECK(rec.main[0].basis == Basis::HV);
  CHECK(rec.main[1].basis == Basis::DA);
  CHECK(rec.main[2].basis == Basis::RL);
  double photons = 0.0;
  for (const auto& r : rec.main) photons += r.shots * r.probe.n;
  for (const auto& r : rec.coarse) photons += r.shots;
  CHECK(photons == rec.total_photons);
  CHECK(photons <= 1800.0);

  const auto exact = run_protocol(truth, 4, 1800, 0.1, 7, /*exact=*/true);
  const auto probs = probs_from_params(truth);
  const auto d = outcome_distribution(4, 2, probs.p_hv);
  for (int k = 0; k <= 4; ++k) {
    CHECK(exact.main[0].tallies[k] ==
          doctest::Approx(exact.main[0].shots * d.prob[k]).epsilon(1e-12));
  }
}

TEST_CASE("experiment record JSON round trip") {
  const auto truth = normalize(0.6, -0.2, 0.5, 0.4);
  const auto rec = run_protocol(truth, 4, 1200, 0.1, 321);
  const json j = rec;
  const auto back = j.get<ExperimentRecord>();
  CHECK(json(back) == j);
  CHECK(back.truth.has_value());
  CHECK(process_infidelity(*back.truth, truth) < 1e-15);
}
