#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qet/experiments.hpp"
#include "qet/io.hpp"

using namespace qet;

TEST_CASE("summarize") {
  const auto flat = summarize({0.2, 0.2, 0.2}, "truth");
  CHECK(flat.mean == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(flat.lower < 1e-12);
  CHECK(flat.upper < 1e-12);

  const auto skewed = summarize({0.0, 0.0, 1.0}, "truth");
  CHECK(skewed.mean == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(skewed.lower == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(skewed.upper == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const auto sym = summarize({1.0, 2.0, 3.0}, "truth");
  CHECK(sym.lower == doctest::Approx(sym.upper).epsilon(1e-12));

  CHECK_THROWS_AS(static_cast<void>(summarize({}, "truth")),
                  std::invalid_argument);
}

TEST_CASE("random sweep in exact mode recovers every truth") {
  SweepConfig cfg;
  cfg.exact = true;
  cfg.seed = 404;
  const auto trials = run_random_sweep(5, cfg);
  for (const auto& t : trials) {
    CHECK(t.infidelity < 1e-9);
    CHECK(t.budget == 1400);  // 200 four-photon probes + 600 coarse photons
  }
}

TEST_CASE("random sweep determinism and thread independence") {
  SweepConfig cfg;
  cfg.seed = 2718;
  cfg.threads = 1;
  const auto a = run_random_sweep(12, cfg);
  cfg.threads = 4;
  const auto b = run_random_sweep(12, cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(json(a[i]) == json(b[i]));
  }
}

TEST_CASE("budget comparison and scaling curve") {
  const auto truth = normalize(0.70, 0.21, 0.65, -0.20);
  ComparisonConfig cfg;
  cfg.seed = 99;
  cfg.threads = 4;

  const auto rows = run_budget_comparison(truth, {1800}, 40, cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].probe_n == 1);
  CHECK(rows[1].probe_n == 4);
  CHECK(rows[0].vs_truth.mean > 0.0);
  CHECK(rows[0].vs_central.reference == "central");

  // single budget point of the scaling sweep reduces to a comparison run
  const auto curve = run_scaling_curve(truth, 1800, 1, 40, cfg);
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].budget == 1800);
  CHECK(curve[0].vs_truth.mean == doctest::Approx(rows[0].vs_truth.mean));

  CHECK_THROWS_AS(
      static_cast<void>(run_budget_comparison(truth, {1800}, 0, cfg)),
      std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(run_scaling_curve(truth, 1800, 0, 10, cfg)),
                  std::invalid_argument);
}

TEST_CASE("mean infidelity decreases with budget (paired seeds)") {
  const auto truth = normalize(0.29, 0.34, -0.33, 0.83);
  ComparisonConfig cfg;
  cfg.seed = 7;
  cfg.threads = 4;
  cfg.probe_ns = {4};
  const auto rows = run_budget_comparison(truth, {900, 3600, 14400}, 120, cfg);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].vs_truth.mean > rows[1].vs_truth.mean);
  CHECK(rows[1].vs_truth.mean > rows[2].vs_truth.mean);
}

TEST_CASE("scaling curve slope is close to 1/budget") {
  const auto truth = normalize(0.70, 0.21, 0.65, -0.20);
  ComparisonConfig cfg;
  cfg.seed = 1234;
  cfg.threads = 4;
  cfg.probe_ns = {4};
  const std::vector<long> budgets{3600, 10184, 28800, 81448, 230400};
  const auto rows = run_budget_comparison(truth, budgets, 150, cfg);
  // least-squares slope of log(mean infidelity) vs log(budget)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(double(r.budget));
    const double y = std::log(r.vs_truth.mean);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = rows.size();
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.25));
}
