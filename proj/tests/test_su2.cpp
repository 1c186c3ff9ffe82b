#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qet/su2.hpp"

using namespace qet;

namespace {

// Amplitude oracle: |<out|M|in>|^2 from the matrix form directly.
double transition_prob(const MatrixForm& m, const Eigen::Vector2cd& out,
                       const Eigen::Vector2cd& in) {
  return std::norm(out.dot(m * in));  // Eigen's dot conjugates the left side
}

const Eigen::Vector2cd kH{1.0, 0.0};
const Eigen::Vector2cd kD{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
const Eigen::Vector2cd kR{1.0 / std::sqrt(2.0),
                          std::complex<double>(0.0, 1.0 / std::sqrt(2.0))};

}  // namespace

TEST_CASE("normalize scales onto the unit sphere and fixes the gauge") {
  const auto u = normalize(2, 0, 0, 0);
  CHECK(u.a == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(u.b == 0.0);

  const auto ua = normalize(0.70, 0.21, 0.65, -0.20);
  const double norm = 0.99830;  // Euclidean norm of the raw quadruple
  CHECK(ua.a == doctest::Approx(0.70 / norm).epsilon(1e-4));
  CHECK(ua.d == doctest::Approx(-0.20 / norm).epsilon(1e-4));
  CHECK(ua.vec().norm() == doctest::Approx(1.0).epsilon(1e-12));

  const auto flipped = normalize(-1, 0, 0, 0);
  CHECK(flipped.a == 1.0);

  // a == 0: first nonzero of b, c, d made positive
  const auto zero_a = normalize(0, -3, 1, 2);
  CHECK(zero_a.b > 0.0);

  CHECK_THROWS_AS(normalize(0, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("probs_from_params implements the basis-survival formulas") {
  const auto id = probs_from_params({1, 0, 0, 0});
  CHECK(id.p_hv == 1.0);
  CHECK(id.p_da == 1.0);
  CHECK(id.p_rl == 1.0);

  const auto centre = probs_from_params({0.5, 0.5, 0.5, 0.5});
  CHECK(centre.p_hv == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(centre.p_da == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(centre.p_rl == doctest::Approx(0.5).epsilon(1e-15));

  // Raw printed entries, unnormalized on purpose: direct arithmetic check.
  const UnitaryParams raw{0.70, 0.21, 0.65, -0.20};
  const auto p = probs_from_params(raw);
  CHECK(p.p_hv == doctest::Approx(0.5341).epsilon(1e-12));
  CHECK(p.p_da == doctest::Approx(0.5300).epsilon(1e-12));
  CHECK(p.p_rl == doctest::Approx(0.9125).epsilon(1e-12));
}

TEST_CASE("cross_probs closed forms match the amplitude oracle") {
  const auto id = cross_probs_from_params({1, 0, 0, 0});
  CHECK(id.q_hd == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(id.q_hr == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(id.q_dr == doctest::Approx(0.5).epsilon(1e-15));

  const auto centre = cross_probs_from_params({0.5, 0.5, 0.5, 0.5});
  CHECK(centre.q_hd == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(centre.q_hr == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(centre.q_dr == doctest::Approx(0.0).epsilon(1e-15));

  RngStream rng(42);
  for (int i = 0; i < 10000; ++i) {
    const auto u = haar_sample(rng);
    const auto q = cross_probs_from_params(u);
    const auto m = to_matrix(u);
    CHECK(q.q_hd == doctest::Approx(transition_prob(m, kD, kH)).epsilon(1e-12));
    CHECK(q.q_hr == doctest::Approx(transition_prob(m, kR, kH)).epsilon(1e-12));
    CHECK(q.q_dr == doctest::Approx(transition_prob(m, kR, kD)).epsilon(1e-12));
  }
}

TEST_CASE("single-photon basis probabilities match the amplitude oracle") {
  const Eigen::Vector2cd kV{0.0, 1.0};
  RngStream rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto u = haar_sample(rng);
    const auto p = probs_from_params(u);
    const auto m = to_matrix(u);
    CHECK(p.p_hv == doctest::Approx(transition_prob(m, kH, kH)).epsilon(1e-12));
    CHECK(p.p_da == doctest::Approx(transition_prob(m, kD, kD)).epsilon(1e-12));
    CHECK(p.p_rl == doctest::Approx(transition_prob(m, kR, kR)).epsilon(1e-12));
  }
}

TEST_CASE("to_matrix / from_matrix round trip and printed matrices") {
  const auto id = to_matrix({1, 0, 0, 0});
  CHECK(std::abs(id(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(id(0, 1)) < 1e-15);

  MatrixForm ua;
  ua << std::complex<double>(0.70, 0.21), std::complex<double>(-0.65, -0.20),
      std::complex<double>(0.65, -0.20), std::complex<double>(0.70, -0.21);
  const auto pa = from_matrix(ua);
  const auto expect_a = normalize(0.70, 0.21, 0.65, -0.20);
  CHECK(process_infidelity(pa, expect_a) < 1e-15);

  MatrixForm ub;
  ub << std::complex<double>(0.29, 0.34), std::complex<double>(0.33, 0.83),
      std::complex<double>(-0.33, 0.83), std::complex<double>(0.29, -0.34);
  const auto pb = from_matrix(ub);
  const auto expect_b = normalize(0.29, 0.34, -0.33, 0.83);
  CHECK(process_infidelity(pb, expect_b) < 1e-15);

  MatrixForm bad;
  bad << std::complex<double>(1, 0), std::complex<double>(1, 0),
      std::complex<double>(0, 0), std::complex<double>(1, 0);
  CHECK_THROWS_AS(from_matrix(bad), std::invalid_argument);

  RngStream rng(3);
  for (int i = 0; i < 10000; ++i) {
    const auto u = haar_sample(rng);
    const auto back = from_matrix(to_matrix(u));
    CHECK((back.vec() - u.vec()).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("haar_sample is uniform on the sphere") {
  RngStream rng(2024);
  const int n = 1000000;
  double sum_a2 = 0.0;
  std::vector<double> p_hv(n);
  for (int i = 0; i < n; ++i) {
    const auto u = haar_sample(rng);
    CHECK(u.vec().norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u.a >= 0.0);
    sum_a2 += u.a * u.a;
    p_hv[i] = probs_from_params(u).p_hv;
  }
  CHECK(sum_a2 / n == doctest::Approx(0.25).epsilon(0.008));

  // p_HV of a Haar sample is uniform on [0,1]: Kolmogorov-Smirnov check.
  std::sort(p_hv.begin(), p_hv.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    ks = std::max(ks, std::abs(p_hv[i] - double(i + 1) / n));
    ks = std::max(ks, std::abs(p_hv[i] - double(i) / n));
  }
  CHECK(ks < 0.01);
}

TEST_CASE("process_infidelity closed form") {
  const UnitaryParams u{1, 0, 0, 0};
  CHECK(process_infidelity(u, u) == 0.0);
  CHECK(process_infidelity({1, 0, 0, 0}, {0, 1, 0, 0}) == 1.0);

  // Brute-force minimization over sampled single-photon states.
  RngStream rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    const auto a = haar_sample(rng);
    const auto b = haar_sample(rng);
    const Eigen::Matrix2cd rel = to_matrix(b).adjoint() * to_matrix(a);
    double min_f = 1.0;
    for (int i = 0; i < 100000; ++i) {
      const double t = std::acos(1.0 - 2.0 * rng.uniform()) / 2.0;
      const double phi = 2.0 * M_PI * rng.uniform();
      Eigen::Vector2cd psi(std::cos(t),
                           std::polar(std::sin(t), phi));
      min_f = std::min(min_f, std::norm(psi.dot(rel * psi)));
    }
    // The sampled minimum can only overshoot the true one, so the oracle
    // bounds the closed form from below.
    const double infid = process_infidelity(a, b);
    CHECK(1.0 - min_f <= infid + 1e-12);
    CHECK(1.0 - min_f >= infid - 1e-4);
  }
}

TEST_CASE("gauge invariance") {
  RngStream rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto u = haar_sample(rng);
    const UnitaryParams neg{-u.a, -u.b, -u.c, -u.d};
    const auto p1 = probs_from_params(u);
    const auto p2 = probs_from_params(neg);
    CHECK(p1.p_hv == p2.p_hv);
    CHECK(p1.p_da == p2.p_da);
    CHECK(p1.p_rl == p2.p_rl);
    const auto v = haar_sample(rng);
    CHECK(process_infidelity(u, v) ==
          doctest::Approx(process_infidelity(neg, v)).epsilon(1e-14));
    CHECK(process_infidelity(u, v) ==
          doctest::Approx(process_infidelity(v, u)).epsilon(1e-14));
  }
}

TEST_CASE("bloch coordinates") {
  const auto origin = bloch_coords({1, 0, 0, 0});
  CHECK(origin.x == 0.0);
  CHECK(origin.y == 0.0);
  CHECK(origin.z == 0.0);

  const auto ua = normalize(0.70, 0.21, 0.65, -0.20);
  const auto p = bloch_coords(ua);
  CHECK(p.x == doctest::Approx(0.2003).epsilon(2e-4));
  CHECK(p.y == doctest::Approx(0.6511).epsilon(2e-4));
  CHECK(p.z == doctest::Approx(-0.2104).epsilon(2e-4));

  RngStream rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto u = haar_sample(rng);
    const auto b = bloch_coords(u);
    const double r = std::sqrt(b.x * b.x + b.y * b.y + b.z * b.z);
    CHECK(r == doctest::Approx(std::sqrt(1.0 - u.a * u.a)).epsilon(1e-12));
    CHECK(r <= 1.0 + 1e-12);
  }
}
