#include "qet/sim.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qet {

namespace {

long sample_categorical(const std::vector<double>& probs, RngStream& rng) {
  const double u = rng.uniform();
  double cdf = 0.0;
  for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
    cdf += probs[k];
    if (u < cdf) return static_cast<long>(k);
  }
  return static_cast<long>(probs.size()) - 1;
}

}  // namespace

double CountsRecord::total() const {
  return std::accumulate(tallies.begin(), tallies.end(), 0.0);
}

CountsRecord simulate_counts(const UnitaryParams& truth, const ProbeSpec& probe,
                             long shots, RngStream& rng) {
  validate_probe(probe);
  if (shots < 0) {
    throw std::invalid_argument("simulate_counts: negative shots");
  }
  const double p = basis_probability(probs_from_params(truth), probe.basis);
  const auto dist = outcome_distribution(probe.n, probe.m, p);
  CountsRecord rec;
  rec.basis = probe.basis;
  rec.probe = probe;
  rec.tallies.assign(probe.n + 1, 0.0);
  rec.shots = static_cast<double>(shots);
  for (long s = 0; s < shots; ++s) {
    rec.tallies[sample_categorical(dist.prob, rng)] += 1.0;
  }
  return rec;
}

CountsRecord exact_counts(const UnitaryParams& truth, const ProbeSpec& probe,
                          double shots) {
  validate_probe(probe);
  const double p = basis_probability(probs_from_params(truth), probe.basis);
  const auto dist = outcome_distribution(probe.n, probe.m, p);
  CountsRecord rec;
  rec.basis = probe.basis;
  rec.probe = probe;
  rec.shots = shots;
  rec.tallies.resize(probe.n + 1);
  for (int k = 0; k <= probe.n; ++k) rec.tallies[k] = shots * dist.prob[k];
  return rec;
}

double pair_probability(const UnitaryParams& u, CrossPair pair) {
  using C = std::complex<double>;
  static const Eigen::Vector2cd kets[3] = {
      {C(1, 0), C(0, 0)},                              // H
      {C(1.0 / std::sqrt(2.0), 0), C(1.0 / std::sqrt(2.0), 0)},  // D
      {C(1.0 / std::sqrt(2.0), 0), C(0, 1.0 / std::sqrt(2.0))},  // R
  };
  const int idx = static_cast<int>(pair);
  const Eigen::Vector2cd& in = kets[idx / 3];
  const Eigen::Vector2cd& out = kets[idx % 3];
  return std::norm(out.dot(to_matrix(u) * in));
}

std::vector<CoarseRecord> simulate_cross_basis(const UnitaryParams& truth,
                                               long shots, RngStream& rng) {
  if (shots < 1) {
    throw std::invalid_argument("simulate_cross_basis: need shots >= 1");
  }
  std::vector<CoarseRecord> out;
  for (int i = 0; i < 9; ++i) {
    const long n = shots / 9 + (i < shots % 9 ? 1 : 0);
    CoarseRecord rec;
    rec.pair = kAllCrossPairs[i];
    rec.shots = static_cast<double>(n);
    const double q = pair_probability(truth, rec.pair);
    for (long s = 0; s < n; ++s) {
      if (rng.uniform() < q) rec.successes += 1.0;
    }
    out.push_back(rec);
  }
  return out;
}

std::vector<CoarseRecord> exact_cross_basis(const UnitaryParams& truth,
                                            double shots) {
  const double per = shots / 9.0;
  std::vector<CoarseRecord> out;
  for (const CrossPair pair : kAllCrossPairs) {
    out.push_back({pair, per * pair_probability(truth, pair), per});
  }
  return out;
}

BudgetPlan plan_budget(long budget_photons, int probe_n, double coarse_fraction) {
  if (probe_n < 1) {
    throw std::invalid_argument("plan_budget: probe_n must be >= 1");
  }
  if (coarse_fraction < 0.0 || coarse_fraction >= 1.0) {
    throw std::invalid_argument("plan_budget: coarse_fraction outside [0,1)");
  }
  BudgetPlan plan;
  plan.coarse_photons =
      static_cast<long>(std::ceil(coarse_fraction * budget_photons));
  const long remaining = budget_photons - plan.coarse_photons;
  const long total_probes = remaining / probe_n;
  if (total_probes < 3) {
    const long minimum = plan.coarse_photons + 3L * probe_n;
    throw std::invalid_argument(
        "plan_budget: budget too small; need at least " +
        std::to_string(minimum) + " photons for one probe per basis");
  }
  const long base = total_probes / 3;
  const long extra = total_probes % 3;
  for (int i = 0; i < 3; ++i) {
    // Extras go to the later bases: e.g. 200 probes split as 66/67/67.
    plan.probes_per_basis[i] = base + (i >= 3 - extra ? 1 : 0);
  }
  plan.consumed_photons = plan.coarse_photons + total_probes * probe_n;
  return plan;
}

ExperimentRecord run_protocol(const UnitaryParams& truth, int probe_n,
                              long budget_photons, double coarse_fraction,
                              std::uint64_t seed, bool exact) {
  const BudgetPlan plan = plan_budget(budget_photons, probe_n, coarse_fraction);
  const int m = probe_n % 2 == 0 ? probe_n / 2 : probe_n;  // balanced when even
  const Basis bases[3] = {Basis::HV, Basis::DA, Basis::RL};
  ExperimentRecord rec;
  rec.seed = seed;
  rec.truth = truth;
  for (int i = 0; i < 3; ++i) {
    const ProbeSpec probe{probe_n, m, bases[i]};
    const long shots = plan.probes_per_basis[i];
    if (exact) {
      rec.main.push_back(exact_counts(truth, probe, double(shots)));
    } else {
      RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(i));
      rec.main.push_back(simulate_counts(truth, probe, shots, rng));
      rec.main.back().seed = seed;
    }
  }
  if (plan.coarse_photons > 0) {
    if (exact) {
      rec.coarse = exact_cross_basis(truth, double(plan.coarse_photons));
    } else {
      RngStream rng = RngStream::substream(seed, 3);
      rec.coarse = simulate_cross_basis(truth, plan.coarse_photons, rng);
    }
  }
  rec.total_photons = static_cast<double>(plan.consumed_photons);
  return rec;
}

}  // namespace qet
