#include "qet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace qet {

namespace {

// Run fn(i) for i in [0, count) across up to `threads` workers. Results
// must be written into pre-sized slots so the output is order-independent.
void parallel_for(long count, int threads, const std::function<void(long)>& fn) {
  const int workers = std::max(1, threads);
  if (workers == 1 || count < 2) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Fraction that makes plan_budget reserve exactly `coarse` photons out of
// `total` (the -0.5 keeps ceil() away from floating-point edges).
double exact_coarse_fraction(long coarse, long total) {
  if (coarse <= 0 || total <= 0) return 0.0;
  return (double(coarse) - 0.5) / double(total);
}

long log_uniform_long(long lo, long hi, RngStream& rng) {
  if (lo >= hi) return lo;
  const double x = std::exp(std::log(double(lo)) +
                            rng.uniform() * (std::log(double(hi)) - std::log(double(lo))));
  return std::clamp(static_cast<long>(std::llround(x)), lo, hi);
}

}  // namespace

AggregateStats summarize(const std::vector<double>& values,
                         const std::string& reference, SpreadKind spread) {
  if (values.empty()) {
    throw std::invalid_argument("summarize: empty sample");
  }
  AggregateStats stats;
  stats.count = static_cast<int>(values.size());
  stats.reference = reference;
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / values.size();
  if (spread == SpreadKind::SemiDeviation) {
    double lo2 = 0.0, hi2 = 0.0;
    int nlo = 0, nhi = 0;
    for (double v : values) {
      if (v < stats.mean) {
        lo2 += (stats.mean - v) * (stats.mean - v);
        ++nlo;
      } else if (v > stats.mean) {
        hi2 += (v - stats.mean) * (v - stats.mean);
        ++nhi;
      }
    }
    stats.lower = nlo > 0 ? std::sqrt(lo2 / nlo) : 0.0;
    stats.upper = nhi > 0 ? std::sqrt(hi2 / nhi) : 0.0;
  } else {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const auto quantile = [&](double q) {
      const double pos = q * (sorted.size() - 1);
      const std::size_t i = static_cast<std::size_t>(pos);
      const double frac = pos - i;
      return i + 1 < sorted.size()
                 ? sorted[i] * (1.0 - frac) + sorted[i + 1] * frac
                 : sorted.back();
    };
    stats.lower = std::max(0.0, stats.mean - quantile(0.16));
    stats.upper = std::max(0.0, quantile(0.84) - stats.mean);
  }
  return stats;
}

std::vector<TrialSummary> run_random_sweep(int count, const SweepConfig& cfg) {
  if (count < 1) {
    throw std::invalid_argument("run_random_sweep: count must be >= 1");
  }
  std::vector<TrialSummary> out(count);
  parallel_for(count, cfg.threads, [&](long i) {
    RngStream rng = RngStream::substream(cfg.seed, static_cast<std::uint64_t>(i));
    const UnitaryParams truth = haar_sample(rng);
    const long probes = log_uniform_long(cfg.probes_min, cfg.probes_max, rng);
    const long budget = probes * cfg.probe_n + cfg.coarse_photons;
    const double coarse_fraction = exact_coarse_fraction(cfg.coarse_photons, budget);
    const std::uint64_t trial_seed = mix64(cfg.seed ^ mix64(i + 1));
    const ExperimentRecord rec = run_protocol(truth, cfg.probe_n, budget,
                                              coarse_fraction, trial_seed,
                                              cfg.exact);
    const EstimationResult est = estimate_unitary(rec);
    TrialSummary& t = out[i];
    t.truth = truth;
    t.estimate = est.estimate;
    t.infidelity = process_infidelity(truth, est.estimate);
    t.budget = budget;
    t.probe_n = cfg.probe_n;
    t.seed = trial_seed;
    t.truth_xyz = bloch_coords(truth);
    t.estimate_xyz = bloch_coords(est.estimate);
    t.ambiguous = est.ambiguous;
  });
  return out;
}

std::vector<ComparisonTrials> run_budget_comparison_trials(
    const UnitaryParams& truth, const std::vector<long>& budgets, int trials,
    const ComparisonConfig& cfg) {
  if (trials < 2) {
    throw std::invalid_argument("run_budget_comparison: need trials >= 2");
  }
  std::vector<ComparisonTrials> out;
  for (long budget : budgets) {
    // Supplementary QPT overhead, the same for every probe type at this
    // budget so the comparison of the quoted probe photons stays fair.
    const long coarse = std::max<long>(
        cfg.coarse_photons_min,
        static_cast<long>(std::ceil(cfg.coarse_fraction * budget)));
    const long total = budget + coarse;
    for (std::size_t arm = 0; arm < cfg.probe_ns.size(); ++arm) {
      const int probe_n = cfg.probe_ns[arm];
      ComparisonTrials block;
      block.budget = budget;
      block.probe_n = probe_n;
      block.trials.resize(trials);
      std::vector<ExperimentRecord> records(trials);
      parallel_for(trials, cfg.threads, [&](long i) {
        // Paired seeds: the same trial substream across arms/budgets, so
        // method-vs-method deltas use common random numbers.
        const std::uint64_t stream_index =
            cfg.paired_seeds
                ? static_cast<std::uint64_t>(i)
                : mix64((budget << 8) + arm) + static_cast<std::uint64_t>(i);
        const std::uint64_t trial_seed = mix64(cfg.seed ^ mix64(stream_index + 1));
        const ExperimentRecord rec =
            run_protocol(truth, probe_n, total,
                         exact_coarse_fraction(coarse, total), trial_seed,
                         cfg.exact);
        records[i] = rec;
        const EstimationResult est = estimate_unitary(rec);
        TrialSummary& t = block.trials[i];
        t.truth = truth;
        t.estimate = est.estimate;
        t.infidelity = process_infidelity(truth, est.estimate);
        t.budget = budget;
        t.probe_n = probe_n;
        t.seed = trial_seed;
        t.truth_xyz = bloch_coords(truth);
        t.estimate_xyz = bloch_coords(est.estimate);
        t.ambiguous = est.ambiguous;
      });
      block.central = central_estimate(records);
      block.infidelity_vs_central.reserve(trials);
      for (const auto& t : block.trials) {
        block.infidelity_vs_central.push_back(
            process_infidelity(block.central, t.estimate));
      }
      out.push_back(std::move(block));
    }
  }
  return out;
}

std::vector<ComparisonRow> run_budget_comparison(const UnitaryParams& truth,
                                                 const std::vector<long>& budgets,
                                                 int trials,
                                                 const ComparisonConfig& cfg) {
  std::vector<ComparisonRow> rows;
  for (const auto& block : run_budget_comparison_trials(truth, budgets, trials, cfg)) {
    ComparisonRow row;
    row.budget = block.budget;
    row.probe_n = block.probe_n;
    std::vector<double> vs_truth;
    vs_truth.reserve(block.trials.size());
    for (const auto& t : block.trials) vs_truth.push_back(t.infidelity);
    row.vs_truth = summarize(vs_truth, "truth", cfg.spread);
    row.vs_central = summarize(block.infidelity_vs_central, "central", cfg.spread);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ComparisonRow> run_scaling_curve(const UnitaryParams& truth,
                                             long max_photons, int points,
                                             int trials,
                                             const ComparisonConfig& cfg) {
  if (points < 1 || max_photons < 1) {
    throw std::invalid_argument("run_scaling_curve: bad sweep shape");
  }
  // Log-spaced budgets ending at max_photons; the smallest point is kept
  // large enough to fund one probe per basis for every probe type.
  long min_budget = 300;
  for (int n : cfg.probe_ns) min_budget = std::max(min_budget, 100L + 3L * n);
  std::vector<long> budgets;
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 1.0 : double(i) / (points - 1);
    const double b = std::exp(std::log(double(min_budget)) +
                              f * (std::log(double(max_photons)) -
                                   std::log(double(min_budget))));
    budgets.push_back(static_cast<long>(std::llround(b)));
  }
  budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
  return run_budget_comparison(truth, budgets, trials, cfg);
}

}  // namespace qet
