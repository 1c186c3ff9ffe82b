#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qet/estimator.hpp"

namespace qet {

struct TrialSummary {
  UnitaryParams truth;
  UnitaryParams estimate;
  double infidelity = 0.0;
  long budget = 0;
  int probe_n = 0;
  std::uint64_t seed = 0;
  BlochPoint truth_xyz;
  BlochPoint estimate_xyz;
  bool ambiguous = false;
};

/// Mean with asymmetric spread: lower/upper semi-deviations are the RMS of
/// the deviations below/above the mean (a 16th/84th percentile variant is
/// available behind the config switch).
struct AggregateStats {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  int count = 0;
  std::string reference;  ///< "truth" or "central"
};

enum class SpreadKind { SemiDeviation, Percentile };

AggregateStats summarize(const std::vector<double>& values,
                         const std::string& reference,
                         SpreadKind spread = SpreadKind::SemiDeviation);

struct SweepConfig {
  int probe_n = 4;
  long probes_min = 200;  ///< probes per unitary; log-uniform when min < max
  long probes_max = 200;
  /// Supplementary single-photon QPT photons per trial, spent on top of the
  /// probe photons. The discrete fold/sign decisions must essentially never
  /// fail, which sets the size of this overhead.
  long coarse_photons = 600;
  bool exact = false;  ///< pseudo-count (noiseless) mode
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Haar-random truths, one experiment each; records infidelity vs truth and
/// Bloch coordinates of both truth and estimate.
std::vector<TrialSummary> run_random_sweep(int count, const SweepConfig& cfg);

struct ComparisonRow {
  long budget = 0;
  int probe_n = 0;
  AggregateStats vs_truth;
  AggregateStats vs_central;
};

struct ComparisonConfig {
  std::vector<int> probe_ns = {1, 4};
  /// Supplementary QPT photons per trial: max(coarse_photons_min,
  /// ceil(coarse_fraction * budget)), identical for both probe types and
  /// spent on top of the quoted probe budget.
  double coarse_fraction = 0.1;
  long coarse_photons_min = 600;
  bool paired_seeds = true;  ///< same substream per trial index across arms
  bool exact = false;
  std::uint64_t seed = 0;
  int threads = 1;
  SpreadKind spread = SpreadKind::SemiDeviation;
};

/// Fixed-truth budget sweep; per (budget x probe N) aggregates infidelity
/// both against the truth and against the pooled central estimate.
std::vector<ComparisonRow> run_budget_comparison(const UnitaryParams& truth,
                                                 const std::vector<long>& budgets,
                                                 int trials,
                                                 const ComparisonConfig& cfg);

/// Log-spaced budgets up to max_photons for each probe N; plot-ready
/// aggregate table.
std::vector<ComparisonRow> run_scaling_curve(const UnitaryParams& truth,
                                             long max_photons, int points,
                                             int trials,
                                             const ComparisonConfig& cfg);

/// Per-trial infidelities behind a ComparisonRow, for CSV export.
struct ComparisonTrials {
  long budget = 0;
  int probe_n = 0;
  std::vector<TrialSummary> trials;
  UnitaryParams central;
  std::vector<double> infidelity_vs_central;
};

std::vector<ComparisonTrials> run_budget_comparison_trials(
    const UnitaryParams& truth, const std::vector<long>& budgets, int trials,
    const ComparisonConfig& cfg);

}  // namespace qet
