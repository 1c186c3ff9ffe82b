#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qet/fock.hpp"
#include "qet/rng.hpp"
#include "qet/su2.hpp"

namespace qet {

/// Measurement tallies for one probe/basis setting. Counts are stored as
/// doubles so the exact pseudo-count mode (tally = shots * probability)
/// shares the code path with sampled integer tallies.
struct CountsRecord {
  Basis basis = Basis::HV;
  ProbeSpec probe;
  std::vector<double> tallies;  ///< indexed by n_H, size probe.n + 1
  double shots = 0.0;
  std::uint64_t seed = 0;

  double total() const;
};

/// Single-photon preparation/analysis pair used for disambiguation. The
/// first letter names the prepared state (the + eigenstate of that basis),
/// the second the analysis basis. All nine ordered pairs are needed: the
/// three counting bases alone leave conjugate processes indistinguishable.
enum class CrossPair { HH, HD, HR, DH, DD, DR, RH, RD, RR };

inline constexpr CrossPair kAllCrossPairs[9] = {
    CrossPair::HH, CrossPair::HD, CrossPair::HR,
    CrossPair::DH, CrossPair::DD, CrossPair::DR,
    CrossPair::RH, CrossPair::RD, CrossPair::RR};

struct CoarseRecord {
  CrossPair pair = CrossPair::HD;
  double successes = 0.0;
  double shots = 0.0;
};

/// Probability that the prepared + eigenstate is transmitted to the +
/// output port of the analysis basis.
double pair_probability(const UnitaryParams& u, CrossPair pair);

/// One full experiment: a main record per basis plus optional coarse
/// cross-basis records.
struct ExperimentRecord {
  std::vector<CountsRecord> main;  ///< one per basis, bases distinct
  std::vector<CoarseRecord> coarse;
  double total_photons = 0.0;
  std::optional<UnitaryParams> truth;
  std::uint64_t seed = 0;
};

/// Sample `shots` outcomes of the probe through `truth` (inverse-CDF over
/// the dense outcome list). Deterministic given the stream state.
CountsRecord simulate_counts(const UnitaryParams& truth, const ProbeSpec& probe,
                             long shots, RngStream& rng);

/// Exact pseudo-count record: tallies = shots * probability.
CountsRecord exact_counts(const UnitaryParams& truth, const ProbeSpec& probe,
                          double shots);

/// Nine binomial preparation/analysis records; shots split evenly across
/// the pairs, remainder going to the earlier ones.
std::vector<CoarseRecord> simulate_cross_basis(const UnitaryParams& truth,
                                               long shots, RngStream& rng);

std::vector<CoarseRecord> exact_cross_basis(const UnitaryParams& truth,
                                            double shots);

/// Photon-budget split for one experiment.
struct BudgetPlan {
  long coarse_photons = 0;
  std::array<long, 3> probes_per_basis = {0, 0, 0};  ///< HV, DA, RL
  long consumed_photons = 0;
};

/// Reserve ceil(coarse_fraction * budget) photons for coarse single-photon
/// records, then split the remainder into N-photon probes,
/// extras going to the later bases. Throws std::invalid_argument when the
/// budget cannot fund one probe per basis.
BudgetPlan plan_budget(long budget_photons, int probe_n, double coarse_fraction);

/// Run one full experiment against `truth`. Substreams are derived from
/// `seed` per record, so repeated calls are bit-identical. `exact` replaces
/// sampling by pseudo-counts.
ExperimentRecord run_protocol(const UnitaryParams& truth, int probe_n,
                              long budget_photons, double coarse_fraction,
                              std::uint64_t seed, bool exact = false);

}  // namespace qet
