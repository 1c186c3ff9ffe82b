#pragma once

#include <Eigen/Core>
#include <vector>

#include "qet/errors.hpp"
#include "qet/sim.hpp"

namespace qet {

/// Folded per-basis estimate: the balanced-probe likelihood is symmetric
/// under p <-> 1-p, so the MLE is reported on [0, 0.5].
struct PEstimate {
  Basis basis = Basis::HV;
  double p_folded = 0.0;
  double log_likelihood = 0.0;
  double shots = 0.0;
};

/// One scored reconstruction candidate (an unfold/sign assignment).
struct CandidateScore {
  UnitaryParams params;
  double log_likelihood = 0.0;
  int unfold_mask = 0;  ///< bit per basis: 1 means p -> 1-p
  int sign_mask = 0;    ///< bits for sign flips of (b, c, d)
};

struct EstimationResult {
  UnitaryParams estimate;
  ProbabilityTriple probs;  ///< disambiguated, inside the physical region
  int candidates_considered = 0;
  double disambiguation_loglik = 0.0;
  bool projected = false;  ///< linear-inversion input had to be projected
  bool ambiguous = false;  ///< tie between distinct candidates, or a
                           ///< vanishing amplitude with undetermined sign
  std::vector<CandidateScore> candidate_table;
};

/// Maximize the multinomial log-likelihood over p in [0, 0.5]: 1001-point
/// grid scan then golden-section refinement to 1e-9, ties toward smaller p.
PEstimate mle_p(const CountsRecord& record);

/// Methods-matrix inversion of the probability triple into squared
/// amplitudes (a^2, b^2, c^2, d^2). May return negatives for unphysical
/// triples; projection upstream keeps them above -1e-9.
Eigen::Vector4d linear_inversion(const ProbabilityTriple& probs);

/// True iff the triple lies in the tetrahedron p_DA+p_RL+p_HV >= 1 and the
/// three "<= 1" inequalities, inclusive within 1e-12.
bool in_physical_region(const ProbabilityTriple& probs);

/// Euclidean closest point of the tetrahedron with vertices
/// (1,0,0), (0,1,0), (0,0,1), (1,1,1). Idempotent.
ProbabilityTriple project_to_physical_region(const ProbabilityTriple& probs);

/// Binomial log-likelihood of the coarse records under the candidate's
/// cross-basis probabilities.
double coarse_log_likelihood(const UnitaryParams& u,
                             const std::vector<CoarseRecord>& coarse);

/// Resolve the signs of (b, c, d) (a = +sqrt(a^2)) by likelihood scoring
/// of the 8 candidates against the coarse records. Throws AmbiguityError
/// when the best-scoring set contains physically distinct candidates.
UnitaryParams disambiguate(const Eigen::Vector4d& squared_amps,
                           const std::vector<CoarseRecord>& coarse);

/// Full pipeline: per-basis MLE, 2^3 unfoldings x 2^3 sign assignments,
/// projection + inversion per unfolding, coarse-likelihood scoring.
EstimationResult estimate_unitary(const ExperimentRecord& exp);

/// Pool tallies of compatible experiments per basis and re-estimate.
UnitaryParams central_estimate(const std::vector<ExperimentRecord>& exps);

}  // namespace qet
