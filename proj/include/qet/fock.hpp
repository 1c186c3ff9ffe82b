#pragma once

#include <vector>

#include "qet/su2.hpp"

namespace qet {

/// Measurement setting: probe and analysis share the basis.
enum class Basis { HV, DA, RL };

/// Pick the basis-survival probability relevant to a measurement setting.
inline double basis_probability(const ProbabilityTriple& t, Basis basis) {
  switch (basis) {
    case Basis::HV: return t.p_hv;
    case Basis::DA: return t.p_da;
    default: return t.p_rl;
  }
}

/// Probe state |M, N-M> in the given basis. Balanced probes (M = N/2)
/// require N even.
struct ProbeSpec {
  int n = 1;  ///< total photon count, >= 1
  int m = 1;  ///< photons in the first mode, 0 <= m <= n
  Basis basis = Basis::HV;
};

void validate_probe(const ProbeSpec& probe);

/// Exact probabilities over the N+1 photon-count outcomes (n_H, N-n_H).
struct OutcomeDistribution {
  int n = 0;
  std::vector<double> prob;  ///< indexed by n_H, size n+1

  double total() const;
};

/// Associated Legendre polynomial, Condon-Shortley convention, with the
/// negative-order extension. Stable for degree <= 50.
double assoc_legendre(int degree, int order, double x);

/// Outcome probability for the balanced probe |N/2, N/2>:
/// (n_V!/n_H!) * L_{N/2}^{(n_H-n_V)/2}(2p-1)^2.
double balanced_outcome_prob(int n, int n_h, double p);

/// The five-outcome N=4 distribution in closed polynomial form.
OutcomeDistribution table1_distribution(double p);

/// Wigner (small) d-matrix element d^j_{mp,m}(beta) for doubled-integer
/// arguments, by the factorial sum with log-factorial accumulation.
double wigner_d(int two_j, int two_mp, int two_m, double beta);

/// Outcome probability for the general probe |M, N-M>:
/// [d^{N/2}_{(n_H-n_V)/2, M-N/2}(2 arccos sqrt(p))]^2.
double wigner_d_outcome_prob(int n, int m, int n_h, double p);

/// Dense distribution over n_H = 0..N via wigner_d_outcome_prob.
OutcomeDistribution outcome_distribution(int n, int m, double p);

/// Independent oracle: binomial expansion of the transformed
/// creation-operator monomial with bosonic normalization. N <= 16.
OutcomeDistribution brute_force_distribution(int n, int m, double p);

/// Fisher information about p carried by the outcome distribution,
/// sum_k (dP_k/dp)^2 / P_k with central differences. p in (0,1).
double fisher_information(int n, int m, double p);

}  // namespace qet
