#pragma once

#include <Eigen/Core>
#include <Eigen/Dense>

#include "qet/rng.hpp"

namespace qet {

/// Quaternion-like parametrization (a, b, c, d) of a two-mode unitary:
/// transmission amplitude a+ib, reflection amplitude c+id, with
/// a^2 + b^2 + c^2 + d^2 = 1. Gauge: a >= 0 (global sign is unphysical);
/// at a == 0 the first nonzero of b, c, d is made positive.
struct UnitaryParams {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  Eigen::Vector4d vec() const { return {a, b, c, d}; }
};

/// 2x2 special-unitary matrix form [[a+ib, -c+id], [c+id, a-ib]].
using MatrixForm = Eigen::Matrix2cd;

/// Basis-survival probabilities of the three mutually unbiased
/// measurement settings.
struct ProbabilityTriple {
  double p_hv = 1.0;
  double p_da = 1.0;
  double p_rl = 1.0;

  Eigen::Vector3d vec() const { return {p_hv, p_da, p_rl}; }
  static ProbabilityTriple from_vec(const Eigen::Vector3d& v) {
    return {v[0], v[1], v[2]};
  }
};

/// Cross-basis single-photon survival probabilities, used only for
/// sign/unfolding disambiguation.
struct CrossProbs {
  double q_hd = 0.5;  ///< |<D|M|H>|^2
  double q_hr = 0.5;  ///< |<R|M|H>|^2
  double q_dr = 0.5;  ///< |<R|M|D>|^2
};

/// Point in the unit ball representing a unitary, (x,y,z) = (-d, c, -b).
struct BlochPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Scale raw amplitudes onto the unit 3-sphere and fix the gauge sign.
/// Throws std::invalid_argument on all-zero input.
UnitaryParams normalize(double a, double b, double c, double d);
UnitaryParams normalize(const Eigen::Vector4d& raw);

/// (p_HV, p_DA, p_RL) = (a^2+b^2, a^2+d^2, a^2+c^2).
ProbabilityTriple probs_from_params(const UnitaryParams& u);

/// Closed forms: q_HD = (1+2(ac+bd))/2, q_HR = (1+2(ad-bc))/2,
/// q_DR = (1-2(ab+cd))/2. Verified against the matrix-amplitude oracle.
CrossProbs cross_probs_from_params(const UnitaryParams& u);

MatrixForm to_matrix(const UnitaryParams& u);

/// Inverse of to_matrix up to global phase/sign. The matrix is rescaled by
/// its column norm first (tolerates e.g. rounded printed entries); throws
/// std::invalid_argument if the rescaled matrix is not special-unitary
/// of the expected form within 1e-9.
UnitaryParams from_matrix(const MatrixForm& m);

/// Uniform sample on the unit 3-sphere (Haar on the phase-stripped part
/// of U(2)), via four independent standard normals.
UnitaryParams haar_sample(RngStream& rng);

/// 1 - (a*a~ + b*b~ + c*c~ + d*d~)^2; the analytic minimum over
/// single-photon states of 1 - |<psi|V~^dag V|psi>|^2.
double process_infidelity(const UnitaryParams& u, const UnitaryParams& v);

BlochPoint bloch_coords(const UnitaryParams& u);

}  // namespace qet
