#include "qet/su2.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qet {

namespace {

UnitaryParams gauge_fix(double a, double b, double c, double d) {
  double sign = 0.0;
  if (a != 0.0) {
    sign = a > 0.0 ? 1.0 : -1.0;
  } else if (b != 0.0) {
    sign = b > 0.0 ? 1.0 : -1.0;
  } else if (c != 0.0) {
    sign = c > 0.0 ? 1.0 : -1.0;
  } else {
    sign = d >= 0.0 ? 1.0 : -1.0;
  }
  return {sign * a, sign * b, sign * c, sign * d};
}

}  // namespace

UnitaryParams normalize(double a, double b, double c, double d) {
  const double norm = std::sqrt(a * a + b * b + c * c + d * d);
  if (norm == 0.0) {
    throw std::invalid_argument("normalize: all-zero amplitudes");
  }
  return gauge_fix(a / norm, b / norm, c / norm, d / norm);
}

UnitaryParams normalize(const Eigen::Vector4d& raw) {
  return normalize(raw[0], raw[1], raw[2], raw[3]);
}

ProbabilityTriple probs_from_params(const UnitaryParams& u) {
  return {u.a * u.a + u.b * u.b, u.a * u.a + u.d * u.d, u.a * u.a + u.c * u.c};
}

CrossProbs cross_probs_from_params(const UnitaryParams& u) {
  return {0.5 * (1.0 + 2.0 * (u.a * u.c + u.b * u.d)),
          0.5 * (1.0 + 2.0 * (u.a * u.d - u.b * u.c)),
          0.5 * (1.0 - 2.0 * (u.a * u.b + u.c * u.d))};
}

MatrixForm to_matrix(const UnitaryParams& u) {
  const std::complex<double> alpha(u.a, u.b);
  const std::complex<double> beta(u.c, u.d);
  MatrixForm m;
  m << alpha, std::complex<double>(-u.c, u.d), beta, std::conj(alpha);
  return m;
}

UnitaryParams from_matrix(const MatrixForm& m) {
  const std::complex<double> alpha = m(0, 0);
  const std::complex<double> beta = m(1, 0);
  const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (norm == 0.0) {
    throw std::invalid_argument("from_matrix: zero matrix");
  }
  // The first column fixes (a, b, c, d); the second column must then match
  // the special-unitary form up to the same scale.
  const std::complex<double> expect01(-beta.real() / norm, beta.imag() / norm);
  const std::complex<double> expect11 = std::conj(alpha) / norm;
  if (std::abs(m(0, 1) / norm - expect01) > 1e-9 ||
      std::abs(m(1, 1) / norm - expect11) > 1e-9) {
    throw std::invalid_argument("from_matrix: not special-unitary of the form "
                                "[[a+ib, -c+id], [c+id, a-ib]]");
  }
  return normalize(alpha.real(), alpha.imag(), beta.real(), beta.imag());
}

UnitaryParams haar_sample(RngStream& rng) {
  while (true) {
    const double a = rng.normal();
    const double b = rng.normal();
    const double c = rng.normal();
    const double d = rng.normal();
    const double norm2 = a * a + b * b + c * c + d * d;
    if (norm2 > 1e-24) {
      return normalize(a, b, c, d);
    }
  }
}

double process_infidelity(const UnitaryParams& u, const UnitaryParams& v) {
  const double dot = u.a * v.a + u.b * v.b + u.c * v.c + u.d * v.d;
  return 1.0 - dot * dot;
}

BlochPoint bloch_coords(const UnitaryParams& u) {
  return {-u.d, u.c, -u.b};
}

}  // namespace qet
