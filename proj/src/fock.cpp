#include "qet/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qet {

namespace {

constexpr int kMaxFact = 170;

// Immutable after initialization (function-local statics are
// thread-safe to initialize).
const std::array<double, kMaxFact + 1>& factorials() {
  static const auto table = [] {
    std::array<double, kMaxFact + 1> t{};
    t[0] = 1.0;
    for (int i = 1; i <= kMaxFact; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

const std::array<double, kMaxFact + 1>& log_factorials() {
  static const auto table = [] {
    std::array<double, kMaxFact + 1> t{};
    t[0] = 0.0;
    for (int i = 1; i <= kMaxFact; ++i) t[i] = t[i - 1] + std::log(double(i));
    return t;
  }();
  return table;
}

}  // namespace

void validate_probe(const ProbeSpec& probe) {
  if (probe.n < 1 || probe.m < 0 || probe.m > probe.n) {
    throw std::invalid_argument("probe: need n >= 1 and 0 <= m <= n");
  }
}

double OutcomeDistribution::total() const {
  return std::accumulate(prob.begin(), prob.end(), 0.0);
}

double assoc_legendre(int degree, int order, double x) {
  if (degree < 0 || std::abs(order) > degree) {
    throw std::invalid_argument("assoc_legendre: need |order| <= degree");
  }
  if (std::abs(x) > 1.0) {
    throw std::invalid_argument("assoc_legendre: need |x| <= 1");
  }
  const int m = std::abs(order);
  // P_m^m = (-1)^m (2m-1)!! (1-x^2)^(m/2), then upward in degree.
  double pmm = 1.0;
  if (m > 0) {
    const double omx2 = (1.0 - x) * (1.0 + x);
    double fact = 1.0;
    for (int i = 0; i < m; ++i) {
      pmm *= -fact * std::sqrt(omx2);
      fact += 2.0;
    }
  }
  double value = pmm;
  if (degree > m) {
    double pm1 = pmm;
    double pm2 = 0.0;
    for (int l = m + 1; l <= degree; ++l) {
      value = ((2.0 * l - 1.0) * x * pm1 - (l + m - 1.0) * pm2) / (l - m);
      pm2 = pm1;
      pm1 = value;
    }
  }
  if (order < 0) {
    const auto& lf = log_factorials();
    const double ratio = std::exp(lf[degree - m] - lf[degree + m]);
    value *= (m % 2 == 0 ? 1.0 : -1.0) * ratio;
  }
  return value;
}

double balanced_outcome_prob(int n, int n_h, double p) {
  if (n < 1 || n % 2 != 0) {
    throw std::invalid_argument("balanced_outcome_prob: n must be even");
  }
  if (n_h < 0 || n_h > n || p < 0.0 || p > 1.0) {
    throw std::invalid_argument("balanced_outcome_prob: bad n_h or p");
  }
  const int n_v = n - n_h;
  const auto& lf = log_factorials();
  const double prefactor = std::exp(lf[n_v] - lf[n_h]);
  const double l = assoc_legendre(n / 2, (n_h - n_v) / 2, 2.0 * p - 1.0);
  return prefactor * l * l;
}

OutcomeDistribution table1_distribution(double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("table1_distribution: p outside [0,1]");
  }
  const double q = 1.0 - p;
  const double extreme = 6.0 * p * p * q * q;
  const double single = 6.0 * p * q * (2.0 * p - 1.0) * (2.0 * p - 1.0);
  const double mid = 6.0 * p * p - 6.0 * p + 1.0;
  return {4, {extreme, single, mid * mid, single, extreme}};
}

double wigner_d(int two_j, int two_mp, int two_m, double beta) {
  if (two_j < 0 || std::abs(two_mp) > two_j || std::abs(two_m) > two_j ||
      (two_j + two_m) % 2 != 0 || (two_j + two_mp) % 2 != 0) {
    throw std::invalid_argument("wigner_d: bad (j, m', m)");
  }
  const int a = (two_j + two_m) / 2;    // j + m
  const int b = (two_j - two_m) / 2;    // j - m
  const int ap = (two_j + two_mp) / 2;  // j + m'
  const int bp = (two_j - two_mp) / 2;  // j - m'
  const double cb = std::cos(0.5 * beta);
  const double sb = std::sin(0.5 * beta);
  const auto& lf = log_factorials();
  const double lnum = 0.5 * (lf[a] + lf[b] + lf[ap] + lf[bp]);
  double sum = 0.0;
  for (int s = std::max(0, a - ap); s <= std::min(a, bp); ++s) {
    const double lterm = lnum - lf[a - s] - lf[s] - lf[ap - a + s] - lf[bp - s];
    const int cos_exp = a + bp - 2 * s;
    const int sin_exp = ap - a + 2 * s;
    const double sign = ((ap - a + s) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::exp(lterm) * std::pow(cb, cos_exp) * std::pow(sb, sin_exp);
  }
  return sum;
}

double wigner_d_outcome_prob(int n, int m, int n_h, double p) {
  if (n < 1 || m < 0 || m > n || n_h < 0 || n_h > n) {
    throw std::invalid_argument("wigner_d_outcome_prob: index out of range");
  }
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("wigner_d_outcome_prob: p outside [0,1]");
  }
  // d^{N/2}_{(n_H-n_V)/2, M-N/2}(beta) with cos(beta/2) = sqrt(p),
  // sin(beta/2) = sqrt(1-p); evaluated directly in p to stay exact at the
  // boundaries.
  const int a = m;          // j + m
  const int ap = n_h;       // j + m'
  const int bp = n - n_h;   // j - m'
  const double cp = std::sqrt(p);
  const double sp = std::sqrt(1.0 - p);
  const auto& lf = log_factorials();
  const double lnum = 0.5 * (lf[a] + lf[n - a] + lf[ap] + lf[bp]);
  double amp = 0.0;
  for (int s = std::max(0, a - ap); s <= std::min(a, bp); ++s) {
    const double lterm = lnum - lf[a - s] - lf[s] - lf[ap - a + s] - lf[bp - s];
    const int cos_exp = a + bp - 2 * s;
    const int sin_exp = ap - a + 2 * s;
    const double sign = ((ap - a + s) % 2 == 0) ? 1.0 : -1.0;
    amp += sign * std::exp(lterm) * std::pow(cp, cos_exp) * std::pow(sp, sin_exp);
  }
  return amp * amp;
}

OutcomeDistribution outcome_distribution(int n, int m, double p) {
  OutcomeDistribution d;
  d.n = n;
  d.prob.resize(n + 1);
  for (int n_h = 0; n_h <= n; ++n_h) {
    d.prob[n_h] = wigner_d_outcome_prob(n, m, n_h, p);
  }
  return d;
}

OutcomeDistribution brute_force_distribution(int n, int m, double p) {
  if (n > 16) {
    throw std::invalid_argument("brute_force_distribution: n > 16 unsupported");
  }
  if (n < 1 || m < 0 || m > n || p < 0.0 || p > 1.0) {
    throw std::invalid_argument("brute_force_distribution: bad arguments");
  }
  // Transformed mode operators under the y-rotation [[sqrt(p), -sqrt(1-p)],
  // [sqrt(1-p), sqrt(p)]]:
  //   a_H^' = sqrt(p) a_H - sqrt(1-p) a_V
  //   a_V^' = sqrt(1-p) a_H + sqrt(p) a_V
  // Expand (a_H^')^M (a_V^')^{N-M} |vac> binomially and collect the
  // coefficient of each |n_H, n_V> with bosonic normalization.
  const double t = std::sqrt(p);
  const double r = std::sqrt(1.0 - p);
  const auto& fact = factorials();
  std::vector<double> amp(n + 1, 0.0);
  for (int i = 0; i <= m; ++i) {
    const double ci = fact[m] / (fact[i] * fact[m - i]) * std::pow(t, i) *
                      std::pow(-r, m - i);
    for (int j = 0; j <= n - m; ++j) {
      const double cj = fact[n - m] / (fact[j] * fact[n - m - j]) *
                        std::pow(r, j) * std::pow(t, n - m - j);
      amp[i + j] += ci * cj;
    }
  }
  OutcomeDistribution d;
  d.n = n;
  d.prob.resize(n + 1);
  const double input_norm = fact[m] * fact[n - m];
  for (int n_h = 0; n_h <= n; ++n_h) {
    const double overlap = amp[n_h] * std::sqrt(fact[n_h] * fact[n - n_h]);
    d.prob[n_h] = overlap * overlap / input_norm;
  }
  return d;
}

double fisher_information(int n, int m, double p) {
  if (p <= 0.0 || p >= 1.0) {
    throw std::invalid_argument("fisher_information: p must be interior");
  }
  const double h = 1e-6;
  const double big_h = std::min({1e-4, 0.5 * p, 0.5 * (1.0 - p)});
  const auto d0 = outcome_distribution(n, m, p);
  const auto dp = outcome_distribution(n, m, std::min(p + h, 1.0));
  const auto dm = outcome_distribution(n, m, std::max(p - h, 0.0));
  const auto dp2 = outcome_distribution(n, m, p + big_h);
  const auto dm2 = outcome_distribution(n, m, p - big_h);
  double info = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double pk = d0.prob[k];
    if (pk > 1e-7) {
      const double deriv = (dp.prob[k] - dm.prob[k]) / (2.0 * h);
      info += deriv * deriv / pk;
    } else {
      // Near an (even-order) zero of P_k, (P')^2/P tends to 2 P''.
      const double second =
          (dp2.prob[k] + dm2.prob[k] - 2.0 * pk) / (big_h * big_h);
      info += std::max(0.0, 2.0 * second);
    }
  }
  return info;
}

}  // namespace qet
