#include "qet/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qet {

namespace {

constexpr int kGridPoints = 2001;
constexpr double kPMax = 1.0;

double safe_log(double x) { return std::log(std::max(x, 1e-300)); }

double record_log_likelihood(const CountsRecord& rec,
                             const OutcomeDistribution& dist) {
  double ll = 0.0;
  for (int k = 0; k <= rec.probe.n; ++k) {
    if (rec.tallies[k] > 0.0) ll += rec.tallies[k] * safe_log(dist.prob[k]);
  }
  return ll;
}

// Distributions on a grid over [0, 1], memoized per probe shape. The
// table is immutable once built; the mutex guards concurrent first use.
const std::vector<OutcomeDistribution>& grid_distributions(int n, int m) {
  static std::map<std::pair<int, int>, std::vector<OutcomeDistribution>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.try_emplace({n, m});
  if (inserted) {
    it->second.reserve(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
      const double p = kPMax * i / (kGridPoints - 1);
      it->second.push_back(outcome_distribution(n, m, p));
    }
  }
  return it->second;
}

struct UnfoldedInversion {
  ProbabilityTriple probs;
  Eigen::Vector4d squared;
  bool projected = false;
};

// Unfold the folded triple per mask, project into the physical region if
// needed, invert, and clamp projection-tolerance negatives.
UnfoldedInversion invert_unfolding(const std::array<double, 3>& folded,
                                   int unfold_mask) {
  UnfoldedInversion out;
  Eigen::Vector3d p;
  for (int i = 0; i < 3; ++i) {
    p[i] = (unfold_mask >> i & 1) ? 1.0 - folded[i] : folded[i];
  }
  out.probs = ProbabilityTriple::from_vec(p);
  if (!in_physical_region(out.probs)) {
    out.probs = project_to_physical_region(out.probs);
    out.projected = true;
  }
  out.squared = linear_inversion(out.probs);
  for (int i = 0; i < 4; ++i) {
    if (out.squared[i] < 0.0) {
      if (out.squared[i] < -1e-9) {
        throw std::invalid_argument(
            "estimate: projected triple inverted to a negative amplitude");
      }
      out.squared[i] = 0.0;
    }
  }
  out.squared /= out.squared.sum();
  return out;
}

UnitaryParams candidate_params(const Eigen::Vector4d& squared, int sign_mask) {
  const double a = std::sqrt(std::max(squared[0], 0.0));
  const double b = std::sqrt(std::max(squared[1], 0.0));
  const double c = std::sqrt(std::max(squared[2], 0.0));
  const double d = std::sqrt(std::max(squared[3], 0.0));
  return {a, (sign_mask & 1) ? -b : b, (sign_mask & 2) ? -c : c,
          (sign_mask & 4) ? -d : d};
}

bool gauge_distinct(const UnitaryParams& u, const UnitaryParams& v) {
  return process_infidelity(u, v) > 1e-12;
}

}  // namespace

PEstimate mle_p(const CountsRecord& record) {
  if (record.shots < 1.0 || record.total() <= 0.0) {
    throw std::invalid_argument("mle_p: empty record");
  }
  validate_probe(record.probe);
  const int n = record.probe.n;
  const int m = record.probe.m;
  const auto& grid = grid_distributions(n, m);
  const double step = kPMax / (kGridPoints - 1);

  int best_i = 0;
  double best_ll = -HUGE_VAL;
  for (int i = 0; i < kGridPoints; ++i) {
    const double ll = record_log_likelihood(record, grid[i]);
    if (ll > best_ll) {  // strict: ties keep the smaller p
      best_ll = ll;
      best_i = i;
    }
  }

  const auto ll_at = [&](double p) {
    return record_log_likelihood(record, outcome_distribution(n, m, p));
  };
  // Golden-section refinement around the best grid point.
  double lo = std::max(0.0, (best_i - 1) * step);
  double hi = std::min(kPMax, (best_i + 1) * step);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = ll_at(x1);
  double f2 = ll_at(x2);
  while (hi - lo > 1e-9) {
    if (f1 >= f2) {  // ties shrink toward smaller p
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = ll_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = ll_at(x2);
    }
  }
  // Pick the best of the bracket and the grid point so boundary maxima
  // (p exactly 0, 1/2 or 1) are returned exactly.
  double p_hat = best_i * step;
  double ll_hat = best_ll;
  for (const double p : {lo, 0.5 * (lo + hi), hi}) {
    const double ll = ll_at(p);
    if (ll > ll_hat || (ll == ll_hat && p < p_hat)) {
      p_hat = p;
      ll_hat = ll;
    }
  }
  // The sign-ambiguous inversion works with the folded value; the unfold
  // search downstream rescores both branches against the raw counts.
  return {record.basis, std::min(p_hat, 1.0 - p_hat), ll_hat, record.shots};
}

Eigen::Vector4d linear_inversion(const ProbabilityTriple& probs) {
  const double hv = probs.p_hv;
  const double da = probs.p_da;
  const double rl = probs.p_rl;
  return {0.5 * (-1.0 + da + rl + hv), 0.5 * (1.0 - da - rl + hv),
          0.5 * (1.0 - da + rl - hv), 0.5 * (1.0 + da - rl - hv)};
}

bool in_physical_region(const ProbabilityTriple& probs) {
  const double tol = 1e-12;
  const double hv = probs.p_hv;
  const double da = probs.p_da;
  const double rl = probs.p_rl;
  return da + rl + hv >= 1.0 - tol && da + rl - hv <= 1.0 + tol &&
         da - rl + hv <= 1.0 + tol && -da + rl + hv <= 1.0 + tol;
}

namespace {

// Closest point on triangle (Ericson, Real-Time Collision Detection).
Eigen::Vector3d closest_point_on_triangle(const Eigen::Vector3d& p,
                                          const Eigen::Vector3d& a,
                                          const Eigen::Vector3d& b,
                                          const Eigen::Vector3d& c) {
  const Eigen::Vector3d ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Eigen::Vector3d bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;

  const Eigen::Vector3d cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  }

  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

}  // namespace

ProbabilityTriple project_to_physical_region(const ProbabilityTriple& probs) {
  if (in_physical_region(probs)) return probs;
  const Eigen::Vector3d p = probs.vec();
  const Eigen::Vector3d v1(1, 0, 0), v2(0, 1, 0), v3(0, 0, 1), v4(1, 1, 1);
  const std::array<std::array<Eigen::Vector3d, 3>, 4> faces = {{
      {v1, v2, v3},
      {v1, v2, v4},
      {v1, v3, v4},
      {v2, v3, v4},
  }};
  Eigen::Vector3d best = v1;
  double best_d2 = HUGE_VAL;
  for (const auto& f : faces) {
    const Eigen::Vector3d q = closest_point_on_triangle(p, f[0], f[1], f[2]);
    const double d2 = (q - p).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = q;
    }
  }
  return ProbabilityTriple::from_vec(best);
}

double coarse_log_likelihood(const UnitaryParams& u,
                             const std::vector<CoarseRecord>& coarse) {
  double ll = 0.0;
  for (const auto& rec : coarse) {
    const double qi = pair_probability(u, rec.pair);
    if (rec.successes > 0.0) ll += rec.successes * safe_log(qi);
    if (rec.shots - rec.successes > 0.0) {
      ll += (rec.shots - rec.successes) * safe_log(1.0 - qi);
    }
  }
  return ll;
}

UnitaryParams disambiguate(const Eigen::Vector4d& squared_amps,
                           const std::vector<CoarseRecord>& coarse) {
  if (coarse.empty()) {
    throw std::invalid_argument("disambiguate: no coarse records");
  }
  if (squared_amps.minCoeff() < -1e-9 ||
      std::abs(squared_amps.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "disambiguate: squared amplitudes must be nonnegative and normalized");
  }
  UnitaryParams best;
  double best_ll = -HUGE_VAL;
  std::vector<UnitaryParams> tied;
  for (int sign_mask = 0; sign_mask < 8; ++sign_mask) {
    const UnitaryParams cand = candidate_params(squared_amps, sign_mask);
    const double ll = coarse_log_likelihood(cand, coarse);
    if (ll > best_ll + 1e-9) {
      best = cand;
      best_ll = ll;
      tied = {cand};
    } else if (ll > best_ll - 1e-9) {
      tied.push_back(cand);
    }
  }
  for (const auto& cand : tied) {
    if (gauge_distinct(cand, best)) {
      throw AmbiguityError("disambiguate: coarse data cannot separate "
                           "physically distinct sign assignments",
                           tied);
    }
  }
  return best;
}

EstimationResult estimate_unitary(const ExperimentRecord& exp) {
  if (exp.main.size() != 3) {
    throw std::invalid_argument("estimate_unitary: need all three bases");
  }
  std::array<double, 3> folded{};
  std::array<bool, 3> seen{};
  for (const auto& rec : exp.main) {
    const int i = static_cast<int>(rec.basis);
    if (seen[i]) {
      throw std::invalid_argument("estimate_unitary: duplicate basis");
    }
    seen[i] = true;
    folded[i] = mle_p(rec).p_folded;
  }

  EstimationResult result;
  double best_ll = -HUGE_VAL;
  std::vector<UnitaryParams> tied;
  for (int unfold_mask = 0; unfold_mask < 8; ++unfold_mask) {
    const UnfoldedInversion inv = invert_unfolding(folded, unfold_mask);
    for (int sign_mask = 0; sign_mask < 8; ++sign_mask) {
      const UnitaryParams cand = candidate_params(inv.squared, sign_mask);
      const double ll = coarse_log_likelihood(cand, exp.coarse);
      result.candidate_table.push_back({cand, ll, unfold_mask, sign_mask});
      if (ll > best_ll + 1e-9) {
        best_ll = ll;
        result.estimate = cand;
        result.probs = inv.probs;
        result.projected = inv.projected;
        tied = {cand};
      } else if (ll > best_ll - 1e-9) {
        tied.push_back(cand);
      }
    }
  }
  result.candidates_considered =
      static_cast<int>(result.candidate_table.size());
  result.disambiguation_loglik = best_ll;

  bool distinct_tie = false;
  for (const auto& cand : tied) {
    if (gauge_distinct(cand, result.estimate)) distinct_tie = true;
  }
  if (distinct_tie && exp.coarse.empty()) {
    throw AmbiguityError(
        "estimate_unitary: no coarse records to separate distinct candidates",
        tied);
  }
  const Eigen::Vector4d amps = result.estimate.vec().cwiseAbs();
  result.ambiguous = distinct_tie || amps.minCoeff() < 1e-6;
  return result;
}

UnitaryParams central_estimate(const std::vector<ExperimentRecord>& exps) {
  if (exps.empty()) {
    throw std::invalid_argument("central_estimate: no experiments");
  }
  ExperimentRecord pooled = exps.front();
  for (std::size_t e = 1; e < exps.size(); ++e) {
    const auto& exp = exps[e];
    if (exp.main.size() != pooled.main.size()) {
      throw std::invalid_argument("central_estimate: incompatible experiments");
    }
    for (std::size_t i = 0; i < pooled.main.size(); ++i) {
      auto& dst = pooled.main[i];
      const auto& src = exp.main[i];
      if (src.basis != dst.basis || src.probe.n != dst.probe.n ||
          src.probe.m != dst.probe.m) {
        throw std::invalid_argument("central_estimate: incompatible probes");
      }
      for (std::size_t k = 0; k < dst.tallies.size(); ++k) {
        dst.tallies[k] += src.tallies[k];
      }
      dst.shots += src.shots;
    }
    for (const auto& c : exp.coarse) {
      auto it = std::find_if(pooled.coarse.begin(), pooled.coarse.end(),
                             [&](const CoarseRecord& r) { return r.pair == c.pair; });
      if (it == pooled.coarse.end()) {
        pooled.coarse.push_back(c);
      } else {
        it->successes += c.successes;
        it->shots += c.shots;
      }
    }
    pooled.total_photons += exp.total_photons;
  }
  return estimate_unitary(pooled).estimate;
}

}  // namespace qet
