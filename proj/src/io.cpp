#include "qet/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace qet {

std::string to_string(Basis b) {
  switch (b) {
    case Basis::HV: return "HV";
    case Basis::DA: return "DA";
    default: return "RL";
  }
}

std::string to_string(CrossPair p) {
  static const char* names[9] = {"HH", "HD", "HR", "DH", "DD",
                                 "DR", "RH", "RD", "RR"};
  return names[static_cast<int>(p)];
}

Basis basis_from_string(const std::string& s) {
  if (s == "HV") return Basis::HV;
  if (s == "DA") return Basis::DA;
  if (s == "RL") return Basis::RL;
  throw std::invalid_argument("unknown basis: " + s);
}

CrossPair cross_pair_from_string(const std::string& s) {
  for (const CrossPair p : kAllCrossPairs) {
    if (s == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown cross pair: " + s);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void to_json(json& j, const UnitaryParams& u) {
  j = json{{"a", u.a}, {"b", u.b}, {"c", u.c}, {"d", u.d}};
}

void from_json(const json& j, UnitaryParams& u) {
  u.a = j.at("a").get<double>();
  u.b = j.at("b").get<double>();
  u.c = j.at("c").get<double>();
  u.d = j.at("d").get<double>();
}

void to_json(json& j, const ProbabilityTriple& t) {
  j = json{{"p_hv", t.p_hv}, {"p_da", t.p_da}, {"p_rl", t.p_rl}};
}

void from_json(const json& j, ProbabilityTriple& t) {
  t.p_hv = j.at("p_hv").get<double>();
  t.p_da = j.at("p_da").get<double>();
  t.p_rl = j.at("p_rl").get<double>();
}

void to_json(json& j, const ProbeSpec& p) {
  j = json{{"n", p.n}, {"m", p.m}, {"basis", to_string(p.basis)}};
}

void from_json(const json& j, ProbeSpec& p) {
  p.n = j.at("n").get<int>();
  p.m = j.at("m").get<int>();
  p.basis = basis_from_string(j.at("basis").get<std::string>());
}

void to_json(json& j, const OutcomeDistribution& d) {
  json outcomes = json::array();
  for (int n_h = 0; n_h <= d.n; ++n_h) {
    outcomes.push_back(json{{"n_h", n_h}, {"n_v", d.n - n_h},
                            {"probability", d.prob[n_h]}});
  }
  j = json{{"n", d.n}, {"outcomes", outcomes}};
}

void to_json(json& j, const CountsRecord& r) {
  json tallies = json::array();
  for (std::size_t n_h = 0; n_h < r.tallies.size(); ++n_h) {
    tallies.push_back(json::array({n_h, r.tallies[n_h]}));
  }
  j = json{{"basis", to_string(r.basis)},
           {"probe", r.probe},
           {"tallies", tallies},
           {"shots", r.shots},
           {"seed", r.seed}};
}

void from_json(const json& j, CountsRecord& r) {
  r.basis = basis_from_string(j.at("basis").get<std::string>());
  r.probe = j.at("probe").get<ProbeSpec>();
  r.shots = j.at("shots").get<double>();
  r.seed = j.value("seed", std::uint64_t{0});
  r.tallies.assign(r.probe.n + 1, 0.0);
  for (const auto& entry : j.at("tallies")) {
    const int n_h = entry.at(0).get<int>();
    if (n_h < 0 || n_h > r.probe.n) {
      throw std::invalid_argument("tally outcome outside 0..n");
    }
    r.tallies[n_h] = entry.at(1).get<double>();
  }
}

void to_json(json& j, const CoarseRecord& r) {
  j = json{{"pair", to_string(r.pair)},
           {"successes", r.successes},
           {"shots", r.shots}};
}

void from_json(const json& j, CoarseRecord& r) {
  r.pair = cross_pair_from_string(j.at("pair").get<std::string>());
  r.successes = j.at("successes").get<double>();
  r.shots = j.at("shots").get<double>();
}

void to_json(json& j, const ExperimentRecord& r) {
  j = json{{"records", r.main},
           {"coarse", r.coarse},
           {"total_photons", r.total_photons},
           {"seed", r.seed}};
  if (r.truth) j["truth"] = *r.truth;
}

void from_json(const json& j, ExperimentRecord& r) {
  r.main = j.at("records").get<std::vector<CountsRecord>>();
  r.coarse = j.value("coarse", std::vector<CoarseRecord>{});
  r.total_photons = j.at("total_photons").get<double>();
  r.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("truth")) r.truth = j.at("truth").get<UnitaryParams>();
}

void to_json(json& j, const EstimationResult& r) {
  j = json{{"estimate", r.estimate},
           {"probs", r.probs},
           {"candidates_considered", r.candidates_considered},
           {"disambiguation_loglik", r.disambiguation_loglik},
           {"projected", r.projected},
           {"ambiguous", r.ambiguous}};
}

void to_json(json& j, const AggregateStats& s) {
  j = json{{"mean", s.mean},
           {"lower", s.lower},
           {"upper", s.upper},
           {"count", s.count},
           {"reference", s.reference}};
}

void to_json(json& j, const TrialSummary& t) {
  j = json{{"truth", t.truth},
           {"estimate", t.estimate},
           {"infidelity", t.infidelity},
           {"budget", t.budget},
           {"probe_n", t.probe_n},
           {"seed", t.seed},
           {"truth_xyz", {t.truth_xyz.x, t.truth_xyz.y, t.truth_xyz.z}},
           {"estimate_xyz",
            {t.estimate_xyz.x, t.estimate_xyz.y, t.estimate_xyz.z}},
           {"ambiguous", t.ambiguous}};
}

}  // namespace qet
