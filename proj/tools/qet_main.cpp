// Command-line front end: exact outcome distributions, synthetic
// experiments, estimation, and Monte Carlo sweeps.
//
// Exit codes: 0 success, 2 usage error, 3 I/O error, 4 numeric/ambiguity.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "qet/estimator.hpp"
#include "qet/experiments.hpp"
#include "qet/io.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;
constexpr const char* kVersion = "qet 1.0.0";

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const qet::UnitaryParams kUnitaryA = qet::normalize(0.70, 0.21, 0.65, -0.20);
const qet::UnitaryParams kUnitaryB = qet::normalize(0.29, 0.34, -0.33, 0.83);

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stod(item));
  }
  return out;
}

// Accepts "UA"/"UB", a quadruple "a,b,c,d", or a row-major 2x2 complex
// matrix "re,im,re,im,re,im,re,im" (normalized on ingestion).
qet::UnitaryParams parse_truth(const std::string& text) {
  if (text == "UA") return kUnitaryA;
  if (text == "UB") return kUnitaryB;
  const auto v = parse_number_list(text);
  if (v.size() == 4) return qet::normalize(v[0], v[1], v[2], v[3]);
  if (v.size() == 8) {
    qet::MatrixForm m;
    m << std::complex<double>(v[0], v[1]), std::complex<double>(v[2], v[3]),
        std::complex<double>(v[4], v[5]), std::complex<double>(v[6], v[7]);
    return qet::from_matrix(m);
  }
  throw CLI::ValidationError(
      "--truth", "expected UA, UB, 4 amplitudes, or 8 matrix components");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

qet::json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  try {
    return qet::json::parse(in);
  } catch (const qet::json::parse_error& e) {
    throw std::invalid_argument(std::string("parse error in ") + path + ": " +
                                e.what());
  }
}

std::string csv_header() {
  return "trial,budget,probe_n,infidelity_vs_truth,infidelity_vs_central,seed\n";
}

int run_dist(int n, int m, double p, bool as_json) {
  const auto dist = qet::outcome_distribution(n, m, p);
  if (as_json) {
    qet::json j = dist;
    j["p"] = p;
    j["m"] = m;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "n_H  n_V  probability\n";
    for (int n_h = 0; n_h <= n; ++n_h) {
      std::printf("%3d  %3d  %.12f\n", n_h, n - n_h, dist.prob[n_h]);
    }
  }
  return 0;
}

struct SimulateArgs {
  std::string truth = "haar";
  int probe_n = 4;
  long budget = 1800;
  double coarse_fraction = 0.1;
  std::uint64_t seed = 1;
  bool exact = false;
  std::string out;
};

int run_simulate(const SimulateArgs& args) {
  qet::UnitaryParams truth;
  if (args.truth == "haar") {
    qet::RngStream rng = qet::RngStream::substream(args.seed, 0xaa11u);
    truth = qet::haar_sample(rng);
  } else {
    truth = parse_truth(args.truth);
  }
  const auto rec = qet::run_protocol(truth, args.probe_n, args.budget,
                                     args.coarse_fraction, args.seed,
                                     args.exact);
  qet::json j = rec;
  j["config"] = {{"command", "simulate"},
                 {"truth", args.truth},
                 {"probe_n", args.probe_n},
                 {"budget", args.budget},
                 {"coarse_fraction", args.coarse_fraction},
                 {"seed", args.seed},
                 {"exact", args.exact}};
  j["version"] = kVersion;
  write_text_file(args.out, j.dump(2) + "\n");
  std::cout << "seed " << args.seed << " -> " << args.out << "\n";
  return 0;
}

int run_estimate(const std::string& in_path, const std::string& out_path,
                 bool verbose) {
  const qet::json j = read_json_file(in_path);
  const auto rec = j.get<qet::ExperimentRecord>();
  const auto result = qet::estimate_unitary(rec);
  qet::json out = result;
  if (verbose) {
    qet::json table = qet::json::array();
    for (const auto& cand : result.candidate_table) {
      table.push_back({{"params", cand.params},
                       {"log_likelihood", cand.log_likelihood},
                       {"unfold_mask", cand.unfold_mask},
                       {"sign_mask", cand.sign_mask}});
    }
    out["candidate_table"] = table;
  }
  out["config"] = {{"command", "estimate"}, {"input", in_path},
                   {"verbose", verbose}};
  out["version"] = kVersion;
  if (rec.truth) {
    const double infid = qet::process_infidelity(*rec.truth, result.estimate);
    out["infidelity_vs_truth"] = infid;
    std::cout << "infidelity vs truth: " << qet::format_double(infid) << "\n";
  }
  if (!out_path.empty()) {
    write_text_file(out_path, out.dump(2) + "\n");
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

struct SweepArgs {
  std::string preset;
  std::string truth = "UA";
  int trials = 500;
  int count = 19;
  long probes = 200;
  long probes_max = 0;  // 0: equal to probes
  int probe_n = 4;
  std::vector<long> budgets;
  long max_photons = 57600;
  int points = 6;
  double coarse_fraction = 0.1;
  long coarse_photons = -1;  // <0: library default
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  bool exact = false;
  bool percentile = false;
  std::string out_prefix = "sweep";
};

qet::json sweep_config_echo(const SweepArgs& a) {
  return {{"command", "sweep"},       {"preset", a.preset},
          {"truth", a.truth},         {"trials", a.trials},
          {"count", a.count},         {"probes", a.probes},
          {"probes_max", a.probes_max}, {"probe_n", a.probe_n},
          {"budgets", a.budgets},     {"max_photons", a.max_photons},
          {"points", a.points},       {"coarse_fraction", a.coarse_fraction},
          {"coarse_photons", a.coarse_photons},
          {"seed", a.seed},           {"exact", a.exact},
          {"percentile", a.percentile}};
}

int run_sweep(SweepArgs args) {
  const int threads = args.threads > 0
                          ? args.threads
                          : std::max(1u, std::thread::hardware_concurrency());
  qet::json summary;
  summary["config"] = sweep_config_echo(args);
  summary["version"] = kVersion;
  std::string csv = csv_header();

  const bool scatter = args.preset == "scatter" || args.preset == "scatter-wide";
  if (scatter) {
    qet::SweepConfig cfg;
    cfg.probe_n = args.probe_n;
    cfg.probes_min = args.probes;
    cfg.probes_max = args.probes_max > 0 ? args.probes_max : args.probes;
    if (args.preset == "scatter-wide" && args.probes_max == 0) {
      cfg.probes_min = 25;
      cfg.probes_max = 2500;
    }
    if (args.coarse_photons >= 0) cfg.coarse_photons = args.coarse_photons;
    cfg.exact = args.exact;
    cfg.seed = args.seed;
    cfg.threads = threads;
    const int count = args.preset == "scatter-wide" && args.count == 19 ? 10000
                                                                 : args.count;
    const auto trials = qet::run_random_sweep(count, cfg);
    std::vector<double> infidelities;
    qet::json rows = qet::json::array();
    for (std::size_t i = 0; i < trials.size(); ++i) {
      const auto& t = trials[i];
      infidelities.push_back(t.infidelity);
      rows.push_back(t);
      csv += std::to_string(i) + "," + std::to_string(t.budget) + "," +
             std::to_string(t.probe_n) + "," +
             qet::format_double(t.infidelity) + ",," +
             std::to_string(t.seed) + "\n";
    }
    summary["trials"] = rows;
    summary["stats"] = qet::summarize(infidelities, "truth");
  } else {
    // comparison / scaling style: fixed truth, single-photon vs four-photon arms.
    const qet::UnitaryParams truth = parse_truth(args.truth);
    qet::ComparisonConfig cfg;
    cfg.coarse_fraction = args.coarse_fraction;
    if (args.coarse_photons >= 0) cfg.coarse_photons_min = args.coarse_photons;
    cfg.exact = args.exact;
    cfg.seed = args.seed;
    cfg.threads = threads;
    cfg.spread = args.percentile ? qet::SpreadKind::Percentile
                                 : qet::SpreadKind::SemiDeviation;
    std::vector<long> budgets = args.budgets;
    if (budgets.empty()) {
      if (args.preset == "scaling") {
        for (int i = 0; i < args.points; ++i) {
          const double f = args.points == 1 ? 1.0 : double(i) / (args.points - 1);
          budgets.push_back(static_cast<long>(
              std::llround(std::exp(std::log(450.0) +
                                    f * (std::log(double(args.max_photons)) -
                                         std::log(450.0))))));
        }
      } else {
        budgets = {1800, 2400, 3600};
      }
    }
    const auto blocks =
        qet::run_budget_comparison_trials(truth, budgets, args.trials, cfg);
    qet::json rows = qet::json::array();
    for (const auto& block : blocks) {
      std::vector<double> vs_truth;
      for (const auto& t : block.trials) vs_truth.push_back(t.infidelity);
      qet::json row = {{"budget", block.budget},
                       {"probe_n", block.probe_n},
                       {"central", block.central},
                       {"vs_truth", qet::summarize(vs_truth, "truth", cfg.spread)},
                       {"vs_central", qet::summarize(block.infidelity_vs_central,
                                                     "central", cfg.spread)}};
      rows.push_back(row);
      for (std::size_t i = 0; i < block.trials.size(); ++i) {
        const auto& t = block.trials[i];
        csv += std::to_string(i) + "," + std::to_string(block.budget) + "," +
               std::to_string(block.probe_n) + "," +
               qet::format_double(t.infidelity) + "," +
               qet::format_double(block.infidelity_vs_central[i]) + "," +
               std::to_string(t.seed) + "\n";
      }
    }
    summary["rows"] = rows;
  }
  write_text_file(args.out_prefix + ".csv", csv);
  write_text_file(args.out_prefix + ".json", summary.dump(2) + "\n");
  std::cout << "wrote " << args.out_prefix << ".csv and "
            << args.out_prefix << ".json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-mode unitary tomography: exact photon-counting "
               "distributions, synthetic experiments, maximum-likelihood "
               "estimation, and precision sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // dist
  auto* dist = app.add_subcommand("dist", "Print an exact outcome distribution");
  int dist_n = 4, dist_m = 2;
  double dist_p = 0.5;
  bool dist_json = false;
  dist->add_option("--n", dist_n, "total photon number")->required();
  dist->add_option("--m", dist_m, "photons in the first mode")->required();
  dist->add_option("--p", dist_p, "basis-survival probability")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  dist->add_flag("--json", dist_json, "emit JSON instead of a table");

  // simulate
  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic experiment");
  simulate->add_option("--truth", sim.truth,
                       "UA | UB | a,b,c,d | 8 matrix components | haar");
  simulate->add_option("--probe-n", sim.probe_n, "photons per probe");
  simulate->add_option("--budget", sim.budget, "total photon budget")->required();
  simulate->add_option("--coarse-fraction", sim.coarse_fraction,
                       "fraction of budget reserved for coarse records");
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_flag("--exact", sim.exact, "pseudo-count (noiseless) mode");
  simulate->add_option("--out", sim.out, "output JSON path")->required();

  // estimate
  std::string est_in, est_out;
  bool est_verbose = false;
  auto* estimate = app.add_subcommand("estimate", "Reconstruct a unitary from a record");
  estimate->add_option("--in", est_in, "experiment record JSON")->required();
  estimate->add_option("--out", est_out, "result JSON path (default: stdout)");
  estimate->add_flag("--verbose", est_verbose, "include the candidate score table");

  // sweep
  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo precision sweeps");
  sweep_cmd->add_option("--preset", sweep.preset, "scatter | scatter-wide | comparison | scaling")
      ->required()
      ->check(CLI::IsMember({"scatter", "comparison", "scatter-wide", "scaling"}));
  sweep_cmd->add_option("--truth", sweep.truth, "fixed truth for comparison/scaling");
  sweep_cmd->add_option("--trials", sweep.trials, "trials per configuration");
  sweep_cmd->add_option("--count", sweep.count, "number of random unitaries");
  sweep_cmd->add_option("--probes", sweep.probes, "probes per unitary (scatter)");
  sweep_cmd->add_option("--probes-max", sweep.probes_max,
                        "upper probe count for log-uniform random budgets");
  sweep_cmd->add_option("--probe-n", sweep.probe_n, "photons per probe (scatter)");
  sweep_cmd->add_option("--budgets", sweep.budgets, "photon budgets (comparison)");
  sweep_cmd->add_option("--max-photons", sweep.max_photons, "largest budget (scaling)");
  sweep_cmd->add_option("--points", sweep.points, "budget points (scaling)");
  sweep_cmd->add_option("--coarse-fraction", sweep.coarse_fraction,
                        "coarse budget fraction");
  sweep_cmd->add_option("--coarse-photons", sweep.coarse_photons,
                        "supplementary QPT photons per trial (minimum for "
                        "comparison presets)");
  sweep_cmd->add_option("--seed", sweep.seed, "master seed");
  sweep_cmd->add_option("--threads", sweep.threads,
                        "worker threads (0 = all cores); results are "
                        "independent of this value");
  sweep_cmd->add_flag("--exact", sweep.exact, "pseudo-count (noiseless) mode");
  sweep_cmd->add_flag("--percentile", sweep.percentile,
                      "16th/84th percentile error bars instead of semi-RMS");
  sweep_cmd->add_option("--out-prefix", sweep.out_prefix, "output path prefix");

  try {
    app.parse(argc, argv);
    if (*dist) return run_dist(dist_n, dist_m, dist_p, dist_json);
    if (*simulate) return run_simulate(sim);
    if (*estimate) return run_estimate(est_in, est_out, est_verbose);
    return run_sweep(sweep);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const qet::AmbiguityError& e) {
    std::cerr << "ambiguity: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
