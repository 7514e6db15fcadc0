#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syndromest/estimate.hpp"
#include "syndromest/stats.hpp"

namespace syndromest {

// Resolved configuration of one estimation experiment (a sweep of seeded
// trials). The master seed is mandatory; every derived stream is a
// deterministic function of it and the trial index.
struct ExperimentConfig {
  std::string code = "five_qubit";
  int levels = 2;
  double p = 0.13;
  std::optional<double> p_m;
  double alpha = 20.0;
  std::optional<double> beta;
  std::size_t n_est = 1000;
  int n_iter = 5;
  double tol = 1e-6;
  std::string estimator = "em";  // em | hem | both
  std::size_t n_trials = 100;
  std::size_t n_decode_trials = 100000;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "results";
  // Control variant: fixed initialization, per-trial random actual rates.
  bool fixed_init_random_truth = false;
  bool dirichlet_literal_exponent = true;
  std::uint64_t crb_mc_samples = 100000;  // used when the syndrome space is not enumerable

  void validate() const;
  std::string canonical_json() const;
  std::uint64_t hash() const;
};

ExperimentConfig config_from_json(const std::string& json_text);

struct TrialRecord {
  std::size_t trial = 0;
  std::string estimator;
  std::string status = "ok";  // ok | zero_support
  int iterations = 0;
  int converged_at = -1;
  double ler_init = 0.0;
  double ler_est = 0.0;
  double mse_mean = 0.0;  // mean squared parameter error of the final estimate
  double wall_s = 0.0;
};

struct TrialSummary {
  std::vector<TrialRecord> trials;
  LerResult perfect;  // decoder given the actual rates
  std::map<std::string, BoxStats> ler_boxes;
};

// Runs the full pipeline (init draw, dataset draw, estimation, decoder
// evaluation) for every trial and writes config.json, trials.csv,
// iterations.csv, mse_trace.csv and summary.json into out_dir.
TrialSummary run_experiment(const ExperimentConfig& config);

struct MseCrbRow {
  std::string estimator;
  int level = 0;
  std::size_t n_est = 0;
  std::string parameter;
  double mse = 0.0;
  double crb = 0.0;
  double bias2 = 0.0;
  double variance = 0.0;
};

// MSE of the final estimates over all trials, decomposed into squared bias
// and variance, against the Cramer-Rao bound at the true rates. Writes
// mse_vs_crb.csv into out_dir and returns the rows.
std::vector<MseCrbRow> mse_vs_crb(const ExperimentConfig& config);

struct SummaryRow {
  std::string estimator;
  std::string metric;
  std::size_t count = 0;
  BoxStats box;
};

// Reads trials.csv from a results directory and writes boxes.csv with
// quartiles, 1.5-IQR whiskers and individual outliers.
std::vector<SummaryRow> emit_summary(const std::string& results_dir);

}  // namespace syndromest
