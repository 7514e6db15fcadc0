#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "syndromest/decoder.hpp"

namespace syndromest {

// Complete parameter set of an estimation problem: per-leaf Pauli rates plus
// per-syndrome-bit flip rates when measurement noise is part of the model.
struct RateSet {
  SingleQubitPauliRates qubit;
  std::vector<double> flip;

  std::size_t num_parameters() const { return 3 * qubit.size() + flip.size(); }
  // Keeps every rate inside [eps, 1-eps] (and rate vectors valid), so the
  // positivity assumptions of the likelihood derivatives stay satisfied.
  void clamp_interior(double eps = 1e-12);
};

RateSet uniform_rates(const ConcatTree& tree, double p, std::optional<double> p_m = {});
TruthModel truth_from_rates(const RateSet& rates);
double max_abs_diff(const RateSet& a, const RateSet& b);

struct SyndromeDataset {
  std::vector<Syndrome> syndromes;
  std::uint64_t seed = 0;
};

SyndromeDataset sample_dataset(const ConcatTree& tree, const TruthModel& truth, std::size_t n_est,
                               std::uint64_t seed, Exec exec = Exec::Serial);

// Unique syndromes in first-appearance order with multiplicities. Dataset
// sums run over this fixed order, so results do not depend on thread count.
struct UniqueSyndromes {
  std::vector<Syndrome> syndromes;
  std::vector<double> counts;
  double total = 0.0;
};
UniqueSyndromes dedup(const std::vector<Syndrome>& syndromes);

// Expected sufficient statistics of one E-step (or hard counts of one HEM
// step) plus the dataset log-likelihood at the rates the step used.
struct SuffStats {
  std::vector<std::array<double, 4>> qubit;  // per leaf, Pauli-indexed; sums to |D|
  std::vector<double> flip_one;              // expected flip count per syndrome bit
  double total = 0.0;                        // |D|
  double loglik = 0.0;
};

SuffStats expected_stats(const ConcatTree& tree, const RateSet& rates,
                         const UniqueSyndromes& data, Exec exec = Exec::Serial);
SuffStats hard_stats(const ConcatTree& tree, const RateSet& rates, const UniqueSyndromes& data,
                     Exec exec = Exec::Serial);

// MAP regularization toward a reference rate set: Dirichlet prior with
// pseudocounts beta_e = (1 - theta0_e) * beta. beta = 0 is plain EM.
struct RegularizerConfig {
  double beta = 0.0;
  RateSet reference;
};

// M-step: normalize statistics (plus pseudocounts when regularizing).
RateSet maximize(const SuffStats& stats, const RegularizerConfig* reg = nullptr);

std::pair<SuffStats, RateSet> em_step(const ConcatTree& tree, const RateSet& rates,
                                      const UniqueSyndromes& data,
                                      const RegularizerConfig* reg = nullptr,
                                      Exec exec = Exec::Serial);
std::pair<SuffStats, RateSet> hem_step(const ConcatTree& tree, const RateSet& rates,
                                       const UniqueSyndromes& data, Exec exec = Exec::Serial);

struct EmOptions {
  int n_iter = 30;
  double tol = 1e-6;
  std::optional<RegularizerConfig> regularizer;
  bool hard = false;  // HEM instead of EM
  double clamp_eps = 1e-12;
  Exec exec = Exec::Serial;
};

struct EmIteration {
  int iter = 0;
  RateSet rates;         // theta^(k)
  double loglik = 0.0;   // dataset ln-likelihood at theta^(k)
  SuffStats stats;       // statistics gathered at theta^(k)
  double wall_seconds = 0.0;
};

struct EstimationRun {
  std::vector<EmIteration> iterations;
  RateSet final_rates;
  bool converged = false;
  // Smallest k with max|theta^(k) - theta^(k-1)| < tol, or -1.
  int converged_at = -1;
};

EstimationRun run_em(const ConcatTree& tree, const RateSet& init, const SyndromeDataset& data,
                     const EmOptions& options);

// Per-qubit Dirichlet draw around the symmetric rate p with concentration
// scale alpha. literal_exponent selects the density prop. to
// prod_e theta_e^{alpha_e} (effective concentration alpha_e + 1);
// false selects the standard prod_e theta_e^{alpha_e - 1}.
SingleQubitPauliRates sample_dirichlet_init(double alpha, double p, std::size_t n_qubits, Rng& rng,
                                            bool literal_exponent = true);
std::vector<double> sample_dirichlet_flip_init(double alpha, double p_m, std::size_t n_bits,
                                               Rng& rng, bool literal_exponent = true);

}  // namespace syndromest
