#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "syndromest/codes.hpp"
#include "syndromest/noise.hpp"
#include "syndromest/parallel.hpp"
#include "syndromest/rng.hpp"

namespace syndromest {

// Tree factor graph over one ConcatTree: leaf priors from per-qubit Pauli
// rates, plus optional per-syndrome-bit flip variables (phenomenological
// measurement noise). The tree and its factor table are shared and
// immutable; the graph itself only carries the prior tables, so concurrent
// inference calls on one graph are safe.
struct FactorGraph {
  const ConcatTree* tree = nullptr;
  std::vector<std::array<double, 4>> leaf_priors;  // [leaf][Pauli]
  std::vector<double> flip_rates;                  // [syndrome bit], empty = noiseless readout

  bool with_measurement_noise() const { return !flip_rates.empty(); }
  std::size_t num_parameters() const {
    return 3 * leaf_priors.size() + flip_rates.size();
  }
};

FactorGraph build_factor_graph(const ConcatTree& tree, const SingleQubitPauliRates& rates,
                               std::span<const double> meas_rates = {});

// Scratch buffers for one message-passing call; reuse across calls to avoid
// re-allocation in dataset loops.
struct BpWorkspace {
  std::vector<std::array<double, 4>> up;
  std::vector<std::array<double, 4>> down;
  std::vector<double> group_sum;  // per block syndrome value
};

struct RootMarginal {
  std::array<double, 4> probs{};  // P[root logical class | S]
  double loglik = 0.0;            // ln P[S]
};

// Upward pass only; exact on the tree. Throws ZeroSupportError if the
// observed syndrome has probability zero under the graph's priors.
RootMarginal bp_root_marginal(const FactorGraph& graph, const Syndrome& observed,
                              BpWorkspace* ws = nullptr);

struct PosteriorTable {
  std::vector<std::array<double, 4>> leaf;  // P[E_i = e | S]
  std::vector<double> flip;                 // P[f_b = 1 | S]; empty without measurement noise
  std::array<double, 4> root{};
  double loglik = 0.0;
};

// Upward plus downward pass: root marginal, per-leaf posteriors, and flip
// posteriors when measurement noise is modeled.
PosteriorTable bp_leaf_posteriors(const FactorGraph& graph, const Syndrome& observed,
                                  BpWorkspace* ws = nullptr);

// Joint MAP error (and flips) via max-sum in the log domain. Ties are broken
// deterministically: candidates are scanned in ascending (class, block
// syndrome, assignment) order and only strict improvements replace the
// incumbent, so the lexicographically smallest maximizer wins.
ErrorEvent map_error(const FactorGraph& graph, const Syndrome& observed);

// Most likely logical class of the root marginal; first class in I<X<Y<Z
// order among exact ties.
Pauli decode_class(const FactorGraph& graph, const Syndrome& observed, BpWorkspace* ws = nullptr);

// Ground-truth noise used by simulations: independent per-qubit Pauli rates
// and optional per-syndrome-bit flip probabilities.
struct TruthModel {
  SingleQubitPauliRates qubit;
  std::vector<double> flips;  // empty = noiseless readout
};

struct SampledError {
  std::vector<Pauli> leaves;
  Syndrome flips;
};

SampledError sample_error(const ConcatTree& tree, const TruthModel& truth, Rng& rng);

struct LerResult {
  double rate = 0.0;
  double lo = 0.0, hi = 1.0;  // 95% Clopper-Pearson
  std::uint64_t failures = 0;
  std::uint64_t trials = 0;
};

// Fraction of sampled errors whose decoded root class differs from the true
// class. Deterministic for a fixed seed independent of thread count.
LerResult logical_error_rate(const FactorGraph& graph, const TruthModel& truth,
                             std::uint64_t n_trials, std::uint64_t seed,
                             Exec exec = Exec::Serial);

}  // namespace syndromest
