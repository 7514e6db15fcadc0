#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "syndromest/decoder.hpp"
#include "syndromest/estimate.hpp"

namespace syndromest {

// Parameter order of all score/Fisher vectors: (qubit 1: X, Y, Z), (qubit 2:
// X, Y, Z), ..., then one flip parameter per syndrome bit.
std::vector<std::string> parameter_names(const FactorGraph& graph);

// Score d ln P[S] / d theta from the BP posteriors:
//   P[E_i=e|S]/theta^i_e - P[E_i=I|S]/theta^i_I per qubit parameter,
//   P[f_b=1|S]/p_b - P[f_b=0|S]/(1-p_b) per flip parameter.
std::vector<double> score(const FactorGraph& graph, const Syndrome& observed,
                          BpWorkspace* ws = nullptr);

struct FisherMatrix {
  enum class Mode { Exact, MonteCarlo };
  std::size_t dim = 0;
  std::vector<double> m;  // row-major, symmetric
  Mode mode = Mode::Exact;
  std::uint64_t n_samples = 0;

  double at(std::size_t r, std::size_t c) const { return m[r * dim + c]; }
};

// Exact expectation over all 2^l syndromes (budget-guarded); syndromes of
// zero probability contribute nothing.
FisherMatrix fisher_exact(const FactorGraph& graph, Exec exec = Exec::Serial);

// Monte-Carlo estimate sampling syndromes from the graph's own rates.
// Chunked fixed-order accumulation: bit-identical for a fixed seed
// regardless of thread count.
FisherMatrix fisher_mc(const FactorGraph& graph, std::uint64_t n_samples, std::uint64_t seed,
                       Exec exec = Exec::Serial);

// Fisher information of direct error observation (no syndrome compression):
// block-diagonal multinomial/Bernoulli information. Upper bound reference
// for the data-processing comparison.
FisherMatrix direct_observation_fisher(const RateSet& rates);

struct CrbReport {
  std::vector<double> bounds;  // diag(I^-1) / m per parameter
  double condition_number = 0.0;
  std::size_t rank = 0;
  bool pseudo_inverse = false;  // I was singular: bounds use the pseudo-inverse
  std::uint64_t m = 0;
};

// Cramer-Rao lower bounds for m syndrome observations, by eigendecomposition
// with a pseudo-inverse fallback (flagged: a singular information matrix
// signals non-identifiability at this point).
CrbReport crb(const FisherMatrix& fisher, std::uint64_t m);

}  // namespace syndromest
