#include "syndromest/estimate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "syndromest/errors.hpp"

namespace syndromest {

namespace {
constexpr std::uint64_t kDataStreamTag = 0x44415441u;
}

void RateSet::clamp_interior(double eps) {
  for (QubitRates& r : qubit) {
    r.x = std::clamp(r.x, eps, 1.0 - eps);
    r.y = std::clamp(r.y, eps, 1.0 - eps);
    r.z = std::clamp(r.z, eps, 1.0 - eps);
    const double total = r.x + r.y + r.z;
    if (total > 1.0 - eps) {
      const double scale = (1.0 - eps) / total;
      r.x *= scale;
      r.y *= scale;
      r.z *= scale;
    }
  }
  for (double& f : flip) f = std::clamp(f, eps, 1.0 - eps);
}

RateSet uniform_rates(const ConcatTree& tree, double p, std::optional<double> p_m) {
  RateSet r;
  r.qubit = depolarizing_rates(tree.num_leaves(), p);
  if (p_m) r.flip.assign(tree.num_syndrome_bits(), *p_m);
  return r;
}

TruthModel truth_from_rates(const RateSet& rates) { return TruthModel{rates.qubit, rates.flip}; }

double max_abs_diff(const RateSet& a, const RateSet& b) {
  if (a.qubit.size() != b.qubit.size() || a.flip.size() != b.flip.size())
    throw std::invalid_argument("rate sets have different shapes");
  double d = 0.0;
  for (std::size_t q = 0; q < a.qubit.size(); ++q) {
    d = std::max(d, std::fabs(a.qubit[q].x - b.qubit[q].x));
    d = std::max(d, std::fabs(a.qubit[q].y - b.qubit[q].y));
    d = std::max(d, std::fabs(a.qubit[q].z - b.qubit[q].z));
  }
  for (std::size_t i = 0; i < a.flip.size(); ++i)
    d = std::max(d, std::fabs(a.flip[i] - b.flip[i]));
  return d;
}

SyndromeDataset sample_dataset(const ConcatTree& tree, const TruthModel& truth, std::size_t n_est,
                               std::uint64_t seed, Exec exec) {
  SyndromeDataset ds;
  ds.seed = seed;
  ds.syndromes.assign(n_est, Syndrome(tree.num_syndrome_bits()));
  for_each_index(exec, std::int64_t(n_est), [&](std::int64_t i) {
    Rng rng(derive_seed(seed, kDataStreamTag, std::uint64_t(i)));
    const SampledError se = sample_error(tree, truth, rng);
    Syndrome observed = tree.fold(se.leaves).syndrome;
    observed ^= se.flips;
    ds.syndromes[std::size_t(i)] = std::move(observed);
  });
  return ds;
}

UniqueSyndromes dedup(const std::vector<Syndrome>& syndromes) {
  UniqueSyndromes u;
  std::unordered_map<Syndrome, std::size_t, SyndromeHash> index;
  for (const Syndrome& s : syndromes) {
    auto [it, inserted] = index.emplace(s, u.syndromes.size());
    if (inserted) {
      u.syndromes.push_back(s);
      u.counts.push_back(0.0);
    }
    u.counts[it->second] += 1.0;
  }
  u.total = double(syndromes.size());
  return u;
}

namespace {

// Shared reduction: slots are filled independently per unique syndrome and
// combined afterwards in first-appearance order with compensated sums, so
// serial and parallel execution produce bit-identical statistics.
SuffStats reduce_slots(const ConcatTree& tree, const UniqueSyndromes& data, bool with_flips,
                       const std::vector<PosteriorTable>& slots) {
  SuffStats out;
  out.qubit.assign(tree.num_leaves(), {});
  out.flip_one.assign(with_flips ? tree.num_syndrome_bits() : 0, 0.0);
  out.total = data.total;

  std::vector<std::array<KahanSum, 4>> acc_q(tree.num_leaves());
  std::vector<KahanSum> acc_f(out.flip_one.size());
  KahanSum acc_ll;

  for (std::size_t s = 0; s < slots.size(); ++s) {
    const double w = data.counts[s];
    const PosteriorTable& post = slots[s];
    for (std::size_t q = 0; q < tree.num_leaves(); ++q)
      for (int e = 0; e < 4; ++e) acc_q[q][e].add(w * post.leaf[q][e]);
    for (std::size_t b = 0; b < acc_f.size(); ++b) acc_f[b].add(w * post.flip[b]);
    acc_ll.add(w * post.loglik);
  }
  for (std::size_t q = 0; q < tree.num_leaves(); ++q)
    for (int e = 0; e < 4; ++e) out.qubit[q][e] = acc_q[q][e].sum;
  for (std::size_t b = 0; b < acc_f.size(); ++b) out.flip_one[b] = acc_f[b].sum;
  out.loglik = acc_ll.sum;
  return out;
}

}  // namespace

SuffStats expected_stats(const ConcatTree& tree, const RateSet& rates, const UniqueSyndromes& data,
                         Exec exec) {
  const FactorGraph graph = build_factor_graph(tree, rates.qubit, rates.flip);
  std::vector<PosteriorTable> slots(data.syndromes.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for_each_chunk(exec, std::int64_t(slots.size()),
                 [&](std::int64_t, std::int64_t begin, std::int64_t end) {
                   BpWorkspace ws;
                   for (std::int64_t i = begin; i < end; ++i) {
                     try {
                       slots[std::size_t(i)] =
                           bp_leaf_posteriors(graph, data.syndromes[std::size_t(i)], &ws);
                     } catch (...) {
                       std::lock_guard<std::mutex> lock(failure_mutex);
                       if (!failure) failure = std::current_exception();
                       return;
                     }
                   }
                 });
  if (failure) std::rethrow_exception(failure);
  return reduce_slots(tree, data, graph.with_measurement_noise(), slots);
}

SuffStats hard_stats(const ConcatTree& tree, const RateSet& rates, const UniqueSyndromes& data,
                     Exec exec) {
  const FactorGraph graph = build_factor_graph(tree, rates.qubit, rates.flip);
  std::vector<PosteriorTable> slots(data.syndromes.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for_each_chunk(exec, std::int64_t(slots.size()),
                 [&](std::int64_t, std::int64_t begin, std::int64_t end) {
                   BpWorkspace ws;
                   for (std::int64_t i = begin; i < end; ++i) {
                     try {
                       const Syndrome& s = data.syndromes[std::size_t(i)];
                       const ErrorEvent map = map_error(graph, s);
                       PosteriorTable& slot = slots[std::size_t(i)];
                       slot.leaf.assign(tree.num_leaves(), {});
                       for (std::size_t q = 0; q < tree.num_leaves(); ++q)
                         slot.leaf[q][static_cast<int>(map.data.at(q))] = 1.0;
                       if (graph.with_measurement_noise()) {
                         slot.flip.assign(tree.num_syndrome_bits(), 0.0);
                         for (std::size_t b = 0; b < slot.flip.size(); ++b)
                           slot.flip[b] = map.flips.bit(b) ? 1.0 : 0.0;
                       }
                       slot.loglik = bp_root_marginal(graph, s, &ws).loglik;
                     } catch (...) {
                       std::lock_guard<std::mutex> lock(failure_mutex);
                       if (!failure) failure = std::current_exception();
                       return;
                     }
                   }
                 });
  if (failure) std::rethrow_exception(failure);
  return reduce_slots(tree, data, graph.with_measurement_noise(), slots);
}

RateSet maximize(const SuffStats& stats, const RegularizerConfig* reg) {
  const double beta = reg ? reg->beta : 0.0;
  if (reg && beta > 0.0) {
    if (reg->reference.qubit.size() != stats.qubit.size() ||
        reg->reference.flip.size() != stats.flip_one.size())
      throw std::invalid_argument("regularizer reference has the wrong shape");
  }

  RateSet next;
  next.qubit.resize(stats.qubit.size());
  for (std::size_t q = 0; q < stats.qubit.size(); ++q) {
    std::array<double, 4> pseudo{};
    if (reg && beta > 0.0) {
      const QubitRates& ref = reg->reference.qubit[q];
      pseudo = {(1.0 - ref.identity()) * beta, (1.0 - ref.x) * beta, (1.0 - ref.y) * beta,
                (1.0 - ref.z) * beta};
    }
    double denom = 0.0;
    for (int e = 0; e < 4; ++e) denom += stats.qubit[q][e] + pseudo[e];
    if (!(denom > 0.0)) throw std::invalid_argument("maximize: empty statistics");
    next.qubit[q] = QubitRates{(stats.qubit[q][1] + pseudo[1]) / denom,
                               (stats.qubit[q][2] + pseudo[2]) / denom,
                               (stats.qubit[q][3] + pseudo[3]) / denom};
  }

  next.flip.resize(stats.flip_one.size());
  for (std::size_t b = 0; b < stats.flip_one.size(); ++b) {
    double pseudo1 = 0.0, pseudo0 = 0.0;
    if (reg && beta > 0.0) {
      const double ref = reg->reference.flip[b];
      pseudo1 = (1.0 - ref) * beta;
      pseudo0 = ref * beta;
    }
    const double ones = stats.flip_one[b] + pseudo1;
    const double zeros = (stats.total - stats.flip_one[b]) + pseudo0;
    next.flip[b] = ones / (ones + zeros);
  }
  return next;
}

std::pair<SuffStats, RateSet> em_step(const ConcatTree& tree, const RateSet& rates,
                                      const UniqueSyndromes& data, const RegularizerConfig* reg,
                                      Exec exec) {
  SuffStats stats = expected_stats(tree, rates, data, exec);
  RateSet next = maximize(stats, reg);
  return {std::move(stats), std::move(next)};
}

std::pair<SuffStats, RateSet> hem_step(const ConcatTree& tree, const RateSet& rates,
                                       const UniqueSyndromes& data, Exec exec) {
  SuffStats stats = hard_stats(tree, rates, data, exec);
  RateSet next = maximize(stats, nullptr);
  return {std::move(stats), std::move(next)};
}

EstimationRun run_em(const ConcatTree& tree, const RateSet& init, const SyndromeDataset& data,
                     const EmOptions& options) {
  if (options.n_iter < 1) throw std::invalid_argument("run_em needs n_iter >= 1");
  const UniqueSyndromes unique = dedup(data.syndromes);
  const RegularizerConfig* reg =
      options.regularizer && options.regularizer->beta > 0.0 ? &*options.regularizer : nullptr;

  EstimationRun run;
  RateSet rates = init;
  rates.clamp_interior(options.clamp_eps);

  for (int k = 0; k < options.n_iter; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    auto [stats, next] = options.hard ? hem_step(tree, rates, unique, options.exec)
                                      : em_step(tree, rates, unique, reg, options.exec);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    run.iterations.push_back(EmIteration{k, rates, stats.loglik, std::move(stats), wall});

    next.clamp_interior(options.clamp_eps);
    const double delta = max_abs_diff(next, rates);
    rates = std::move(next);
    if (delta < options.tol) {
      run.converged = true;
      run.converged_at = k + 1;
      break;
    }
  }
  run.final_rates = rates;
  return run;
}

namespace {

SingleQubitPauliRates dirichlet_qubit_draws(double alpha, double p, std::size_t n_qubits, Rng& rng,
                                            bool literal_exponent) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(p > 0.0 && p < 1.0 / 3.0)) throw std::invalid_argument("p must lie in (0, 1/3)");
  const double boost = literal_exponent ? 1.0 : 0.0;
  const std::array<double, 4> conc = {(1.0 - 3.0 * p) * alpha + boost, p * alpha + boost,
                                      p * alpha + boost, p * alpha + boost};
  SingleQubitPauliRates out(n_qubits);
  std::array<double, 4> draw;
  for (std::size_t q = 0; q < n_qubits; ++q) {
    rng.dirichlet(conc, draw);
    out[q] = QubitRates{draw[1], draw[2], draw[3]};
  }
  return out;
}

}  // namespace

SingleQubitPauliRates sample_dirichlet_init(double alpha, double p, std::size_t n_qubits, Rng& rng,
                                            bool literal_exponent) {
  return dirichlet_qubit_draws(alpha, p, n_qubits, rng, literal_exponent);
}

std::vector<double> sample_dirichlet_flip_init(double alpha, double p_m, std::size_t n_bits,
                                               Rng& rng, bool literal_exponent) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(p_m > 0.0 && p_m < 1.0)) throw std::invalid_argument("p_m must lie in (0, 1)");
  const double boost = literal_exponent ? 1.0 : 0.0;
  const std::array<double, 2> conc = {p_m * alpha + boost, (1.0 - p_m) * alpha + boost};
  std::vector<double> out(n_bits);
  std::array<double, 2> draw;
  for (std::size_t b = 0; b < n_bits; ++b) {
    rng.dirichlet(conc, draw);
    out[b] = draw[0];
  }
  return out;
}

}  // namespace syndromest
