#include "syndromest/decoder.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

#include "syndromest/errors.hpp"
#include "syndromest/stats.hpp"

namespace syndromest {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::uint64_t kLerStreamTag = 0x4c45525f54524c53ULL;

// Observed syndrome bits of block b as an integer, bit i = generator i.
std::uint32_t block_observed(const ConcatTree& tree, const Syndrome& observed, std::size_t b) {
  const std::size_t l = tree.base().num_generators();
  const std::size_t off = tree.syndrome_offset(b);
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < l; ++i) v |= std::uint32_t(observed.bit(off + i)) << i;
  return v;
}

const std::array<double, 4>* child_message(const FactorGraph& g, const BpWorkspace& ws,
                                           const ConcatTree::Block& blk, std::size_t j) {
  if (blk.level == 1) return &g.leaf_priors[blk.first_child + j];
  return &ws.up[blk.first_child + j];
}

// ln P[S] accumulated over per-block normalizations; ws.up holds the
// normalized upward messages afterwards.
double up_pass(const FactorGraph& g, const Syndrome& observed, BpWorkspace& ws) {
  const ConcatTree& tree = *g.tree;
  const BlockFactorTable& t = tree.table();
  const std::size_t n = t.n;
  const std::size_t nsyn = std::size_t{1} << t.l;

  ws.up.assign(tree.num_blocks(), {});
  double logz = 0.0;

  for (std::size_t b = 0; b < tree.num_blocks(); ++b) {
    const auto& blk = tree.block(b);
    const std::array<double, 4>* mu[16];
    for (std::size_t j = 0; j < n; ++j) mu[j] = child_message(g, ws, blk, j);
    const std::uint32_t obs = block_observed(tree, observed, b);

    std::array<double, 4> out{};
    if (!g.with_measurement_noise()) {
      for (std::uint32_t a : t.by_syndrome[obs]) {
        double p = 1.0;
        for (std::size_t j = 0; j < n; ++j) p *= (*mu[j])[(a >> (2 * (n - 1 - j))) & 3];
        out[t.class_of[a]] += p;
      }
    } else {
      const double* fr = g.flip_rates.data() + tree.syndrome_offset(b);
      for (std::uint32_t s = 0; s < nsyn; ++s) {
        double w = 1.0;
        const std::uint32_t diff = s ^ obs;
        for (std::size_t i = 0; i < t.l; ++i) w *= (diff >> i & 1) ? fr[i] : 1.0 - fr[i];
        if (w == 0.0) continue;
        for (std::uint32_t a : t.by_syndrome[s]) {
          double p = 1.0;
          for (std::size_t j = 0; j < n; ++j) p *= (*mu[j])[(a >> (2 * (n - 1 - j))) & 3];
          out[t.class_of[a]] += w * p;
        }
      }
    }

    const double norm = out[0] + out[1] + out[2] + out[3];
    if (!(norm > 0.0)) throw ZeroSupportError(observed.str());
    for (double& v : out) v /= norm;
    ws.up[b] = out;
    logz += std::log(norm);
  }
  return logz;
}

}  // namespace

FactorGraph build_factor_graph(const ConcatTree& tree, const SingleQubitPauliRates& rates,
                               std::span<const double> meas_rates) {
  if (rates.size() != tree.num_leaves())
    throw std::invalid_argument("rate vector length must equal the leaf count");
  if (!meas_rates.empty() && meas_rates.size() != tree.num_syndrome_bits())
    throw std::invalid_argument("flip rate length must equal the syndrome bit count");

  FactorGraph g;
  g.tree = &tree;
  g.leaf_priors.resize(rates.size());
  for (std::size_t q = 0; q < rates.size(); ++q) {
    const QubitRates& r = rates[q];
    if (!(r.x >= 0 && r.y >= 0 && r.z >= 0 && r.identity() >= -1e-12))
      throw std::invalid_argument("invalid rate vector for qubit " + std::to_string(q + 1));
    g.leaf_priors[q] = {r.identity(), r.x, r.y, r.z};
  }
  for (double f : meas_rates) {
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("flip rate outside [0, 1]");
  }
  g.flip_rates.assign(meas_rates.begin(), meas_rates.end());
  return g;
}

RootMarginal bp_root_marginal(const FactorGraph& graph, const Syndrome& observed,
                              BpWorkspace* ws) {
  const ConcatTree& tree = *graph.tree;
  if (observed.size() != tree.num_syndrome_bits())
    throw std::invalid_argument("observed syndrome length mismatch");
  BpWorkspace local;
  BpWorkspace& w = ws ? *ws : local;
  RootMarginal r;
  r.loglik = up_pass(graph, observed, w);
  r.probs = w.up[tree.root_block()];
  return r;
}

PosteriorTable bp_leaf_posteriors(const FactorGraph& graph, const Syndrome& observed,
                                  BpWorkspace* ws) {
  const ConcatTree& tree = *graph.tree;
  if (observed.size() != tree.num_syndrome_bits())
    throw std::invalid_argument("observed syndrome length mismatch");
  const BlockFactorTable& t = tree.table();
  const std::size_t n = t.n;
  const std::size_t nsyn = std::size_t{1} << t.l;
  const bool meas = graph.with_measurement_noise();

  BpWorkspace local;
  BpWorkspace& w = ws ? *ws : local;

  PosteriorTable out;
  out.loglik = up_pass(graph, observed, w);
  out.root = w.up[tree.root_block()];
  out.leaf.assign(tree.num_leaves(), {});
  if (meas) out.flip.assign(tree.num_syndrome_bits(), 0.0);

  w.down.assign(tree.num_blocks(), {});
  w.down[tree.root_block()] = {0.25, 0.25, 0.25, 0.25};
  if (meas) w.group_sum.assign(nsyn, 0.0);

  double pref[16], suf[17];
  std::array<std::array<double, 4>, 16> acc;

  for (std::size_t bi = tree.num_blocks(); bi-- > 0;) {
    const auto& blk = tree.block(bi);
    const std::array<double, 4>& nu = w.down[bi];
    const std::array<double, 4>* mu[16];
    for (std::size_t j = 0; j < n; ++j) {
      mu[j] = child_message(graph, w, blk, j);
      acc[j] = {};
    }
    const std::uint32_t obs = block_observed(tree, observed, bi);

    auto scan_group = [&](std::uint32_t s, double weight) {
      // One syndrome group: accumulate factor-to-child messages and the
      // flip-side sum q(s) = sum_a nu(L(a)) * prod_j mu_j(a_j).
      double q = 0.0;
      for (std::uint32_t a : t.by_syndrome[s]) {
        pref[0] = 1.0;
        for (std::size_t j = 0; j < n; ++j)
          pref[j + 1] = pref[j] * (*mu[j])[(a >> (2 * (n - 1 - j))) & 3];
        suf[n] = 1.0;
        for (std::size_t j = n; j-- > 0;)
          suf[j] = suf[j + 1] * (*mu[j])[(a >> (2 * (n - 1 - j))) & 3];
        const double tv = nu[t.class_of[a]];
        q += tv * pref[n];
        const double wt = weight * tv;
        if (wt != 0.0) {
          for (std::size_t j = 0; j < n; ++j)
            acc[j][(a >> (2 * (n - 1 - j))) & 3] += wt * pref[j] * suf[j + 1];
        }
      }
      return q;
    };

    if (!meas) {
      scan_group(obs, 1.0);
    } else {
      const double* fr = graph.flip_rates.data() + tree.syndrome_offset(bi);
      for (std::uint32_t s = 0; s < nsyn; ++s) {
        double weight = 1.0;
        const std::uint32_t diff = s ^ obs;
        for (std::size_t i = 0; i < t.l; ++i)
          weight *= (diff >> i & 1) ? fr[i] : 1.0 - fr[i];
        w.group_sum[s] = scan_group(s, weight);
      }
      // Posterior of each flip variable of this block.
      for (std::size_t i = 0; i < t.l; ++i) {
        double m0 = 0.0, m1 = 0.0;
        for (std::uint32_t s = 0; s < nsyn; ++s) {
          double wex = 1.0;
          const std::uint32_t diff = s ^ obs;
          for (std::size_t ii = 0; ii < t.l; ++ii) {
            if (ii == i) continue;
            wex *= (diff >> ii & 1) ? fr[ii] : 1.0 - fr[ii];
          }
          ((diff >> i & 1) ? m1 : m0) += wex * w.group_sum[s];
        }
        const double p1 = fr[i] * m1;
        const double p0 = (1.0 - fr[i]) * m0;
        if (!(p0 + p1 > 0.0)) throw ZeroSupportError(observed.str());
        out.flip[tree.syndrome_offset(bi) + i] = p1 / (p0 + p1);
      }
    }

    for (std::size_t j = 0; j < n; ++j) {
      if (blk.level == 1) {
        const std::size_t leaf = blk.first_child + j;
        std::array<double, 4> post;
        double norm = 0.0;
        for (int e = 0; e < 4; ++e) {
          post[e] = graph.leaf_priors[leaf][e] * acc[j][e];
          norm += post[e];
        }
        if (!(norm > 0.0)) throw ZeroSupportError(observed.str());
        for (double& v : post) v /= norm;
        out.leaf[leaf] = post;
      } else {
        double norm = acc[j][0] + acc[j][1] + acc[j][2] + acc[j][3];
        if (!(norm > 0.0)) throw ZeroSupportError(observed.str());
        std::array<double, 4> msg = acc[j];
        for (double& v : msg) v /= norm;
        w.down[blk.first_child + j] = msg;
      }
    }
  }
  return out;
}

Pauli decode_class(const FactorGraph& graph, const Syndrome& observed, BpWorkspace* ws) {
  const RootMarginal r = bp_root_marginal(graph, observed, ws);
  int best = 0;
  for (int e = 1; e < 4; ++e)
    if (r.probs[e] > r.probs[best]) best = e;
  return static_cast<Pauli>(best);
}

ErrorEvent map_error(const FactorGraph& graph, const Syndrome& observed) {
  const ConcatTree& tree = *graph.tree;
  if (observed.size() != tree.num_syndrome_bits())
    throw std::invalid_argument("observed syndrome length mismatch");
  const BlockFactorTable& t = tree.table();
  const std::size_t n = t.n;
  const std::size_t nsyn = std::size_t{1} << t.l;
  const bool meas = graph.with_measurement_noise();

  std::vector<std::array<double, 4>> leaf_log(tree.num_leaves());
  for (std::size_t q = 0; q < tree.num_leaves(); ++q)
    for (int e = 0; e < 4; ++e) leaf_log[q][e] = std::log(graph.leaf_priors[q][e]);

  struct Arg {
    std::uint32_t sprime = 0;
    std::uint32_t a = 0;
  };
  std::vector<std::array<double, 4>> best(tree.num_blocks(), {kNegInf, kNegInf, kNegInf, kNegInf});
  std::vector<std::array<Arg, 4>> arg(tree.num_blocks());

  for (std::size_t b = 0; b < tree.num_blocks(); ++b) {
    const auto& blk = tree.block(b);
    const std::array<double, 4>* child[16];
    for (std::size_t j = 0; j < n; ++j)
      child[j] = blk.level == 1 ? &leaf_log[blk.first_child + j] : &best[blk.first_child + j];
    const std::uint32_t obs = block_observed(tree, observed, b);

    auto scan = [&](std::uint32_t s, double logw) {
      for (std::uint32_t a : t.by_syndrome[s]) {
        double v = logw;
        for (std::size_t j = 0; j < n; ++j) v += (*child[j])[(a >> (2 * (n - 1 - j))) & 3];
        const int cls = t.class_of[a];
        if (v > best[b][cls]) {
          best[b][cls] = v;
          arg[b][cls] = Arg{s, a};
        }
      }
    };

    if (!meas) {
      scan(obs, 0.0);
    } else {
      const double* fr = graph.flip_rates.data() + tree.syndrome_offset(b);
      for (std::uint32_t s = 0; s < nsyn; ++s) {
        double logw = 0.0;
        const std::uint32_t diff = s ^ obs;
        for (std::size_t i = 0; i < t.l; ++i)
          logw += std::log((diff >> i & 1) ? fr[i] : 1.0 - fr[i]);
        if (logw == kNegInf) continue;
        scan(s, logw);
      }
    }
  }

  const std::size_t root = tree.root_block();
  int best_class = 0;
  for (int e = 1; e < 4; ++e)
    if (best[root][e] > best[root][best_class]) best_class = e;
  if (best[root][best_class] == kNegInf) throw ZeroSupportError(observed.str());

  std::vector<Pauli> leaves(tree.num_leaves(), Pauli::I);
  Syndrome flips(tree.num_syndrome_bits());
  std::vector<std::pair<std::size_t, int>> stack = {{root, best_class}};
  while (!stack.empty()) {
    const auto [b, cls] = stack.back();
    stack.pop_back();
    const auto& blk = tree.block(b);
    const Arg chosen = arg[b][cls];
    if (meas) {
      const std::uint32_t diff = chosen.sprime ^ block_observed(tree, observed, b);
      for (std::size_t i = 0; i < t.l; ++i)
        if (diff >> i & 1) flips.set_bit(tree.syndrome_offset(b) + i, true);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const int e = (chosen.a >> (2 * (n - 1 - j))) & 3;
      if (blk.level == 1)
        leaves[blk.first_child + j] = static_cast<Pauli>(e);
      else
        stack.emplace_back(blk.first_child + j, e);
    }
  }

  PauliString data(tree.num_leaves());
  for (std::size_t q = 0; q < leaves.size(); ++q) data.set(q, leaves[q]);
  return ErrorEvent(std::move(data), std::move(flips));
}

SampledError sample_error(const ConcatTree& tree, const TruthModel& truth, Rng& rng) {
  if (truth.qubit.size() != tree.num_leaves())
    throw std::invalid_argument("truth rates must cover all leaves");
  if (!truth.flips.empty() && truth.flips.size() != tree.num_syndrome_bits())
    throw std::invalid_argument("truth flip rates must cover all syndrome bits");

  SampledError se;
  se.leaves.resize(tree.num_leaves());
  for (std::size_t q = 0; q < se.leaves.size(); ++q) {
    const QubitRates& r = truth.qubit[q];
    double u = rng.uniform();
    if (u < r.x)
      se.leaves[q] = Pauli::X;
    else if (u < r.x + r.y)
      se.leaves[q] = Pauli::Y;
    else if (u < r.x + r.y + r.z)
      se.leaves[q] = Pauli::Z;
    else
      se.leaves[q] = Pauli::I;
  }
  se.flips = Syndrome(tree.num_syndrome_bits());
  for (std::size_t b = 0; b < truth.flips.size(); ++b)
    if (rng.bernoulli(truth.flips[b])) se.flips.set_bit(b, true);
  return se;
}

LerResult logical_error_rate(const FactorGraph& graph, const TruthModel& truth,
                             std::uint64_t n_trials, std::uint64_t seed, Exec exec) {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  const ConcatTree& tree = *graph.tree;

  std::vector<std::uint64_t> chunk_failures(kReduceChunks, 0);
  for_each_chunk(exec, std::int64_t(n_trials),
                 [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
                   BpWorkspace ws;
                   // Decoded class per distinct syndrome; pays off at low rates.
                   std::unordered_map<Syndrome, Pauli, SyndromeHash> cache;
                   std::uint64_t failures = 0;
                   for (std::int64_t i = begin; i < end; ++i) {
                     Rng rng(derive_seed(seed, kLerStreamTag, std::uint64_t(i)));
                     const SampledError se = sample_error(tree, truth, rng);
                     const ConcatTree::Fold fold = tree.fold(se.leaves);
                     Syndrome observed = fold.syndrome;
                     observed ^= se.flips;
                     Pauli decoded;
                     if (auto it = cache.find(observed); it != cache.end()) {
                       decoded = it->second;
                     } else {
                       decoded = decode_class(graph, observed, &ws);
                       cache.emplace(observed, decoded);
                     }
                     failures += decoded != fold.root_class;
                   }
                   chunk_failures[std::size_t(c)] = failures;
                 });

  LerResult r;
  for (std::uint64_t f : chunk_failures) r.failures += f;
  r.trials = n_trials;
  r.rate = double(r.failures) / double(n_trials);
  const auto [lo, hi] = clopper_pearson(r.failures, n_trials);
  r.lo = lo;
  r.hi = hi;
  return r;
}

}  // namespace syndromest
