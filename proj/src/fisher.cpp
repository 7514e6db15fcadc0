#include "syndromest/fisher.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "syndromest/errors.hpp"

namespace syndromest {

namespace {
constexpr std::uint64_t kFisherStreamTag = 0x46495348u;

void score_from_posteriors(const FactorGraph& graph, const PosteriorTable& post,
                           std::vector<double>& out) {
  const std::size_t nq = graph.leaf_priors.size();
  out.resize(graph.num_parameters());
  std::size_t c = 0;
  for (std::size_t q = 0; q < nq; ++q) {
    const double post_id = post.leaf[q][0];
    const double prior_id = graph.leaf_priors[q][0];
    const double id_term = post_id / prior_id;
    for (int e = 1; e < 4; ++e)
      out[c++] = post.leaf[q][e] / graph.leaf_priors[q][e] - id_term;
  }
  for (std::size_t b = 0; b < graph.flip_rates.size(); ++b) {
    const double p = graph.flip_rates[b];
    out[c++] = post.flip[b] / p - (1.0 - post.flip[b]) / (1.0 - p);
  }
}

}  // namespace

std::vector<std::string> parameter_names(const FactorGraph& graph) {
  std::vector<std::string> names;
  for (std::size_t q = 0; q < graph.leaf_priors.size(); ++q)
    for (char e : {'X', 'Y', 'Z'}) names.push_back("q" + std::to_string(q + 1) + "_" + e);
  for (std::size_t b = 0; b < graph.flip_rates.size(); ++b)
    names.push_back("m" + std::to_string(b + 1));
  return names;
}

std::vector<double> score(const FactorGraph& graph, const Syndrome& observed, BpWorkspace* ws) {
  const PosteriorTable post = bp_leaf_posteriors(graph, observed, ws);
  std::vector<double> out;
  score_from_posteriors(graph, post, out);
  return out;
}

FisherMatrix fisher_exact(const FactorGraph& graph, Exec exec) {
  const ConcatTree& tree = *graph.tree;
  const std::size_t l = tree.num_syndrome_bits();
  if (l > 20) throw BudgetError("fisher_exact refused: 2^l too large", std::pow(2.0, double(l)));
  const std::size_t nsyn = std::size_t{1} << l;
  const std::size_t dim = graph.num_parameters();

  std::vector<std::vector<double>> partial(kReduceChunks);
  for_each_chunk(exec, std::int64_t(nsyn),
                 [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
                   BpWorkspace ws;
                   std::vector<double> acc(dim * dim, 0.0);
                   std::vector<double> sc;
                   for (std::int64_t v = begin; v < end; ++v) {
                     const Syndrome s = Syndrome::from_uint(l, std::uint64_t(v));
                     PosteriorTable post;
                     try {
                       post = bp_leaf_posteriors(graph, s, &ws);
                     } catch (const ZeroSupportError&) {
                       continue;  // P[S] = 0 contributes nothing
                     }
                     const double p = std::exp(post.loglik);
                     score_from_posteriors(graph, post, sc);
                     for (std::size_t r = 0; r < dim; ++r)
                       for (std::size_t cc = r; cc < dim; ++cc)
                         acc[r * dim + cc] += p * sc[r] * sc[cc];
                   }
                   partial[std::size_t(c)] = std::move(acc);
                 });

  FisherMatrix f;
  f.dim = dim;
  f.mode = FisherMatrix::Mode::Exact;
  f.m.assign(dim * dim, 0.0);
  for (const auto& acc : partial) {
    if (acc.empty()) continue;
    for (std::size_t i = 0; i < f.m.size(); ++i) f.m[i] += acc[i];
  }
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < r; ++c) f.m[r * dim + c] = f.m[c * dim + r];
  return f;
}

FisherMatrix fisher_mc(const FactorGraph& graph, std::uint64_t n_samples, std::uint64_t seed,
                       Exec exec) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  const ConcatTree& tree = *graph.tree;
  const std::size_t dim = graph.num_parameters();
  const TruthModel truth{
      [&] {
        SingleQubitPauliRates r(graph.leaf_priors.size());
        for (std::size_t q = 0; q < r.size(); ++q)
          r[q] = QubitRates{graph.leaf_priors[q][1], graph.leaf_priors[q][2],
                            graph.leaf_priors[q][3]};
        return r;
      }(),
      graph.flip_rates};

  std::vector<std::vector<double>> partial(kReduceChunks);
  for_each_chunk(exec, std::int64_t(n_samples),
                 [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
                   BpWorkspace ws;
                   std::vector<double> acc(dim * dim, 0.0);
                   std::vector<double> sc;
                   for (std::int64_t i = begin; i < end; ++i) {
                     Rng rng(derive_seed(seed, kFisherStreamTag, std::uint64_t(i)));
                     const SampledError se = sample_error(tree, truth, rng);
                     Syndrome observed = tree.fold(se.leaves).syndrome;
                     observed ^= se.flips;
                     const PosteriorTable post = bp_leaf_posteriors(graph, observed, &ws);
                     score_from_posteriors(graph, post, sc);
                     for (std::size_t r = 0; r < dim; ++r)
                       for (std::size_t cc = r; cc < dim; ++cc)
                         acc[r * dim + cc] += sc[r] * sc[cc];
                   }
                   partial[std::size_t(c)] = std::move(acc);
                 });

  FisherMatrix f;
  f.dim = dim;
  f.mode = FisherMatrix::Mode::MonteCarlo;
  f.n_samples = n_samples;
  f.m.assign(dim * dim, 0.0);
  for (const auto& acc : partial) {
    if (acc.empty()) continue;
    for (std::size_t i = 0; i < f.m.size(); ++i) f.m[i] += acc[i];
  }
  const double inv = 1.0 / double(n_samples);
  for (double& v : f.m) v *= inv;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < r; ++c) f.m[r * dim + c] = f.m[c * dim + r];
  return f;
}

FisherMatrix direct_observation_fisher(const RateSet& rates) {
  const std::size_t nq = rates.qubit.size();
  const std::size_t dim = 3 * nq + rates.flip.size();
  FisherMatrix f;
  f.dim = dim;
  f.mode = FisherMatrix::Mode::Exact;
  f.m.assign(dim * dim, 0.0);
  // Multinomial information per qubit: diag(1/theta_e) + (1/theta_I) * ones.
  for (std::size_t q = 0; q < nq; ++q) {
    const QubitRates& r = rates.qubit[q];
    const double inv_id = 1.0 / r.identity();
    const double th[3] = {r.x, r.y, r.z};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double v = inv_id;
        if (a == b) v += 1.0 / th[a];
        f.m[(3 * q + a) * dim + (3 * q + b)] = v;
      }
  }
  for (std::size_t b = 0; b < rates.flip.size(); ++b) {
    const double p = rates.flip[b];
    const std::size_t idx = 3 * nq + b;
    f.m[idx * dim + idx] = 1.0 / (p * (1.0 - p));
  }
  return f;
}

CrbReport crb(const FisherMatrix& fisher, std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  const std::size_t dim = fisher.dim;
  Eigen::MatrixXd mat(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) mat(r, c) = fisher.at(r, c);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(mat);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double largest = ev(dim - 1);
  const double tol = double(dim) * std::max(largest, 0.0) *
                     std::numeric_limits<double>::epsilon() * 64.0;

  CrbReport rep;
  rep.m = m;
  rep.rank = 0;
  for (std::size_t i = 0; i < dim; ++i)
    if (ev(i) > tol) ++rep.rank;
  rep.pseudo_inverse = rep.rank < dim;

  double smallest_kept = 0.0;
  Eigen::VectorXd inv_ev = Eigen::VectorXd::Zero(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (ev(i) > tol) {
      inv_ev(i) = 1.0 / ev(i);
      if (smallest_kept == 0.0) smallest_kept = ev(i);
    }
  }
  rep.condition_number =
      smallest_kept > 0.0 ? largest / smallest_kept : std::numeric_limits<double>::infinity();

  const Eigen::MatrixXd pinv =
      eig.eigenvectors() * inv_ev.asDiagonal() * eig.eigenvectors().transpose();
  rep.bounds.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) rep.bounds[i] = pinv(i, i) / double(m);
  return rep;
}

}  // namespace syndromest
