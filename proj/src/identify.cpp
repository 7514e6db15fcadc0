#include "syndromest/identify.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <bit>
#include <cmath>
#include <limits>

#include "syndromest/errors.hpp"

namespace syndromest {

JacobianReport analyze_matrix(std::size_t rows, std::size_t cols, std::vector<double> matrix,
                              std::vector<std::string> col_labels) {
  if (matrix.size() != rows * cols) throw std::invalid_argument("matrix size mismatch");
  JacobianReport rep;
  rep.rows = rows;
  rep.cols = cols;
  rep.matrix = std::move(matrix);
  rep.col_labels = std::move(col_labels);

  Eigen::MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rep.matrix[r * cols + c];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  rep.singular_values.assign(sv.data(), sv.data() + sv.size());

  const double sigma_max = rep.singular_values.empty() ? 0.0 : rep.singular_values.front();
  rep.tolerance = double(std::max(rows, cols)) * sigma_max *
                  std::numeric_limits<double>::epsilon() * 64.0;
  rep.numerical_rank = 0;
  for (double s : rep.singular_values)
    if (s > rep.tolerance) ++rep.numerical_rank;

  if (rep.numerical_rank == 0) {
    rep.gap = 0.0;
  } else if (rep.numerical_rank < rep.singular_values.size()) {
    const double below = rep.singular_values[rep.numerical_rank];
    rep.gap = below > 0.0 ? rep.singular_values[rep.numerical_rank - 1] / below
                          : std::numeric_limits<double>::infinity();
  } else {
    rep.gap = rep.tolerance > 0.0
                  ? rep.singular_values[rep.numerical_rank - 1] / rep.tolerance
                  : std::numeric_limits<double>::infinity();
  }
  rep.locally_identifiable = rep.numerical_rank == cols;
  return rep;
}

namespace {

std::vector<std::string> parameter_labels(const DecomposableModel& model) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < model.num_sets(); ++i)
    for (std::size_t k = 0; k < model.set(i).elements.size(); ++k) {
      const ErrorEvent& e = model.set(i).elements[k];
      std::string label = "N" + std::to_string(i + 1) + ":" + e.data.str();
      if (e.flips.size() > 0 && !e.flips.is_zero()) label += "|f" + e.flips.str();
      labels.push_back(std::move(label));
    }
  return labels;
}

std::uint64_t event_syndrome(const StabilizerCode& code, const DecomposableModel& model,
                             const ErrorEvent& e) {
  Syndrome s = code.syndrome(e.data);
  if (model.num_flip_bits() == code.num_generators()) s ^= e.flips;
  return s.to_uint();
}

// Joint distribution P[X_i = choice, S] for every set and choice, by
// enumeration over assignments.
struct JointTable {
  std::vector<double> p_syndrome;                     // [2^l]
  std::vector<std::vector<std::vector<double>>> joint;  // [set][choice incl. identity at 0][2^l]
};

JointTable enumerate_joint(const StabilizerCode& code, const DecomposableModel& model) {
  const std::size_t l = code.num_generators();
  if (l > 24) throw BudgetError("syndrome enumeration refused", std::pow(2.0, double(l)));
  if (code.num_qubits() != model.num_qubits())
    throw std::invalid_argument("code and model qubit counts differ");
  if (model.num_flip_bits() != 0 && model.num_flip_bits() != l)
    throw std::invalid_argument("model flip bits must match the generator count");

  std::vector<std::vector<std::uint64_t>> contrib(model.num_sets());
  for (std::size_t i = 0; i < model.num_sets(); ++i)
    for (const ErrorEvent& e : model.set(i).elements)
      contrib[i].push_back(event_syndrome(code, model, e));

  JointTable t;
  const std::size_t nsyn = std::size_t{1} << l;
  t.p_syndrome.assign(nsyn, 0.0);
  t.joint.resize(model.num_sets());
  for (std::size_t i = 0; i < model.num_sets(); ++i)
    t.joint[i].assign(model.set(i).elements.size() + 1, std::vector<double>(nsyn, 0.0));

  // Recursive enumeration of assignments with running syndrome and product.
  std::vector<int> choice(model.num_sets(), -1);
  auto rec = [&](auto&& self, std::size_t level, double prefix, std::uint64_t syn) -> void {
    if (prefix == 0.0) return;
    if (level == model.num_sets()) {
      t.p_syndrome[syn] += prefix;
      for (std::size_t i = 0; i < model.num_sets(); ++i)
        t.joint[i][std::size_t(choice[i] + 1)][syn] += prefix;
      return;
    }
    choice[level] = -1;
    self(self, level + 1, prefix * model.identity_rate(level), syn);
    const auto rates = model.rates(level);
    for (std::size_t k = 0; k < rates.size(); ++k) {
      choice[level] = int(k);
      self(self, level + 1, prefix * rates[k], syn ^ contrib[level][k]);
    }
    choice[level] = -1;
  };

  double budget = 1.0;
  for (std::size_t i = 0; i < model.num_sets(); ++i)
    budget *= double(model.set(i).elements.size() + 1);
  if (budget > double(1 << 24)) throw BudgetError("assignment enumeration refused", budget);
  rec(rec, 0, 1.0, 0);
  return t;
}

}  // namespace

JacobianReport jacobian_at_zero(const StabilizerCode& code, const DecomposableModel& model) {
  const std::size_t l = code.num_generators();
  if (l > 24) throw BudgetError("syndrome enumeration refused", std::pow(2.0, double(l)));
  const std::size_t rows = std::size_t{1} << l;
  const std::size_t cols = model.num_parameters();

  std::vector<double> m(rows * cols, 0.0);
  std::size_t col = 0;
  for (std::size_t i = 0; i < model.num_sets(); ++i)
    for (const ErrorEvent& e : model.set(i).elements) {
      const std::uint64_t s = event_syndrome(code, model, e);
      m[s * cols + col] += 1.0;
      m[0 * cols + col] -= 1.0;
      ++col;
    }
  return analyze_matrix(rows, cols, std::move(m), parameter_labels(model));
}

JacobianReport jtilde(const StabilizerCode& code, const DecomposableModel& model) {
  for (std::size_t i = 0; i < model.num_sets(); ++i) {
    const auto rates = model.rates(i);
    for (std::size_t k = 0; k < rates.size(); ++k)
      if (!(rates[k] > 0.0))
        throw std::invalid_argument("jtilde requires positive rates; theta of set " +
                                    std::to_string(i + 1) + " element " + std::to_string(k + 1) +
                                    " is zero");
    if (!(model.identity_rate(i) > 0.0))
      throw std::invalid_argument("jtilde requires positive identity rate in set " +
                                  std::to_string(i + 1));
  }

  const JointTable t = enumerate_joint(code, model);
  const std::size_t rows = t.p_syndrome.size();
  const std::size_t cols = model.num_parameters();

  for (std::size_t s = 0; s < rows; ++s)
    if (!(t.p_syndrome[s] > 0.0))
      throw std::invalid_argument("jtilde requires P[S] > 0 for all syndromes; P = 0 at S = " +
                                  Syndrome::from_uint(std::bit_width(rows) - 1, s).str());

  std::vector<double> m(rows * cols, 0.0);
  std::size_t col = 0;
  for (std::size_t i = 0; i < model.num_sets(); ++i) {
    const double p_id = model.identity_rate(i);
    const auto rates = model.rates(i);
    for (std::size_t k = 0; k < rates.size(); ++k) {
      for (std::size_t s = 0; s < rows; ++s) {
        const double post_e = t.joint[i][k + 1][s] / t.p_syndrome[s];
        const double post_i = t.joint[i][0][s] / t.p_syndrome[s];
        m[s * cols + col] = post_e / rates[k] - post_i / p_id;
      }
      ++col;
    }
  }
  return analyze_matrix(rows, cols, std::move(m), parameter_labels(model));
}

ConditionalProbReport equal_conditional_probs_check(const StabilizerCode& code, double p,
                                                    std::size_t qhat) {
  if (!code.is_perfect()) throw UnsupportedError("equal-rate conditional check requires a perfect code");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
  const std::size_t n = code.num_qubits();
  const std::size_t l = code.num_generators();
  if (qhat >= n) throw std::invalid_argument("qubit index out of range");

  // Weight sums sum_E p^wt(E_-qhat) (1-p)^(n-1-wt(E_-qhat)) over the coset
  // members with E_qhat = e, from the brute-force weight distributions.
  ConditionalProbReport rep;
  rep.table.assign(std::size_t{1} << l, {});
  for (std::size_t s = 1; s < rep.table.size(); ++s) {
    const Syndrome sstar = Syndrome::from_uint(l, s);
    for (int e = 0; e < 4; ++e) {
      const WeightDistribution kw = kw_bruteforce(code, static_cast<Pauli>(e), qhat, sstar);
      double sum = 0.0;
      for (std::size_t w = 0; w < kw.k.size(); ++w)
        sum += double(kw.k[w]) * std::pow(p, double(w)) * std::pow(1.0 - p, double(n - 1 - w));
      rep.table[s][e] = sum;
    }
  }

  std::array<std::uint64_t, 4> single{};
  for (int e = 1; e < 4; ++e)
    single[e] = code.syndrome(PauliString::single(n, qhat, static_cast<Pauli>(e))).to_uint();

  rep.max_qualifying_deviation = 0.0;
  for (std::size_t s = 1; s < rep.table.size(); ++s) {
    for (int e = 0; e < 4; ++e)
      for (int e2 = e + 1; e2 < 4; ++e2) {
        if (s == single[e] || s == single[e2]) continue;  // excluded by the statement
        rep.max_qualifying_deviation = std::max(
            rep.max_qualifying_deviation, std::fabs(rep.table[s][e] - rep.table[s][e2]));
      }
  }
  rep.holds = rep.max_qualifying_deviation < 1e-12;
  return rep;
}

WeightDistribution kw_bruteforce(const StabilizerCode& code, Pauli e, std::size_t qhat,
                                 const Syndrome& sstar) {
  const std::size_t n = code.num_qubits();
  if (n > 12) throw BudgetError("kw_bruteforce refused: 4^n too large", std::pow(4.0, double(n)));
  if (qhat >= n) throw std::invalid_argument("qubit index out of range");
  if (sstar.size() != code.num_generators()) throw std::invalid_argument("syndrome length mismatch");

  std::vector<std::array<std::uint64_t, 4>> single(n);
  for (std::size_t q = 0; q < n; ++q) {
    single[q][0] = 0;
    for (int d = 1; d < 4; ++d)
      single[q][d] = code.syndrome(PauliString::single(n, q, static_cast<Pauli>(d))).to_uint();
  }

  WeightDistribution wd;
  wd.n = n;
  wd.qhat = qhat;
  wd.e = e;
  wd.sstar = sstar;
  wd.k.assign(n, 0);

  const std::uint64_t target = sstar.to_uint() ^ single[qhat][static_cast<int>(e)];
  const std::uint64_t total = std::uint64_t{1} << (2 * (n - 1));
  // Enumerate the other n-1 positions; qhat is fixed to e.
  std::vector<std::size_t> others;
  for (std::size_t q = 0; q < n; ++q)
    if (q != qhat) others.push_back(q);
  for (std::uint64_t a = 0; a < total; ++a) {
    std::uint64_t syn = 0;
    int w = 0;
    for (std::size_t idx = 0; idx < others.size(); ++idx) {
      const int d = (a >> (2 * idx)) & 3;
      syn ^= single[others[idx]][d];
      w += d != 0;
    }
    if (syn == target) ++wd.k[w];
  }

  const bool matching = sstar.to_uint() == single[qhat][static_cast<int>(e)] && e != Pauli::I;
  bool other_on_qhat = false;
  for (int d = 1; d < 4; ++d)
    if (single[qhat][d] == sstar.to_uint() && static_cast<Pauli>(d) != e) other_on_qhat = true;
  wd.tag = matching ? KwCase::Matching : (other_on_qhat ? KwCase::OtherOnQhat : KwCase::OffQhat);
  return wd;
}

std::array<WeightDistribution, 4> kw_recursive(const StabilizerCode& code, std::size_t qhat,
                                               const Syndrome& sstar) {
  if (!code.is_perfect()) throw UnsupportedError("kw recursion requires a perfect code");
  if (sstar.is_zero()) throw std::invalid_argument("kw recursion requires S* != 0");
  const std::size_t n = code.num_qubits();
  if (qhat >= n) throw std::invalid_argument("qubit index out of range");

  std::array<std::uint64_t, 4> single{};
  for (int d = 1; d < 4; ++d)
    single[d] = code.syndrome(PauliString::single(n, qhat, static_cast<Pauli>(d))).to_uint();
  const std::uint64_t target = sstar.to_uint();
  const bool some_match =
      single[1] == target || single[2] == target || single[3] == target;

  std::array<WeightDistribution, 4> out;
  for (int e = 0; e < 4; ++e) {
    out[e].n = n;
    out[e].qhat = qhat;
    out[e].e = static_cast<Pauli>(e);
    out[e].sstar = sstar;
    out[e].k.assign(n, 0);
    const bool matching = e != 0 && single[e] == target;
    if (matching) {
      out[e].tag = KwCase::Matching;
      out[e].k[0] = 1;
      out[e].k[1] = 0;
    } else if (some_match) {
      out[e].tag = KwCase::OtherOnQhat;
      out[e].k[0] = 0;
      out[e].k[1] = 0;
    } else {
      out[e].tag = KwCase::OffQhat;
      out[e].k[0] = 0;
      out[e].k[1] = 1;
    }
  }

  // Binomial coefficients C(n-1, w-1) stay well inside 64 bits for n <= 12.
  auto binom = [](std::size_t a, std::size_t b) {
    long long r = 1;
    for (std::size_t i = 0; i < b; ++i) r = r * (long long)(a - i) / (long long)(i + 1);
    return r;
  };

  for (std::size_t w = 2; w < n; ++w) {
    long long pow3 = 1;
    for (std::size_t i = 0; i + 1 < w; ++i) pow3 *= 3;
    for (int e = 0; e < 4; ++e) {
      long long lw = pow3 * binom(n - 1, w - 1);
      lw -= out[e].k[w - 1];
      lw -= 3 * (long long)(n - w + 1) * out[e].k[w - 2];
      lw -= 2 * (long long)(w - 1) * out[e].k[w - 1];
      for (int e2 = 0; e2 < 4; ++e2)
        if (e2 != e) lw -= out[e2].k[w - 1];
      if (lw % (long long)w != 0)
        throw ConsistencyError("kw recursion produced a non-integer division at w = " +
                               std::to_string(w));
      out[e].k[w] = lw / (long long)w;
    }
  }
  return out;
}

}  // namespace syndromest
