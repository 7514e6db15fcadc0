#include "syndromest/closedform.hpp"

#include <cmath>

#include "syndromest/errors.hpp"
#include "syndromest/rng.hpp"

namespace syndromest {

namespace {
constexpr std::uint64_t kMomentStreamTag = 0x534f314dU;
}

BinaryCircuitModel::BinaryCircuitModel(const StabilizerCode& code, std::vector<ErrorEvent> errors,
                                       std::vector<double> rates)
    : l_(code.num_generators()), rates_(std::move(rates)) {
  if (errors.size() != rates_.size())
    throw std::invalid_argument("one rate per elementary error required");
  if (l_ > 63) throw std::invalid_argument("syndrome length too large");
  for (const ErrorEvent& e : errors) {
    if (e.data.num_qubits() != code.num_qubits())
      throw std::invalid_argument("error length must match the code");
    if (e.flips.size() != 0 && e.flips.size() != l_)
      throw std::invalid_argument("flip part must be empty or match the generator count");
    Syndrome s = code.syndrome(e.data);
    if (e.flips.size() == l_) s ^= e.flips;
    signatures_.push_back(s.to_uint());
  }
  for (double r : rates_)
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("rates must lie in [0, 1]");
}

BinaryCircuitModel x_only_model(const StabilizerCode& code, std::span<const double> rates) {
  if (rates.size() != code.num_qubits())
    throw std::invalid_argument("x_only_model needs one rate per qubit");
  std::vector<ErrorEvent> errors;
  for (std::size_t q = 0; q < code.num_qubits(); ++q)
    errors.emplace_back(PauliString::single(code.num_qubits(), q, Pauli::X), Syndrome(0));
  return BinaryCircuitModel(code, std::move(errors), {rates.begin(), rates.end()});
}

namespace {

// Enumerates the 2^m on/off patterns with probabilities and total syndrome.
template <typename Visitor>
void enumerate_patterns(const BinaryCircuitModel& model, Visitor&& visit) {
  const std::size_t m = model.num_errors();
  if (m > 24) throw BudgetError("pattern enumeration refused", std::pow(2.0, double(m)));
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t pattern = 0; pattern < total; ++pattern) {
    double p = 1.0;
    std::uint64_t syn = 0;
    for (std::size_t q = 0; q < m; ++q) {
      if (pattern >> q & 1) {
        p *= model.rate(q);
        syn ^= model.signature(q);
      } else {
        p *= 1.0 - model.rate(q);
      }
    }
    visit(pattern, p, syn);
  }
}

}  // namespace

SyndromeMoments exact_moments(const BinaryCircuitModel& model, std::size_t i, std::size_t j) {
  if (i >= model.num_syndrome_bits() || j >= model.num_syndrome_bits())
    throw std::invalid_argument("syndrome bit index out of range");
  SyndromeMoments m;
  enumerate_patterns(model, [&](std::uint64_t, double p, std::uint64_t syn) {
    const bool s1 = syn >> i & 1;
    const bool s2 = syn >> j & 1;
    m.e1 += s1 * p;
    m.e2 += s2 * p;
    m.e11 += (s1 && s2) * p;
    m.exor += (s1 != s2) * p;
  });
  return m;
}

double exact_mean(const BinaryCircuitModel& model, std::size_t i) {
  if (i >= model.num_syndrome_bits()) throw std::invalid_argument("syndrome bit index out of range");
  double prod = 1.0;
  for (std::size_t q = 0; q < model.num_errors(); ++q)
    if (model.flips(q, i)) prod *= 1.0 - 2.0 * model.rate(q);
  return (1.0 - prod) / 2.0;
}

SyndromeMoments sampled_moments(const BinaryCircuitModel& model, std::size_t i, std::size_t j,
                                std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be positive");
  if (i >= model.num_syndrome_bits() || j >= model.num_syndrome_bits())
    throw std::invalid_argument("syndrome bit index out of range");
  std::uint64_t c1 = 0, c2 = 0, c11 = 0, cx = 0;
  for (std::uint64_t t = 0; t < n_samples; ++t) {
    Rng rng(derive_seed(seed, kMomentStreamTag, t));
    std::uint64_t syn = 0;
    for (std::size_t q = 0; q < model.num_errors(); ++q)
      if (rng.bernoulli(model.rate(q))) syn ^= model.signature(q);
    const bool s1 = syn >> i & 1;
    const bool s2 = syn >> j & 1;
    c1 += s1;
    c2 += s2;
    c11 += s1 && s2;
    cx += s1 != s2;
  }
  SyndromeMoments m;
  m.e1 = double(c1) / double(n_samples);
  m.e2 = double(c2) / double(n_samples);
  m.e11 = double(c11) / double(n_samples);
  m.exor = double(cx) / double(n_samples);
  m.n_samples = n_samples;
  return m;
}

double so1_estimate(const SyndromeMoments& m) {
  const double denom = 1.0 - 2.0 * m.exor;
  if (std::fabs(denom) <= 1e-9)
    throw IllConditionedError("SO-1 denominator 1 - 2E[S1 xor S2] is numerically zero");
  double product = (m.e11 - m.e1 * m.e2) / denom;
  // Sampling noise may push the product slightly out of range; tolerate a
  // small excursion before declaring the moments inconsistent.
  const double tol = m.n_samples == 0 ? 1e-12 : 10.0 / std::sqrt(double(m.n_samples));
  if (product < -tol || product > 0.25 + tol)
    throw InconsistentMomentsError("SO-1 product " + std::to_string(product) +
                                   " outside [0, 1/4]");
  product = std::fmin(std::fmax(product, 0.0), 0.25);
  // Roots are symmetric around 1/2; physical rates take the lower one.
  return (1.0 - std::sqrt(1.0 - 4.0 * product)) / 2.0;
}

So2Result so2_estimate(double mean_s, std::span<const double> known_rates) {
  double prod = 1.0;
  for (double r : known_rates) {
    const double f = 1.0 - 2.0 * r;
    if (std::fabs(f) <= 1e-9)
      throw IllConditionedError("SO-2 known factor 1 - 2 theta is numerically zero");
    prod *= f;
  }
  const double ratio = (1.0 - 2.0 * mean_s) / prod;
  So2Result r;
  r.theta = (1.0 - ratio) / 2.0;
  if (r.theta < 0.0 || r.theta > 1.0) {
    r.theta = std::fmin(std::fmax(r.theta, 0.0), 1.0);
    r.clamped = true;
  }
  return r;
}

So1Preconditions check_so1_preconditions(const BinaryCircuitModel& model, std::size_t i,
                                         std::size_t j, std::size_t q) {
  if (q >= model.num_errors()) throw std::invalid_argument("error index out of range");
  if (i >= model.num_syndrome_bits() || j >= model.num_syndrome_bits())
    throw std::invalid_argument("syndrome bit index out of range");

  // Joint distribution over (S_i, S_j, X_q).
  double joint[2][2][2] = {};
  enumerate_patterns(model, [&](std::uint64_t pattern, double p, std::uint64_t syn) {
    joint[syn >> i & 1][syn >> j & 1][pattern >> q & 1] += p;
  });

  double p_x[2] = {};
  double p_s1_given_x[2][2] = {};  // [value][x]
  double p_s2_given_x[2][2] = {};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x) p_x[x] += joint[a][b][x];
  for (int x = 0; x < 2; ++x) {
    if (p_x[x] == 0.0) continue;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        p_s1_given_x[a][x] += joint[a][b][x] / p_x[x];
        p_s2_given_x[b][x] += joint[a][b][x] / p_x[x];
      }
  }

  So1Preconditions out;
  // 1: the event S1 = S2 is independent of X.
  const double p_eq = joint[0][0][0] + joint[0][0][1] + joint[1][1][0] + joint[1][1][1];
  for (int x = 0; x < 2; ++x) {
    if (p_x[x] == 0.0) continue;
    const double p_eq_x = (joint[0][0][x] + joint[1][1][x]) / p_x[x];
    out.dev_equal = std::fmax(out.dev_equal, std::fabs(p_eq_x - p_eq));
  }
  // 2: P[S = 1 | X = 1] = P[S = 0 | X = 0] for both bits.
  out.dev_symmetric = std::fmax(std::fabs(p_s1_given_x[1][1] - p_s1_given_x[0][0]),
                                std::fabs(p_s2_given_x[1][1] - p_s2_given_x[0][0]));
  // 3: conditional independence of S1 and S2 given X.
  for (int x = 0; x < 2; ++x) {
    if (p_x[x] == 0.0) continue;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const double lhs = joint[a][b][x] / p_x[x];
        const double rhs = p_s1_given_x[a][x] * p_s2_given_x[b][x];
        out.dev_independent = std::fmax(out.dev_independent, std::fabs(lhs - rhs));
      }
  }

  constexpr double tol = 1e-12;
  out.equal_given_x = out.dev_equal < tol;
  out.symmetric = out.dev_symmetric < tol;
  out.cond_independent = out.dev_independent < tol;
  return out;
}

EquationCount count_equations(const BinaryCircuitModel& model) {
  EquationCount c;
  const std::size_t l = model.num_syndrome_bits();
  c.max_so1_pairs = l * (l - 1) / 2;
  c.so2_equations = l;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j) {
      for (std::size_t q = 0; q < model.num_errors(); ++q) {
        if (check_so1_preconditions(model, i, j, q).all_hold()) {
          ++c.usable_so1_pairs;
          break;
        }
      }
    }
  return c;
}

}  // namespace syndromest
