#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "syndromest/noise.hpp"
#include "syndromest/pauli.hpp"

namespace syndromest {

// Independent binary circuit noise: elementary errors X_1..X_m firing
// independently with rates theta_q. Only the syndrome signature of each
// error matters (which bits it flips, data commutation XOR readout flip).
class BinaryCircuitModel {
 public:
  BinaryCircuitModel(const StabilizerCode& code, std::vector<ErrorEvent> errors,
                     std::vector<double> rates);

  std::size_t num_errors() const { return rates_.size(); }
  std::size_t num_syndrome_bits() const { return l_; }
  double rate(std::size_t q) const { return rates_[q]; }
  // True iff error q flips syndrome bit i.
  bool flips(std::size_t q, std::size_t i) const { return (signatures_[q] >> i) & 1; }
  std::uint64_t signature(std::size_t q) const { return signatures_[q]; }

 private:
  std::size_t l_;
  std::vector<std::uint64_t> signatures_;
  std::vector<double> rates_;
};

struct SyndromeMoments {
  double e1 = 0;    // E[S_1]
  double e2 = 0;    // E[S_2]
  double e11 = 0;   // E[S_1 S_2]
  double exor = 0;  // E[S_1 xor S_2]
  std::uint64_t n_samples = 0;  // 0 = exact
};

// Exact moments by enumeration over the 2^m error patterns.
SyndromeMoments exact_moments(const BinaryCircuitModel& model, std::size_t i, std::size_t j);
// E[S_i] alone; exact via the product identity 1 - 2E[S] = prod (1 - 2 theta).
double exact_mean(const BinaryCircuitModel& model, std::size_t i);
// Plug-in moments from sampled syndromes.
SyndromeMoments sampled_moments(const BinaryCircuitModel& model, std::size_t i, std::size_t j,
                                std::uint64_t n_samples, std::uint64_t seed);

// theta(1 - theta) = (E[S1 S2] - E[S1] E[S2]) / (1 - 2 E[S1 xor S2]),
// solved with the root <= 1/2. Throws IllConditionedError when the
// denominator is within 1e-9 of zero, InconsistentMomentsError when the
// product falls outside [0, 1/4] beyond tolerance.
double so1_estimate(const SyndromeMoments& m);

struct So2Result {
  double theta = 0;
  bool clamped = false;  // raw solution fell outside [0, 1]
};

// Solves 1 - 2 theta_1 = (1 - 2 E[S]) / prod_i (1 - 2 theta_i) for the one
// unknown rate among the errors anti-commuting with S.
So2Result so2_estimate(double mean_s, std::span<const double> known_rates);

// The three SO-1 preconditions, verified by exact enumeration.
struct So1Preconditions {
  bool equal_given_x = false;    // P[S1 = S2 | X] = P[S1 = S2]
  bool symmetric = false;        // P[S_i = 1 | X] = P[S_i = 0 | not X]
  bool cond_independent = false; // S1 independent of S2 given X
  double dev_equal = 0, dev_symmetric = 0, dev_independent = 0;
  bool all_hold() const { return equal_given_x && symmetric && cond_independent; }
};
So1Preconditions check_so1_preconditions(const BinaryCircuitModel& model, std::size_t i,
                                         std::size_t j, std::size_t q);

// How many estimation equations the closed-form route offers on this model:
// SO-1 pairs whose preconditions hold for some elementary error, plus one
// SO-2 equation per syndrome bit, against the theoretical maximum
// C(l, 2) + l.
struct EquationCount {
  std::size_t usable_so1_pairs = 0;
  std::size_t so2_equations = 0;
  std::size_t max_so1_pairs = 0;
};
EquationCount count_equations(const BinaryCircuitModel& model);

// X-only binary noise on a code: one elementary error X^(q) per qubit.
BinaryCircuitModel x_only_model(const StabilizerCode& code, std::span<const double> rates);

}  // namespace syndromest
