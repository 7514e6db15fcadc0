#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "syndromest/noise.hpp"
#include "syndromest/pauli.hpp"

namespace syndromest {

// Rank analysis of a syndrome-statistics Jacobian. Rows are syndromes (the
// S = 0 row is kept; it is redundant by normalization and changes no rank),
// columns are model parameters.
struct JacobianReport {
  std::size_t rows = 0, cols = 0;
  std::vector<double> matrix;  // row-major
  std::vector<std::string> col_labels;
  std::vector<double> singular_values;  // descending
  double tolerance = 0.0;               // rank cutoff used
  std::size_t numerical_rank = 0;
  // sigma_r / sigma_{r+1}, or sigma_r / tolerance when no smaller singular
  // value exists. Large gaps mean the rank decision is stable.
  double gap = 0.0;
  bool locally_identifiable = false;  // full column rank

  double at(std::size_t row, std::size_t col) const { return matrix[row * cols + col]; }
};

// Rank analysis backend, exposed for reuse in tests.
JacobianReport analyze_matrix(std::size_t rows, std::size_t cols, std::vector<double> matrix,
                              std::vector<std::string> col_labels);

// Jacobian of the rate -> syndrome-statistics map at theta = 0: the column
// of an elementary error e is +1 at row S(e) and -1 at row 0. Full column
// rank iff all elementary-error syndromes are distinct and nonzero.
JacobianReport jacobian_at_zero(const StabilizerCode& code, const DecomposableModel& model);

// Transformed Jacobian J~[S, theta^i_e] =
// P[X_i=e|S]/P[X_i=e] - P[X_i=I|S]/P[X_i=I], with posteriors computed by
// exact enumeration. Requires all rates positive and all syndromes of
// positive probability; full column rank is the local identifiability
// criterion at interior points.
JacobianReport jtilde(const StabilizerCode& code, const DecomposableModel& model);

// Conditional syndrome weights P[S | E_qhat = e] of a perfect code at equal
// rates, in the literal weight form sum_E p^wt(E_-qhat) (1-p)^(n-1-wt).
// Checks that the values are independent of e whenever S differs from 0 and
// from the single-error syndromes S(e^(qhat)), S(e'^(qhat)).
struct ConditionalProbReport {
  std::vector<std::array<double, 4>> table;  // [syndrome value][e]
  double max_qualifying_deviation = 0.0;
  bool holds = false;
};
ConditionalProbReport equal_conditional_probs_check(const StabilizerCode& code, double p,
                                                    std::size_t qhat);

enum class KwCase { Matching, OtherOnQhat, OffQhat };

// Weight distribution k_w(e, qhat, S*) = #{E : E_qhat = e, wt(E_-qhat) = w,
// S(E) = S*} for w = 0..n-1.
struct WeightDistribution {
  std::size_t n = 0;
  std::size_t qhat = 0;
  Pauli e = Pauli::I;
  Syndrome sstar;
  KwCase tag = KwCase::OffQhat;
  std::vector<long long> k;
};

WeightDistribution kw_bruteforce(const StabilizerCode& code, Pauli e, std::size_t qhat,
                                 const Syndrome& sstar);

// Recursion l_w = 3^(w-1) C(n-1, w-1) - k_{w-1} - 3(n-w+1) k_{w-2}
// - 2(w-1) k_{w-1} - sum_{e' != e} k_{w-1}(e'), k_w = l_w / w, computed
// jointly for all four e since the last term couples them. Divisions must be
// exact; a remainder raises ConsistencyError. Requires a perfect code and
// S* != 0.
std::array<WeightDistribution, 4> kw_recursive(const StabilizerCode& code, std::size_t qhat,
                                               const Syndrome& sstar);

}  // namespace syndromest
