#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace syndromest {

// Regularized incomplete beta function I_x(a, b).
double reg_inc_beta(double a, double b, double x);

// Smallest x with I_x(a, b) >= p (bisection).
double inv_reg_inc_beta(double a, double b, double p);

// Two-sided Clopper-Pearson interval for k successes in n trials.
std::pair<double, double> clopper_pearson(std::uint64_t k, std::uint64_t n,
                                          double confidence = 0.95);

// Quantile with linear interpolation between order statistics (position
// (n-1)*q); input must be sorted.
double percentile_linear(std::span<const double> sorted, double q);

double mean(std::span<const double> values);
double variance(std::span<const double> values);  // population variance
double median(std::vector<double> values);        // by copy; input order free

// Box-plot statistics in the usual convention: whiskers at the last data
// point within 1.5 IQR of the box, points beyond listed as outliers.
struct BoxStats {
  double q1 = 0, median = 0, q3 = 0;
  double whisker_lo = 0, whisker_hi = 0;
  std::vector<double> outliers;
};
BoxStats box_stats(std::vector<double> values);

}  // namespace syndromest
