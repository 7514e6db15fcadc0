#include "syndromest/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace syndromest {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 400; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-15) break;
  }
  return h;
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("beta parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double inv_reg_inc_beta(double a, double b, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (reg_inc_beta(a, b, mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> clopper_pearson(std::uint64_t k, std::uint64_t n, double confidence) {
  if (n == 0) throw std::invalid_argument("clopper_pearson needs n >= 1");
  if (k > n) throw std::invalid_argument("k must not exceed n");
  const double alpha = 1.0 - confidence;
  const double lo =
      k == 0 ? 0.0 : inv_reg_inc_beta(double(k), double(n - k + 1), alpha / 2.0);
  const double hi =
      k == n ? 1.0 : inv_reg_inc_beta(double(k + 1), double(n - k), 1.0 - alpha / 2.0);
  return {lo, hi};
}

double percentile_linear(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("percentile of empty range");
  if (q <= 0.0) return sorted.front();
  if (q >= 1.0) return sorted.back();
  const double pos = q * double(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - double(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double mean(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return values.empty() ? 0.0 : s / double(values.size());
}

double variance(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double m = mean(values);
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return s / double(values.size());
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return percentile_linear(values, 0.5);
}

BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("box_stats of empty range");
  std::sort(values.begin(), values.end());
  BoxStats b;
  b.q1 = percentile_linear(values, 0.25);
  b.median = percentile_linear(values, 0.5);
  b.q3 = percentile_linear(values, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo_limit = b.q1 - 1.5 * iqr;
  const double hi_limit = b.q3 + 1.5 * iqr;
  b.whisker_lo = b.q3;
  b.whisker_hi = b.q1;
  for (double v : values) {
    if (v >= lo_limit && v <= hi_limit) {
      b.whisker_lo = std::min(b.whisker_lo, v);
      b.whisker_hi = std::max(b.whisker_hi, v);
    } else {
      b.outliers.push_back(v);
    }
  }
  return b;
}

}  // namespace syndromest
