#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace syndromest {

// splitmix64 finalizer; used for seeding and for deriving child seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic seed derivation: master seed -> tagged stream -> item.
// Every parallel kernel derives a fresh seed per item so results do not
// depend on thread count or iteration interleaving.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
  return splitmix64(splitmix64(seed ^ 0x6a09e667f3bcc909ULL) + splitmix64(tag) + index);
}

// xoshiro256++ with fully specified sampling routines. Standard-library
// distributions are implementation-defined, so everything downstream of the
// raw engine is implemented here to keep outputs reproducible across
// platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) {
      x = splitmix64(x);
      w = x;
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a logarithm or power argument.
  double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Marsaglia polar method.
  double normal() {
    for (;;) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double r = u * u + v * v;
      if (r > 0.0 && r < 1.0) return u * std::sqrt(-2.0 * std::log(r) / r);
    }
  }

  // Marsaglia-Tsang; shape boost for shape < 1.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
    if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform_pos(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      const double x = normal();
      const double t = 1.0 + c * x;
      if (t <= 0.0) continue;
      const double v = t * t * t;
      const double u = uniform_pos();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Dirichlet draw with the given concentration parameters.
  void dirichlet(std::span<const double> concentration, std::span<double> out) {
    if (concentration.size() != out.size()) throw std::invalid_argument("dirichlet size mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = gamma(concentration[i]);
      total += out[i];
    }
    for (auto& v : out) v /= total;
  }

  // Index into `rates`, or -1 with the leftover probability mass.
  int pick_or_none(std::span<const double> rates) {
    double u = uniform();
    for (std::size_t i = 0; i < rates.size(); ++i) {
      if (u < rates[i]) return static_cast<int>(i);
      u -= rates[i];
    }
    return -1;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

}  // namespace syndromest
