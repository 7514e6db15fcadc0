#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "syndromest/pauli.hpp"
#include "syndromest/rng.hpp"

namespace syndromest {

// Element of the error group P_n x F_2^l: a data Pauli plus syndrome-bit
// flips. The observed syndrome of (e, f) is S(e) XOR f.
struct ErrorEvent {
  PauliString data;
  Syndrome flips;

  ErrorEvent(std::size_t n, std::size_t l) : data(n), flips(l) {}
  ErrorEvent(PauliString d, Syndrome f) : data(std::move(d)), flips(std::move(f)) {}

  bool is_identity() const { return data.is_identity() && flips.is_zero(); }
  ErrorEvent& operator*=(const ErrorEvent& other) {
    data *= other.data;
    flips ^= other.flips;
    return *this;
  }
  friend ErrorEvent operator*(ErrorEvent a, const ErrorEvent& b) { return a *= b; }
  bool operator==(const ErrorEvent& other) const {
    return data == other.data && flips == other.flips;
  }
  std::size_t hash() const { return data.hash() * 0x9e3779b97f4a7c15ULL ^ flips.hash(); }
};

struct ErrorEventHash {
  std::size_t operator()(const ErrorEvent& e) const { return e.hash(); }
};

// One elementary-error set N_i: distinct non-identity events.
struct ErrorSet {
  std::vector<ErrorEvent> elements;
};

// Decomposable stochastic error model: disjoint sets N_1..N_m firing
// independently, set i contributing element e with rate theta^i_e and
// nothing with the leftover mass theta^i_I.
class DecomposableModel {
 public:
  DecomposableModel(std::size_t n, std::size_t l, std::vector<ErrorSet> sets,
                    std::vector<std::vector<double>> rates);

  std::size_t num_qubits() const { return n_; }
  std::size_t num_flip_bits() const { return l_; }
  std::size_t num_sets() const { return sets_.size(); }
  const ErrorSet& set(std::size_t i) const { return sets_[i]; }
  std::span<const double> rates(std::size_t i) const { return rates_[i]; }
  double identity_rate(std::size_t i) const;
  std::size_t num_parameters() const;

  void set_rate(std::size_t i, std::size_t k, double value);

 private:
  std::size_t n_, l_;
  std::vector<ErrorSet> sets_;
  std::vector<std::vector<double>> rates_;
};

// Per-qubit (theta_X, theta_Y, theta_Z).
struct QubitRates {
  double x = 0, y = 0, z = 0;
  double identity() const { return 1.0 - x - y - z; }
  double operator[](Pauli e) const {
    switch (e) {
      case Pauli::X: return x;
      case Pauli::Y: return y;
      case Pauli::Z: return z;
      default: return identity();
    }
  }
};
using SingleQubitPauliRates = std::vector<QubitRates>;

SingleQubitPauliRates depolarizing_rates(std::size_t n, double p);

// N_i = {X^(i), Y^(i), Z^(i)} per qubit, plus one single-flip set per
// syndrome bit when flip rates are given.
DecomposableModel model_from_rates(const SingleQubitPauliRates& rates, std::size_t l = 0,
                                   std::span<const double> flip_rates = {});

// Assignment: one choice per set, -1 meaning identity.
double event_probability(const DecomposableModel& model, std::span<const int> assignment);

ErrorEvent sample(const DecomposableModel& model, Rng& rng);

// Exact distribution of total errors P[E] = sum over assignments with
// product E. Budget-guarded on the assignment count.
std::unordered_map<ErrorEvent, double, ErrorEventHash> total_error_distribution(
    const DecomposableModel& model);

// P[S] over all 2^l syndromes of the code (flips XORed in); indexed by the
// syndrome's integer value.
std::vector<double> syndrome_distribution(const DecomposableModel& model,
                                          const StabilizerCode& code);

}  // namespace syndromest
