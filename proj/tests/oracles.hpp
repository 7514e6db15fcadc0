#pragma once

// Brute-force oracles used by the tests. Everything here is deliberately
// independent of the library's inference path: matrix algebra for
// commutation, plain enumeration for posteriors and MAP.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "syndromest/codes.hpp"
#include "syndromest/decoder.hpp"
#include "syndromest/pauli.hpp"

namespace syndromest::oracle {

using CMat = std::vector<std::vector<std::complex<double>>>;

inline CMat pauli_matrix(Pauli e) {
  const std::complex<double> i(0, 1);
  switch (e) {
    case Pauli::I: return {{1, 0}, {0, 1}};
    case Pauli::X: return {{0, 1}, {1, 0}};
    case Pauli::Y: return {{0, -i}, {i, 0}};
    case Pauli::Z: return {{1, 0}, {0, -1}};
  }
  return {};
}

inline CMat kron(const CMat& a, const CMat& b) {
  const std::size_t na = a.size(), nb = b.size();
  CMat out(na * nb, std::vector<std::complex<double>>(na * nb));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
  return out;
}

inline CMat matmul(const CMat& a, const CMat& b) {
  const std::size_t n = a.size();
  CMat out(n, std::vector<std::complex<double>>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

// Ground truth commutation by multiplying the actual operators.
inline bool commute_matrices(const PauliString& a, const PauliString& b) {
  CMat ma = pauli_matrix(a.at(0)), mb = pauli_matrix(b.at(0));
  for (std::size_t q = 1; q < a.num_qubits(); ++q) {
    ma = kron(ma, pauli_matrix(a.at(q)));
    mb = kron(mb, pauli_matrix(b.at(q)));
  }
  const CMat ab = matmul(ma, mb), ba = matmul(mb, ma);
  double diff = 0;
  for (std::size_t i = 0; i < ab.size(); ++i)
    for (std::size_t j = 0; j < ab.size(); ++j) diff += std::abs(ab[i][j] - ba[i][j]);
  return diff < 1e-12;
}

// All 2^l elements of the stabilizer group.
inline std::vector<PauliString> stabilizer_group(const StabilizerCode& code) {
  std::vector<PauliString> out;
  const std::size_t l = code.num_generators();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << l); ++mask) {
    PauliString p(code.num_qubits());
    for (std::size_t i = 0; i < l; ++i)
      if (mask >> i & 1) p *= code.generators()[i];
    out.push_back(std::move(p));
  }
  return out;
}

// Exact posterior quantities of the concatenated model by enumeration over
// all 4^n_leaves leaf assignments. With flip rates the readout flips are
// determined by the observed syndrome, so no extra enumeration is needed.
struct BrutePosterior {
  double p_s = 0.0;                         // P[S]
  std::array<double, 4> root{};             // P[root class | S]
  std::vector<std::array<double, 4>> leaf;  // P[E_i = e | S]
  std::vector<double> flip;                 // P[f_b = 1 | S]
};

inline BrutePosterior brute_posteriors(const ConcatTree& tree, const SingleQubitPauliRates& rates,
                                       std::span<const double> flip_rates,
                                       const Syndrome& observed) {
  const std::size_t n = tree.num_leaves();
  if (n > 9) throw std::invalid_argument("brute_posteriors guard: too many leaves");
  const bool meas = !flip_rates.empty();

  BrutePosterior out;
  out.leaf.assign(n, {});
  out.flip.assign(meas ? tree.num_syndrome_bits() : 0, 0.0);

  std::vector<Pauli> leaves(n, Pauli::I);
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  for (std::uint64_t a = 0; a < total; ++a) {
    for (std::size_t q = 0; q < n; ++q) leaves[q] = static_cast<Pauli>((a >> (2 * q)) & 3);
    double w = 1.0;
    for (std::size_t q = 0; q < n; ++q) w *= rates[q][leaves[q]];
    if (w == 0.0) continue;
    const ConcatTree::Fold fold = tree.fold(leaves);
    Syndrome phi = fold.syndrome;
    phi ^= observed;
    if (meas) {
      for (std::size_t b = 0; b < flip_rates.size(); ++b)
        w *= phi.bit(b) ? flip_rates[b] : 1.0 - flip_rates[b];
      if (w == 0.0) continue;
    } else if (!phi.is_zero()) {
      continue;
    }
    out.p_s += w;
    out.root[static_cast<int>(fold.root_class)] += w;
    for (std::size_t q = 0; q < n; ++q) out.leaf[q][static_cast<int>(leaves[q])] += w;
    for (std::size_t b = 0; b < out.flip.size(); ++b)
      if (phi.bit(b)) out.flip[b] += w;
  }

  if (out.p_s > 0.0) {
    for (double& v : out.root) v /= out.p_s;
    for (auto& row : out.leaf)
      for (double& v : row) v /= out.p_s;
    for (double& v : out.flip) v /= out.p_s;
  }
  return out;
}

// Brute-force joint MAP over (leaf assignment, flips); ties resolved toward
// the lexicographically smallest (class, assignment).
struct BruteMap {
  std::vector<Pauli> leaves;
  Syndrome flips;
  double log_weight = 0.0;
};

inline BruteMap brute_map(const ConcatTree& tree, const SingleQubitPauliRates& rates,
                          std::span<const double> flip_rates, const Syndrome& observed) {
  const std::size_t n = tree.num_leaves();
  if (n > 9) throw std::invalid_argument("brute_map guard: too many leaves");
  const bool meas = !flip_rates.empty();

  BruteMap best;
  best.log_weight = -std::numeric_limits<double>::infinity();
  bool found = false;

  std::vector<Pauli> leaves(n, Pauli::I);
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  // Scan order: ascending class, then leaf string lexicographic (leaf 1 most
  // significant digit), matching the library's tie-break contract.
  std::vector<std::pair<std::pair<int, std::uint64_t>, std::uint64_t>> order;
  order.reserve(total);
  for (std::uint64_t a = 0; a < total; ++a) {
    for (std::size_t q = 0; q < n; ++q) leaves[q] = static_cast<Pauli>((a >> (2 * q)) & 3);
    const ConcatTree::Fold fold = tree.fold(leaves);
    std::uint64_t lex = 0;
    for (std::size_t q = 0; q < n; ++q) lex = (lex << 2) | std::uint64_t(leaves[q]);
    order.push_back({{static_cast<int>(fold.root_class), lex}, a});
  }
  std::sort(order.begin(), order.end());

  for (const auto& [key, a] : order) {
    for (std::size_t q = 0; q < n; ++q) leaves[q] = static_cast<Pauli>((a >> (2 * q)) & 3);
    double w = 0.0;
    bool zero = false;
    for (std::size_t q = 0; q < n; ++q) {
      const double r = rates[q][leaves[q]];
      if (r == 0.0) zero = true;
      w += std::log(r);
    }
    const ConcatTree::Fold fold = tree.fold(leaves);
    Syndrome phi = fold.syndrome;
    phi ^= observed;
    if (meas) {
      for (std::size_t b = 0; b < flip_rates.size(); ++b) {
        const double r = phi.bit(b) ? flip_rates[b] : 1.0 - flip_rates[b];
        if (r == 0.0) zero = true;
        w += std::log(r);
      }
    } else if (!phi.is_zero()) {
      continue;
    }
    if (zero) continue;
    if (!found || w > best.log_weight + 1e-12) {
      best.leaves = leaves;
      best.flips = meas ? phi : Syndrome(tree.num_syndrome_bits());
      best.log_weight = w;
      found = true;
    }
  }
  return best;
}

}  // namespace syndromest::oracle
