#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "syndromest/errors.hpp"

namespace syndromest {

// Single-qubit Pauli modulo phase. The numeric order I < X < Y < Z is also
// the lexicographic order used for deterministic tie-breaking.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<Pauli, 4> kPaulis = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

constexpr bool x_bit(Pauli e) { return e == Pauli::X || e == Pauli::Y; }
constexpr bool z_bit(Pauli e) { return e == Pauli::Z || e == Pauli::Y; }

constexpr Pauli pauli_from_bits(bool x, bool z) {
  constexpr std::array<Pauli, 4> table = {Pauli::I, Pauli::X, Pauli::Z, Pauli::Y};
  return table[(x ? 1 : 0) | (z ? 2 : 0)];
}

// Product modulo phase: component-wise XOR of the symplectic bits.
constexpr Pauli operator*(Pauli a, Pauli b) {
  return pauli_from_bits(x_bit(a) != x_bit(b), z_bit(a) != z_bit(b));
}

// True iff a and b anti-commute.
constexpr bool anticommute(Pauli a, Pauli b) {
  return (x_bit(a) && z_bit(b)) != (z_bit(a) && x_bit(b));
}

char pauli_char(Pauli e);
Pauli pauli_from_char(char c);

// n-qubit Pauli string modulo phase, as packed symplectic (x, z) bit vectors.
// Qubit q lives at bit q % 64 of word q / 64. Multiplication is XOR; phases
// are dropped permanently.
class PauliString {
 public:
  explicit PauliString(std::size_t n);
  static PauliString from_string(std::string_view s);  // leftmost char = qubit 1
  static PauliString single(std::size_t n, std::size_t qubit, Pauli e);

  std::size_t num_qubits() const { return n_; }
  Pauli at(std::size_t q) const;
  void set(std::size_t q, Pauli e);

  PauliString& operator*=(const PauliString& other);
  friend PauliString operator*(PauliString a, const PauliString& b) { return a *= b; }

  bool is_identity() const;
  std::size_t weight() const;

  // Symplectic product a.x*b.z + a.z*b.x mod 2; zero means commuting.
  bool commutes_with(const PauliString& other) const;

  std::string str() const;
  bool operator==(const PauliString& other) const { return n_ == other.n_ && x_ == other.x_ && z_ == other.z_; }
  bool operator<(const PauliString& other) const;
  std::size_t hash() const;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> x_, z_;
};

// true iff a and b commute in the effective Pauli group; throws on a length
// mismatch.
bool commutes(const PauliString& a, const PauliString& b);

// l-bit syndrome, bit i = outcome of generator g_i.
class Syndrome {
 public:
  Syndrome() : l_(0) {}
  explicit Syndrome(std::size_t l);
  static Syndrome from_string(std::string_view bits);         // "0101", leftmost = bit of g_1
  static Syndrome from_uint(std::size_t l, std::uint64_t v);  // bit i of v = generator i

  std::size_t size() const { return l_; }
  bool bit(std::size_t i) const;
  void set_bit(std::size_t i, bool v);
  bool is_zero() const;

  Syndrome& operator^=(const Syndrome& other);
  friend Syndrome operator^(Syndrome a, const Syndrome& b) { return a ^= b; }

  std::uint64_t to_uint() const;  // requires l <= 64
  std::string str() const;
  bool operator==(const Syndrome& other) const { return l_ == other.l_ && bits_ == other.bits_; }
  std::size_t hash() const;

 private:
  std::size_t l_;
  std::vector<std::uint64_t> bits_;
};

struct SyndromeHash {
  std::size_t operator()(const Syndrome& s) const { return s.hash(); }
};
struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const { return p.hash(); }
};

// Coset label of an error with respect to the logical operators of a k=1
// code: X^a Z^b with a = <e, Z_L>, b = <e, X_L>. The map is a group
// homomorphism, constant on stabilizer cosets, and sends X_L -> X, Z_L -> Z.
struct LogicalClass {
  Pauli value = Pauli::I;
  bool operator==(const LogicalClass&) const = default;
  std::string str() const { return std::string(1, pauli_char(value)); }
};

// Stabilizer code given by its generator list. All structural invariants
// (generator commutation, F_2 independence, logical operator algebra) are
// verified at construction; perfectness is established by enumerating the
// weight-1 errors, never assumed.
class StabilizerCode {
 public:
  StabilizerCode(std::size_t n, std::vector<PauliString> generators,
                 std::vector<std::pair<PauliString, PauliString>> logicals = {});

  std::size_t num_qubits() const { return n_; }
  std::size_t num_generators() const { return generators_.size(); }
  std::size_t num_logical_qubits() const { return n_ - generators_.size(); }
  const std::vector<PauliString>& generators() const { return generators_; }
  bool has_logicals() const { return !logicals_.empty(); }
  const std::vector<std::pair<PauliString, PauliString>>& logicals() const { return logicals_; }

  Syndrome syndrome(const PauliString& e) const;

  // Unique weight-1 error with the given nonzero syndrome. Only defined for
  // perfect single-error-correcting codes.
  bool is_perfect() const { return perfect_; }
  PauliString syndrome_inverse(const Syndrome& s) const;

  LogicalClass logical_class(const PauliString& e) const;

 private:
  std::size_t n_;
  std::vector<PauliString> generators_;
  std::vector<std::pair<PauliString, PauliString>> logicals_;
  bool perfect_ = false;
  std::vector<std::pair<std::size_t, Pauli>> inverse_table_;  // syndrome value -> (qubit, pauli)
};

// All 4^n / 2^l errors with syndrome s. Guarded at n <= 12.
std::vector<PauliString> enumerate_coset(const StabilizerCode& code, const Syndrome& s);

}  // namespace syndromest
