#include "syndromest/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace syndromest {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

bool get_bit(const std::vector<std::uint64_t>& w, std::size_t i) {
  return (w[i / 64] >> (i % 64)) & 1;
}

void assign_bit(std::vector<std::uint64_t>& w, std::size_t i, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (v)
    w[i / 64] |= mask;
  else
    w[i / 64] &= ~mask;
}

std::size_t parity_of_and(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
  return std::popcount(acc) & 1;
}

std::size_t hash_words(std::size_t seed, const std::vector<std::uint64_t>& w) {
  std::size_t h = seed;
  for (std::uint64_t v : w) h = h * 0x9e3779b97f4a7c15ULL + (v ^ (v >> 32));
  return h;
}

}  // namespace

char pauli_char(Pauli e) {
  switch (e) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(std::size_t n) : n_(n), x_(words_for(n), 0), z_(words_for(n), 0) {}

PauliString PauliString::from_string(std::string_view s) {
  PauliString p(s.size());
  for (std::size_t q = 0; q < s.size(); ++q) p.set(q, pauli_from_char(s[q]));
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t qubit, Pauli e) {
  PauliString p(n);
  if (qubit >= n) throw std::invalid_argument("qubit index out of range");
  p.set(qubit, e);
  return p;
}

Pauli PauliString::at(std::size_t q) const {
  return pauli_from_bits(get_bit(x_, q), get_bit(z_, q));
}

void PauliString::set(std::size_t q, Pauli e) {
  if (q >= n_) throw std::invalid_argument("qubit index out of range");
  assign_bit(x_, q, x_bit(e));
  assign_bit(z_, q, z_bit(e));
}

PauliString& PauliString::operator*=(const PauliString& other) {
  if (n_ != other.n_) throw std::invalid_argument("PauliString length mismatch");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    x_[i] ^= other.x_[i];
    z_[i] ^= other.z_[i];
  }
  return *this;
}

bool PauliString::is_identity() const {
  for (std::size_t i = 0; i < x_.size(); ++i)
    if (x_[i] | z_[i]) return false;
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
  return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
  return ((parity_of_and(x_, other.z_) + parity_of_and(z_, other.x_)) & 1) == 0;
}

std::string PauliString::str() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = pauli_char(at(q));
  return s;
}

bool PauliString::operator<(const PauliString& other) const {
  if (n_ != other.n_) return n_ < other.n_;
  for (std::size_t q = 0; q < n_; ++q) {
    const auto a = static_cast<std::uint8_t>(at(q));
    const auto b = static_cast<std::uint8_t>(other.at(q));
    if (a != b) return a < b;
  }
  return false;
}

std::size_t PauliString::hash() const {
  return hash_words(hash_words(n_ * 0x100000001b3ULL + 7, x_), z_);
}

bool commutes(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("commutes: operand lengths differ");
  return a.commutes_with(b);
}

Syndrome::Syndrome(std::size_t l) : l_(l), bits_(words_for(l), 0) {}

Syndrome Syndrome::from_string(std::string_view bits) {
  Syndrome s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("syndrome bits must be 0/1");
    s.set_bit(i, bits[i] == '1');
  }
  return s;
}

Syndrome Syndrome::from_uint(std::size_t l, std::uint64_t v) {
  if (l > 64) throw std::invalid_argument("from_uint supports at most 64 bits");
  Syndrome s(l);
  if (l > 0) s.bits_[0] = l == 64 ? v : (v & ((std::uint64_t{1} << l) - 1));
  return s;
}

bool Syndrome::bit(std::size_t i) const { return get_bit(bits_, i); }

void Syndrome::set_bit(std::size_t i, bool v) {
  if (i >= l_) throw std::invalid_argument("syndrome bit index out of range");
  assign_bit(bits_, i, v);
}

bool Syndrome::is_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

Syndrome& Syndrome::operator^=(const Syndrome& other) {
  if (l_ != other.l_) throw std::invalid_argument("Syndrome length mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= other.bits_[i];
  return *this;
}

std::uint64_t Syndrome::to_uint() const {
  if (l_ > 64) throw std::invalid_argument("to_uint supports at most 64 bits");
  return bits_.empty() ? 0 : bits_[0];
}

std::string Syndrome::str() const {
  std::string s(l_, '0');
  for (std::size_t i = 0; i < l_; ++i) s[i] = bit(i) ? '1' : '0';
  return s;
}

std::size_t Syndrome::hash() const { return hash_words(l_ * 0xc2b2ae3d27d4eb4fULL + 3, bits_); }

StabilizerCode::StabilizerCode(std::size_t n, std::vector<PauliString> generators,
                               std::vector<std::pair<PauliString, PauliString>> logicals)
    : n_(n), generators_(std::move(generators)), logicals_(std::move(logicals)) {
  const std::size_t l = generators_.size();
  if (l > n_) throw std::invalid_argument("more generators than qubits");
  for (const auto& g : generators_)
    if (g.num_qubits() != n_) throw std::invalid_argument("generator length != n");
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j)
      if (!generators_[i].commutes_with(generators_[j]))
        throw std::invalid_argument("generators do not commute");

  // F_2 independence of the generators, so every syndrome coset has the same
  // size 4^n / 2^l.
  {
    std::vector<std::vector<std::uint8_t>> rows;
    for (const auto& g : generators_) {
      std::vector<std::uint8_t> row(2 * n_, 0);
      for (std::size_t q = 0; q < n_; ++q) {
        row[q] = x_bit(g.at(q));
        row[n_ + q] = z_bit(g.at(q));
      }
      rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 2 * n_ && rank < rows.size(); ++col) {
      std::size_t pivot = rank;
      while (pivot < rows.size() && !rows[pivot][col]) ++pivot;
      if (pivot == rows.size()) continue;
      std::swap(rows[rank], rows[pivot]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r != rank && rows[r][col])
          for (std::size_t c = 0; c < 2 * n_; ++c) rows[r][c] ^= rows[rank][c];
      }
      ++rank;
    }
    if (rank != l) throw std::invalid_argument("generators are not independent");
  }

  for (const auto& [xl, zl] : logicals_) {
    if (xl.num_qubits() != n_ || zl.num_qubits() != n_)
      throw std::invalid_argument("logical operator length != n");
    for (const auto& g : generators_) {
      if (!xl.commutes_with(g) || !zl.commutes_with(g))
        throw std::invalid_argument("logical operator does not commute with a generator");
    }
    if (xl.commutes_with(zl))
      throw std::invalid_argument("paired logicals must anti-commute");
  }
  for (std::size_t i = 0; i < logicals_.size(); ++i)
    for (std::size_t j = 0; j < logicals_.size(); ++j) {
      if (i == j) continue;
      if (!logicals_[i].first.commutes_with(logicals_[j].second) ||
          !logicals_[i].first.commutes_with(logicals_[j].first) ||
          !logicals_[i].second.commutes_with(logicals_[j].second))
        throw std::invalid_argument("logical operators of different pairs must commute");
    }

  // Perfectness by enumeration: the 3n single-qubit errors hit the 2^l - 1
  // nonzero syndromes bijectively.
  if (l <= 63 && 3 * n_ == (std::uint64_t{1} << l) - 1) {
    std::vector<std::pair<std::size_t, Pauli>> table(std::uint64_t{1} << l,
                                                     {std::size_t(-1), Pauli::I});
    bool ok = true;
    for (std::size_t q = 0; q < n_ && ok; ++q) {
      for (Pauli e : {Pauli::X, Pauli::Y, Pauli::Z}) {
        const Syndrome s = syndrome(PauliString::single(n_, q, e));
        const std::uint64_t v = s.to_uint();
        if (v == 0 || table[v].first != std::size_t(-1)) {
          ok = false;
          break;
        }
        table[v] = {q, e};
      }
    }
    if (ok) {
      perfect_ = true;
      inverse_table_ = std::move(table);
    }
  }
}

Syndrome StabilizerCode::syndrome(const PauliString& e) const {
  if (e.num_qubits() != n_) throw std::invalid_argument("syndrome: error length != n");
  Syndrome s(generators_.size());
  for (std::size_t i = 0; i < generators_.size(); ++i)
    s.set_bit(i, !e.commutes_with(generators_[i]));
  return s;
}

PauliString StabilizerCode::syndrome_inverse(const Syndrome& s) const {
  if (!perfect_) throw UnsupportedError("syndrome_inverse requires a perfect code");
  if (s.size() != generators_.size()) throw std::invalid_argument("syndrome length mismatch");
  if (s.is_zero()) throw std::domain_error("syndrome_inverse: zero syndrome has no weight-1 error");
  const auto [q, e] = inverse_table_[s.to_uint()];
  return PauliString::single(n_, q, e);
}

LogicalClass StabilizerCode::logical_class(const PauliString& e) const {
  if (logicals_.empty()) throw UnsupportedError("code has no logical operators");
  if (logicals_.size() != 1) throw UnsupportedError("logical_class implemented for k = 1 codes");
  if (e.num_qubits() != n_) throw std::invalid_argument("logical_class: error length != n");
  const bool xpart = !e.commutes_with(logicals_[0].second);  // anti-commutes with Z_L
  const bool zpart = !e.commutes_with(logicals_[0].first);   // anti-commutes with X_L
  return LogicalClass{pauli_from_bits(xpart, zpart)};
}

std::vector<PauliString> enumerate_coset(const StabilizerCode& code, const Syndrome& s) {
  const std::size_t n = code.num_qubits();
  if (n > 12)
    throw BudgetError("enumerate_coset refused: 4^n too large", std::pow(4.0, double(n)));
  if (s.size() != code.num_generators()) throw std::invalid_argument("syndrome length mismatch");

  // Syndromes of single-qubit errors, combined per digit.
  std::vector<std::array<std::uint64_t, 4>> single(n);
  for (std::size_t q = 0; q < n; ++q) {
    single[q][0] = 0;
    for (Pauli e : {Pauli::X, Pauli::Y, Pauli::Z})
      single[q][static_cast<int>(e)] = code.syndrome(PauliString::single(n, q, e)).to_uint();
  }

  const std::uint64_t target = s.to_uint();
  std::vector<PauliString> out;
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  for (std::uint64_t a = 0; a < total; ++a) {
    std::uint64_t acc = 0;
    for (std::size_t q = 0; q < n; ++q) acc ^= single[q][(a >> (2 * q)) & 3];
    if (acc != target) continue;
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) p.set(q, static_cast<Pauli>((a >> (2 * q)) & 3));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace syndromest
