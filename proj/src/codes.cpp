#include "syndromest/codes.hpp"

#include <cmath>
#include <stdexcept>

#include "syndromest/errors.hpp"

namespace syndromest {

StabilizerCode five_qubit_code() {
  std::vector<PauliString> gens = {
      PauliString::from_string("XZZXI"),
      PauliString::from_string("IXZZX"),
      PauliString::from_string("XIXZZ"),
      PauliString::from_string("ZXIXZ"),
  };
  std::vector<std::pair<PauliString, PauliString>> logicals = {
      {PauliString::from_string("XXXXX"), PauliString::from_string("ZZZZZ")}};
  return StabilizerCode(5, std::move(gens), std::move(logicals));
}

StabilizerCode steane_code() {
  // [7,4] Hamming parity checks; column q+1 is the binary representation of
  // q+1, so check r covers the qubits whose index has bit r set.
  std::vector<PauliString> gens;
  for (int r = 0; r < 3; ++r) {
    PauliString gx(7), gz(7);
    for (std::size_t q = 0; q < 7; ++q) {
      if ((q + 1) >> r & 1) {
        gx.set(q, Pauli::X);
        gz.set(q, Pauli::Z);
      }
    }
    gens.push_back(gx);
    gens.push_back(gz);
  }
  std::vector<std::pair<PauliString, PauliString>> logicals = {
      {PauliString::from_string("XXXXXXX"), PauliString::from_string("ZZZZZZZ")}};
  return StabilizerCode(7, std::move(gens), std::move(logicals));
}

StabilizerCode repetition_code(std::size_t n) {
  if (n < 2) throw std::invalid_argument("repetition_code requires n >= 2");
  std::vector<PauliString> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    PauliString g(n);
    g.set(i, Pauli::Z);
    g.set(i + 1, Pauli::Z);
    gens.push_back(std::move(g));
  }
  PauliString xl(n);
  for (std::size_t q = 0; q < n; ++q) xl.set(q, Pauli::X);
  PauliString zl(n);
  zl.set(0, Pauli::Z);
  return StabilizerCode(n, std::move(gens), {{xl, zl}});
}

BlockFactorTable BlockFactorTable::build(const StabilizerCode& code) {
  const std::size_t n = code.num_qubits();
  const std::size_t l = code.num_generators();
  if (!code.has_logicals() || code.num_logical_qubits() != 1)
    throw UnsupportedError("block factor table requires a k = 1 code with logicals");
  if (n > 12) throw BudgetError("block factor table refused: 4^n too large", std::pow(4.0, double(n)));

  BlockFactorTable t;
  t.n = n;
  t.l = l;
  const std::size_t total = std::size_t{1} << (2 * n);
  t.syndrome_of.resize(total);
  t.class_of.resize(total);
  t.by_syndrome.assign(std::size_t{1} << l, {});

  // Syndrome and class contributions of single-qubit digits; both maps are
  // homomorphisms, so an assignment is the XOR of its digits.
  std::vector<std::array<std::uint16_t, 4>> syn(n);
  std::vector<std::array<std::uint8_t, 4>> cls(n);
  for (std::size_t q = 0; q < n; ++q) {
    syn[q][0] = 0;
    cls[q][0] = 0;
    for (Pauli e : {Pauli::X, Pauli::Y, Pauli::Z}) {
      const PauliString p = PauliString::single(n, q, e);
      syn[q][static_cast<int>(e)] = static_cast<std::uint16_t>(code.syndrome(p).to_uint());
      const Pauli c = code.logical_class(p).value;
      cls[q][static_cast<int>(e)] =
          static_cast<std::uint8_t>((x_bit(c) ? 1 : 0) | (z_bit(c) ? 2 : 0));
    }
  }

  for (std::uint32_t a = 0; a < total; ++a) {
    std::uint16_t s = 0;
    std::uint8_t c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint32_t digit = (a >> (2 * (n - 1 - j))) & 3;
      s ^= syn[j][digit];
      c ^= cls[j][digit];
    }
    t.syndrome_of[a] = s;
    t.class_of[a] = static_cast<std::uint8_t>(pauli_from_bits(c & 1, c & 2));
    t.by_syndrome[s].push_back(a);
  }
  return t;
}

ConcatTree::ConcatTree(StabilizerCode base, int levels) : base_(std::move(base)), levels_(levels) {
  if (levels_ < 1) throw std::invalid_argument("concatenation needs levels >= 1");
  if (base_.num_logical_qubits() != 1)
    throw std::invalid_argument("tree concatenation requires a k = 1 base code");
  const std::size_t n = base_.num_qubits();

  n_leaves_ = 1;
  for (int i = 0; i < levels_; ++i) n_leaves_ *= n;

  // Level-major layout. Level-1 block b covers leaves [b*n, (b+1)*n); a
  // level-L block's children are the L-1 level blocks directly below it.
  std::size_t level_start = 0;
  std::size_t count = n_leaves_ / n;
  for (int lev = 1; lev <= levels_; ++lev) {
    for (std::size_t j = 0; j < count; ++j) {
      Block blk;
      blk.level = lev;
      if (lev == 1) {
        blk.first_child = j * n;
      } else {
        blk.first_child = level_start - count * n + j * n;
      }
      blocks_.push_back(blk);
    }
    level_start += count;
    count /= n;
  }

  table_ = std::make_shared<const BlockFactorTable>(BlockFactorTable::build(base_));
}

ConcatTree::Fold ConcatTree::fold(const std::vector<Pauli>& leaf_errors) const {
  if (leaf_errors.size() != n_leaves_) throw std::invalid_argument("fold: leaf count mismatch");
  const std::size_t n = arity();
  const BlockFactorTable& t = *table_;

  Syndrome s(num_syndrome_bits());
  std::vector<Pauli> current(leaf_errors);
  std::vector<Pauli> next;
  std::size_t block_index = 0;
  for (int lev = 1; lev <= levels_; ++lev) {
    next.assign(current.size() / n, Pauli::I);
    for (std::size_t j = 0; j < next.size(); ++j) {
      std::uint32_t a = 0;
      for (std::size_t c = 0; c < n; ++c)
        a = (a << 2) | static_cast<std::uint32_t>(current[j * n + c]);
      const std::uint16_t bits = t.syndrome_of[a];
      const std::size_t off = syndrome_offset(block_index);
      for (std::size_t b = 0; b < t.l; ++b) s.set_bit(off + b, (bits >> b) & 1);
      next[j] = static_cast<Pauli>(t.class_of[a]);
      ++block_index;
    }
    current.swap(next);
  }
  return Fold{std::move(s), current[0]};
}

ConcatTree concatenate(const ConcatSpec& spec) { return ConcatTree(spec.base, spec.levels); }

}  // namespace syndromest
