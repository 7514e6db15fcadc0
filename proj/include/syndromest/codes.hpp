#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "syndromest/pauli.hpp"

namespace syndromest {

// [[5,1,3]] code with generators XZZXI, IXZZX, XIXZZ, ZXIXZ and transversal
// logicals X^5 / Z^5 (candidates verified by the constructor, not trusted).
StabilizerCode five_qubit_code();

// [[7,1,3]] CSS code built from the [7,4] Hamming parity checks; X-type and
// Z-type generators share the same support pattern.
StabilizerCode steane_code();

// n-qubit bit-flip repetition code, generators Z_i Z_{i+1}; detects X errors
// only.
StabilizerCode repetition_code(std::size_t n);

// Precomputed factor table of one code block: for every assignment of the
// n_base child errors, the block syndrome and the resulting logical class.
// Assignment encoding: child j = digit (a >> 2*(n-1-j)) & 3, so ascending a
// enumerates child tuples in lexicographic order with child 0 most
// significant.
struct BlockFactorTable {
  std::size_t n = 0;  // children per block
  std::size_t l = 0;  // syndrome bits per block
  std::vector<std::uint16_t> syndrome_of;                      // [4^n]
  std::vector<std::uint8_t> class_of;                          // [4^n]
  std::vector<std::vector<std::uint32_t>> by_syndrome;         // [2^l], ascending assignment ids

  std::size_t num_assignments() const { return syndrome_of.size(); }
  Pauli child_of(std::uint32_t a, std::size_t j) const {
    return static_cast<Pauli>((a >> (2 * (n - 1 - j))) & 3);
  }
  static BlockFactorTable build(const StabilizerCode& code);
};

struct ConcatSpec {
  StabilizerCode base;
  int levels = 1;
};

// Tree of code blocks for an L-fold concatenation of a k=1 base code.
// Blocks are stored level-major (all level-1 blocks left to right, then
// level 2, ...), so children of a block always precede it. Each block owns
// l_base consecutive syndrome bits at offset block_index * l_base; this is
// the bit order of every dataset and observed syndrome.
class ConcatTree {
 public:
  struct Block {
    int level = 1;            // 1 = acts on physical qubits
    std::size_t first_child;  // leaf index (level 1) or block index (level > 1)
  };

  ConcatTree(StabilizerCode base, int levels);

  const StabilizerCode& base() const { return base_; }
  int levels() const { return levels_; }
  std::size_t arity() const { return base_.num_qubits(); }
  std::size_t num_leaves() const { return n_leaves_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  std::size_t num_syndrome_bits() const { return blocks_.size() * base_.num_generators(); }
  std::size_t root_block() const { return blocks_.size() - 1; }
  const Block& block(std::size_t b) const { return blocks_[b]; }
  std::size_t syndrome_offset(std::size_t b) const { return b * base_.num_generators(); }
  const BlockFactorTable& table() const { return *table_; }

  // Folds a physical error up the tree: full syndrome (tree bit order) and
  // the total logical class at the root.
  struct Fold {
    Syndrome syndrome;
    Pauli root_class;
  };
  Fold fold(const std::vector<Pauli>& leaf_errors) const;

 private:
  StabilizerCode base_;
  int levels_;
  std::size_t n_leaves_;
  std::vector<Block> blocks_;
  std::shared_ptr<const BlockFactorTable> table_;
};

ConcatTree concatenate(const ConcatSpec& spec);

}  // namespace syndromest
