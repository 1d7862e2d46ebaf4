#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperblocks/group.hpp"

namespace hyperblocks {

/// The pair (x, y) standing for "y is in x + 1".
struct Pair {
  Element x = 0;
  Element y = 0;

  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Pairs are stored as the single integer x * r + y.
using PairCode = std::uint32_t;

inline PairCode encode_pair(std::uint32_t r, Pair p) { return p.x * r + p.y; }
inline Pair decode_pair(std::uint32_t r, PairCode c) { return {c / r, c % r}; }

/// (x, y) -> (x^-1, x^-1 y); the identity map when x = 1.
Pair consistency_step(const AbelianGroup& g, Pair p);

/// (x, y) -> (-y, -x) with -u = minus_one * u.
Pair reversal_negation_step(const AbelianGroup& g, Pair p, Element minus_one);

/// Partition of all r^2 pairs into orbits of the two closure steps.
///
/// Blocks are numbered in first-occurrence order of a row-major scan starting
/// at (1, 1); the pairs of each block are sorted by code.
class BlockPartition {
 public:
  const AbelianGroup& group() const { return group_; }
  Element minus_one() const { return minus_one_; }
  std::uint32_t order() const { return group_.order(); }
  std::size_t block_count() const { return blocks_.size(); }

  const std::vector<std::vector<PairCode>>& blocks() const { return blocks_; }
  const std::vector<PairCode>& block(std::size_t i) const { return blocks_[i]; }
  std::vector<Pair> block_pairs(std::size_t i) const;

  std::uint32_t block_of(Pair p) const { return pair_to_block_[encode_pair(order(), p)]; }
  std::uint32_t block_of(PairCode c) const { return pair_to_block_[c]; }

 private:
  friend BlockPartition compute_blocks(const AbelianGroup& g, Element minus_one);

  AbelianGroup group_;
  Element minus_one_ = 0;
  std::vector<std::vector<PairCode>> blocks_;
  std::vector<std::uint32_t> pair_to_block_;
};

/// Orbit walk over all pairs. Throws InvalidSpec when minus_one has order > 2.
BlockPartition compute_blocks(const AbelianGroup& g, Element minus_one);

/// Block-count rows: distinct c_g vectors in first-occurrence order of g.
struct CoeffMatrix {
  std::vector<std::vector<std::uint32_t>> rows;
  std::vector<Element> row_labels;
  std::size_t b = 0;
};

/// c_g for every g in index order: c_g[i] = number of pairs (g, y) in block i.
std::vector<std::vector<std::uint32_t>> row_count_vectors(const BlockPartition& bp);

/// d_g for every g: d_g[i] = number of pairs (x, g) in block i.
std::vector<std::vector<std::uint32_t>> column_count_vectors(const BlockPartition& bp);

/// The distinct rows c_g. Column vectors are omitted since d_g = c_{-g}.
CoeffMatrix coefficient_matrix(const BlockPartition& bp);

/// Spreadsheet-style labels: A..Z, AA, AB, ...
std::string block_label(std::size_t index);

/// Parses a block sequence such as "BD" into block indices. Labels longer
/// than one letter are written in brackets, e.g. "A[AB]".
std::vector<std::size_t> parse_block_sequence(const std::string& seq, std::size_t block_count);

/// Bit vector of length b from block indices.
std::vector<bool> block_selection(std::size_t block_count, const std::vector<std::size_t>& chosen);

/// Grid of block labels, row x and column y giving the label of block (x, y).
std::vector<std::vector<std::string>> block_table(const BlockPartition& bp);

}  // namespace hyperblocks
