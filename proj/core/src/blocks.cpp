#include "hyperblocks/blocks.hpp"

#include <algorithm>
#include <limits>

#include "hyperblocks/error.hpp"

namespace hyperblocks {

Pair consistency_step(const AbelianGroup& g, Pair p) {
  if (p.x == g.identity()) return p;
  const Element xi = g.inv(p.x);
  return {xi, g.mul(xi, p.y)};
}

Pair reversal_negation_step(const AbelianGroup& g, Pair p, Element minus_one) {
  return {g.mul(minus_one, p.y), g.mul(minus_one, p.x)};
}

std::vector<Pair> BlockPartition::block_pairs(std::size_t i) const {
  std::vector<Pair> out;
  out.reserve(blocks_[i].size());
  for (auto c : blocks_[i]) out.push_back(decode_pair(order(), c));
  return out;
}

BlockPartition compute_blocks(const AbelianGroup& g, Element minus_one) {
  if (minus_one >= g.order() || g.order_of(minus_one) > 2) {
    throw InvalidSpec("-1 must be an element of order 1 or 2");
  }
  const std::uint32_t r = g.order();
  constexpr auto kUnassigned = std::numeric_limits<std::uint32_t>::max();

  BlockPartition bp;
  bp.group_ = g;
  bp.minus_one_ = minus_one;
  bp.pair_to_block_.assign(static_cast<std::size_t>(r) * r, kUnassigned);

  std::vector<PairCode> stack;
  for (PairCode start = 0; start < r * r; ++start) {
    if (bp.pair_to_block_[start] != kUnassigned) continue;
    const auto id = static_cast<std::uint32_t>(bp.blocks_.size());
    std::vector<PairCode> orbit;
    stack.assign(1, start);
    bp.pair_to_block_[start] = id;
    while (!stack.empty()) {
      const PairCode c = stack.back();
      stack.pop_back();
      orbit.push_back(c);
      const Pair p = decode_pair(r, c);
      for (Pair q : {consistency_step(g, p), reversal_negation_step(g, p, minus_one)}) {
        const PairCode qc = encode_pair(r, q);
        if (bp.pair_to_block_[qc] == kUnassigned) {
          bp.pair_to_block_[qc] = id;
          stack.push_back(qc);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    bp.blocks_.push_back(std::move(orbit));
  }
  return bp;
}

std::vector<std::vector<std::uint32_t>> row_count_vectors(const BlockPartition& bp) {
  const std::uint32_t r = bp.order();
  std::vector<std::vector<std::uint32_t>> rows(r, std::vector<std::uint32_t>(bp.block_count(), 0));
  for (PairCode c = 0; c < r * r; ++c) ++rows[c / r][bp.block_of(c)];
  return rows;
}

std::vector<std::vector<std::uint32_t>> column_count_vectors(const BlockPartition& bp) {
  const std::uint32_t r = bp.order();
  std::vector<std::vector<std::uint32_t>> cols(r, std::vector<std::uint32_t>(bp.block_count(), 0));
  for (PairCode c = 0; c < r * r; ++c) ++cols[c % r][bp.block_of(c)];
  return cols;
}

CoeffMatrix coefficient_matrix(const BlockPartition& bp) {
  CoeffMatrix m;
  m.b = bp.block_count();
  const auto all = row_count_vectors(bp);
  for (Element g = 0; g < all.size(); ++g) {
    if (std::find(m.rows.begin(), m.rows.end(), all[g]) == m.rows.end()) {
      m.rows.push_back(all[g]);
      m.row_labels.push_back(g);
    }
  }
  return m;
}

std::string block_label(std::size_t index) {
  std::string out;
  ++index;
  while (index > 0) {
    --index;
    out.insert(out.begin(), static_cast<char>('A' + index % 26));
    index /= 26;
  }
  return out;
}

std::vector<std::size_t> parse_block_sequence(const std::string& seq, std::size_t block_count) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const char c = seq[i];
    if (c == '[') {
      const auto close = seq.find(']', i);
      if (close == std::string::npos) throw InvalidSpec("unterminated '[' in block sequence");
      labels.push_back(seq.substr(i + 1, close - i - 1));
      i = close;
    } else if (c >= 'A' && c <= 'Z') {
      labels.emplace_back(1, c);
    } else if (c != ' ' && c != ',') {
      throw InvalidSpec(std::string("bad character '") + c + "' in block sequence");
    }
  }
  std::vector<std::size_t> out;
  for (const auto& label : labels) {
    std::size_t idx = 0;
    for (char c : label) {
      if (c < 'A' || c > 'Z') throw InvalidSpec("bad block label '" + label + "'");
      idx = idx * 26 + static_cast<std::size_t>(c - 'A' + 1);
    }
    --idx;
    if (idx >= block_count) throw InvalidSpec("block label '" + label + "' out of range");
    out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<bool> block_selection(std::size_t block_count, const std::vector<std::size_t>& chosen) {
  std::vector<bool> sel(block_count, false);
  for (auto i : chosen) {
    if (i >= block_count) throw InvalidSpec("block index out of range");
    sel[i] = true;
  }
  return sel;
}

std::vector<std::vector<std::string>> block_table(const BlockPartition& bp) {
  const std::uint32_t r = bp.order();
  std::vector<std::vector<std::string>> grid(r, std::vector<std::string>(r));
  for (PairCode c = 0; c < r * r; ++c) grid[c / r][c % r] = block_label(bp.block_of(c));
  return grid;
}

}  // namespace hyperblocks
