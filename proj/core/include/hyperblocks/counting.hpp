#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hyperblocks/blocks.hpp"

namespace hyperblocks {

/// Exact rational num / den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// C x > d componentwise over x in {0,1}^columns. Entries of C are
/// non-negative integers.
struct InequalitySystem {
  std::size_t columns = 0;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<Rational> thresholds;

  std::int64_t at(std::size_t g, std::size_t u) const { return rows[g][u]; }
};

struct CountOptions {
  std::size_t max_columns = 30;
  /// Above this many columns the count switches to meet-in-the-middle.
  std::size_t direct_columns = 20;
  unsigned threads = 1;
};

/// Throws InvalidSpec for a malformed system (ragged rows, negative entries,
/// non-positive denominators).
void validate(const InequalitySystem& s);

/// Exact number of x in {0,1}^columns with C x > d. Throws CapacityExceeded
/// above opts.max_columns.
std::uint64_t count_solutions(const InequalitySystem& s, const CountOptions& opts = {});

/// Moves the entry p = C(g,u) > 0 to the all-zero column v. Throws
/// InvalidSwap naming the first of the four clauses that fails.
InequalitySystem valid_swap(const InequalitySystem& s, std::size_t g, std::size_t u, std::size_t v);

/// Adjoins `extra` columns of zeroes.
InequalitySystem pad_columns(const InequalitySystem& s, std::size_t extra);

/// Distinct block-count rows of bp with every threshold r/2: the subsets
/// whose block union is ample.
InequalitySystem ample_system(const BlockPartition& bp);

struct SwapStep {
  std::size_t row = 0;
  std::size_t u = 0;
  std::size_t v = 0;
};

struct BoundReport {
  std::uint32_t r = 0;
  std::size_t b = 0;        ///< blocks (columns of C)
  std::size_t b_prime = 0;  ///< nonzero entries of C (columns after padding)
  std::size_t rows = 0;
  std::uint64_t exact = 0;                 ///< solutions of C x > r/2
  std::int64_t lower_bound_exponent = 0;   ///< b - (r+1)/2
  std::optional<std::uint64_t> lower_bound;
  std::vector<SwapStep> swaps;
  InequalitySystem final_system;           ///< at most one nonzero per column
  std::int64_t final_count_exponent = 0;   ///< sum over rows of (b_i - 1)
  std::optional<std::uint64_t> final_count;  ///< brute-force count when small enough
};

/// Pads C to b' columns and applies valid swaps (lowest over-full column,
/// lowest nonzero row in it, lowest zero column) until every column has one
/// nonzero entry. Requires odd r; throws Unsupported otherwise and
/// InvariantViolation if the exact count falls below the bound.
BoundReport decompose_and_bound(const BlockPartition& bp, const CountOptions& opts = {});

struct InfiniteQuotientBound {
  std::int64_t exponent = 0;  ///< b - r
  std::optional<std::uint64_t> bound;
  /// Blocks holding the pairs (1, y); all must be present for 1 + 1 = H.
  std::vector<std::size_t> one_row_blocks;
};

/// 2^(b-r) bound on hyperfields that are quotients of infinite fields.
/// Requires odd r; throws Unsupported otherwise.
InfiniteQuotientBound infinite_quotient_upper_bound(const BlockPartition& bp);

/// Number of columns with two or more nonzero entries, weighted by the extras.
std::size_t extra_nonzeros(const InequalitySystem& s);

}  // namespace hyperblocks
