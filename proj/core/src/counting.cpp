#include "hyperblocks/counting.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <thread>

#include "hyperblocks/error.hpp"

namespace hyperblocks {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// C x > num/den with integral C x is C x >= floor(num/den) + 1; sums are
// non-negative so the minimum never needs to go below 0.
std::vector<std::int64_t> integer_minimums(const InequalitySystem& s) {
  std::vector<std::int64_t> t;
  t.reserve(s.thresholds.size());
  for (const auto& d : s.thresholds) t.push_back(std::max<std::int64_t>(0, floor_div(d.num, d.den) + 1));
  return t;
}

std::uint64_t count_direct(const InequalitySystem& s, const std::vector<std::int64_t>& need,
                           std::uint64_t lo, std::uint64_t hi) {
  const std::size_t k = s.rows.size();
  std::vector<std::int64_t> sums(k, 0);
  std::uint64_t mask = lo ^ (lo >> 1);
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t u = 0; u < s.columns; ++u) {
      if ((mask >> u) & 1) sums[g] += s.rows[g][u];
    }
  }
  std::uint64_t count = 0;
  for (std::uint64_t t = lo; t < hi; ++t) {
    if (t != lo) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(t));
      mask ^= std::uint64_t{1} << bit;
      const bool on = ((mask >> bit) & 1) != 0;
      for (std::size_t g = 0; g < k; ++g) sums[g] += on ? s.rows[g][bit] : -s.rows[g][bit];
    }
    bool ok = true;
    for (std::size_t g = 0; g < k && ok; ++g) ok = sums[g] >= need[g];
    count += ok ? 1 : 0;
  }
  return count;
}

std::uint64_t count_direct_parallel(const InequalitySystem& s, const std::vector<std::int64_t>& need,
                                    unsigned threads) {
  const std::uint64_t total = std::uint64_t{1} << s.columns;
  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(1, total)));
  if (threads == 1) return count_direct(s, need, 0, total);
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] { partial[w] = count_direct(s, need, total * w / threads, total * (w + 1) / threads); });
  }
  for (auto& t : pool) t.join();
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

// Splits the columns in half. The right half is tabulated by its row sums
// capped at the row minimums, then turned into "at least" counts with a
// suffix sum along every axis; each left vector is one table lookup.
std::optional<std::uint64_t> count_meet_in_middle(const InequalitySystem& s, const std::vector<std::int64_t>& need) {
  const std::size_t k = s.rows.size();
  const std::size_t left = s.columns / 2;
  const std::size_t right = s.columns - left;

  std::vector<std::size_t> stride(k, 1);
  std::size_t cells = 1;
  for (std::size_t g = 0; g < k; ++g) {
    stride[g] = cells;
    cells *= static_cast<std::size_t>(need[g] + 1);
    if (cells > (std::size_t{1} << 24)) return std::nullopt;
  }

  auto enumerate_half = [&](std::size_t first, std::size_t width, auto&& visit) {
    std::vector<std::int64_t> sums(k, 0);
    std::uint64_t mask = 0;
    const std::uint64_t total = std::uint64_t{1} << width;
    for (std::uint64_t t = 0; t < total; ++t) {
      if (t != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(t));
        mask ^= std::uint64_t{1} << bit;
        const bool on = ((mask >> bit) & 1) != 0;
        for (std::size_t g = 0; g < k; ++g) {
          const auto c = s.rows[g][first + bit];
          sums[g] += on ? c : -c;
        }
      }
      visit(sums);
    }
  };

  std::vector<std::uint64_t> table(cells, 0);
  enumerate_half(left, right, [&](const std::vector<std::int64_t>& sums) {
    std::size_t idx = 0;
    for (std::size_t g = 0; g < k; ++g) idx += stride[g] * static_cast<std::size_t>(std::min(sums[g], need[g]));
    ++table[idx];
  });
  for (std::size_t g = 0; g < k; ++g) {
    const auto extent = static_cast<std::size_t>(need[g] + 1);
    for (std::size_t idx = cells; idx-- > 0;) {
      const std::size_t coord = (idx / stride[g]) % extent;
      if (coord + 1 < extent) table[idx] += table[idx + stride[g]];
    }
  }

  std::uint64_t count = 0;
  enumerate_half(0, left, [&](const std::vector<std::int64_t>& sums) {
    std::size_t idx = 0;
    for (std::size_t g = 0; g < k; ++g) {
      idx += stride[g] * static_cast<std::size_t>(std::max<std::int64_t>(0, need[g] - sums[g]));
    }
    count += table[idx];
  });
  return count;
}

std::optional<std::uint64_t> pow2(std::int64_t e) {
  if (e < 0 || e >= 64) return std::nullopt;
  return std::uint64_t{1} << e;
}

}  // namespace

void validate(const InequalitySystem& s) {
  if (s.rows.size() != s.thresholds.size()) throw InvalidSpec("one threshold per row is required");
  for (const auto& row : s.rows) {
    if (row.size() != s.columns) throw InvalidSpec("row length differs from the column count");
    for (auto c : row) {
      if (c < 0) throw InvalidSpec("coefficient matrix entries must be non-negative");
    }
  }
  for (const auto& d : s.thresholds) {
    if (d.den <= 0) throw InvalidSpec("threshold denominators must be positive");
  }
}

std::uint64_t count_solutions(const InequalitySystem& s, const CountOptions& opts) {
  validate(s);
  if (s.columns > opts.max_columns || s.columns >= 63) {
    throw CapacityExceeded("count over " + std::to_string(s.columns) + " columns exceeds the bound of " +
                           std::to_string(opts.max_columns));
  }
  const auto need = integer_minimums(s);
  if (s.columns > opts.direct_columns) {
    if (auto c = count_meet_in_middle(s, need)) return *c;
  }
  return count_direct_parallel(s, need, opts.threads);
}

InequalitySystem valid_swap(const InequalitySystem& s, std::size_t g, std::size_t u, std::size_t v) {
  for (const auto& row : s.rows) {
    for (auto c : row) {
      if (c < 0) throw InvalidSwap(1, "the matrix has a negative entry");
    }
  }
  if (g >= s.rows.size() || u >= s.columns || v >= s.columns || u == v) {
    throw InvalidSwap(2, "row/column indices must be in range with u != v");
  }
  const std::int64_t p = s.rows[g][u];
  if (p <= 0) throw InvalidSwap(3, "C(g,u) must be positive");
  if (s.rows[g][v] != 0) throw InvalidSwap(3, "C(g,v) must be zero");
  for (std::size_t h = 0; h < s.rows.size(); ++h) {
    if (s.rows[h][v] != 0) throw InvalidSwap(4, "column v must be all zeroes");
  }
  InequalitySystem out = s;
  out.rows[g][u] = 0;
  out.rows[g][v] = p;
  return out;
}

InequalitySystem pad_columns(const InequalitySystem& s, std::size_t extra) {
  InequalitySystem out = s;
  out.columns += extra;
  for (auto& row : out.rows) row.resize(out.columns, 0);
  return out;
}

InequalitySystem ample_system(const BlockPartition& bp) {
  const auto coeff = coefficient_matrix(bp);
  InequalitySystem s;
  s.columns = coeff.b;
  for (const auto& row : coeff.rows) {
    s.rows.emplace_back(row.begin(), row.end());
    s.thresholds.push_back({static_cast<std::int64_t>(bp.order()), 2});
  }
  return s;
}

std::size_t extra_nonzeros(const InequalitySystem& s) {
  std::size_t gamma = 0;
  for (std::size_t u = 0; u < s.columns; ++u) {
    std::size_t nz = 0;
    for (const auto& row : s.rows) nz += row[u] != 0 ? 1 : 0;
    if (nz >= 2) gamma += nz - 1;
  }
  return gamma;
}

BoundReport decompose_and_bound(const BlockPartition& bp, const CountOptions& opts) {
  const std::uint32_t r = bp.order();
  if (r % 2 == 0) throw Unsupported("the lower bound needs an odd group order");

  BoundReport rep;
  rep.r = r;
  const auto system = ample_system(bp);
  rep.b = system.columns;
  rep.rows = system.rows.size();
  rep.exact = count_solutions(system, opts);
  rep.lower_bound_exponent = static_cast<std::int64_t>(rep.b) - static_cast<std::int64_t>((r + 1) / 2);
  rep.lower_bound = pow2(rep.lower_bound_exponent);

  std::size_t nonzeros = 0;
  for (const auto& row : system.rows) nonzeros += static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](auto c) { return c != 0; }));
  rep.b_prime = nonzeros;

  InequalitySystem cur = pad_columns(system, rep.b_prime - rep.b);
  auto column_nonzeros = [&](std::size_t u) {
    std::size_t nz = 0;
    for (const auto& row : cur.rows) nz += row[u] != 0 ? 1 : 0;
    return nz;
  };
  while (true) {
    std::size_t u = cur.columns;
    for (std::size_t c = 0; c < cur.columns; ++c) {
      if (column_nonzeros(c) >= 2) {
        u = c;
        break;
      }
    }
    if (u == cur.columns) break;
    std::size_t v = cur.columns;
    for (std::size_t c = 0; c < cur.columns; ++c) {
      if (column_nonzeros(c) == 0) {
        v = c;
        break;
      }
    }
    if (v == cur.columns) throw InvariantViolation("no zero column left for a swap");
    std::size_t g = 0;
    while (cur.rows[g][u] == 0) ++g;
    cur = valid_swap(cur, g, u, v);
    rep.swaps.push_back({g, u, v});
  }

  rep.final_count_exponent = 0;
  for (const auto& row : cur.rows) {
    const auto bi = std::count_if(row.begin(), row.end(), [](auto c) { return c != 0; });
    rep.final_count_exponent += bi - 1;
  }
  rep.final_system = std::move(cur);
  if (rep.final_system.columns <= opts.max_columns) rep.final_count = count_solutions(rep.final_system, opts);

  // exact * 2^(b'-b) >= 2^(b'-rows) reduces to exact >= 2^(b-rows)
  if (rep.lower_bound && rep.exact < *rep.lower_bound) {
    throw InvariantViolation("exact count " + std::to_string(rep.exact) + " is below the bound " +
                             std::to_string(*rep.lower_bound));
  }
  return rep;
}

InfiniteQuotientBound infinite_quotient_upper_bound(const BlockPartition& bp) {
  const std::uint32_t r = bp.order();
  if (r % 2 == 0) throw Unsupported("the infinite-quotient bound needs an odd group order");
  InfiniteQuotientBound out;
  for (Element y = 0; y < r; ++y) out.one_row_blocks.push_back(bp.block_of(Pair{bp.group().identity(), y}));
  std::sort(out.one_row_blocks.begin(), out.one_row_blocks.end());
  out.one_row_blocks.erase(std::unique(out.one_row_blocks.begin(), out.one_row_blocks.end()), out.one_row_blocks.end());
  out.exponent = static_cast<std::int64_t>(bp.block_count()) - static_cast<std::int64_t>(r);
  out.bound = pow2(out.exponent);
  return out;
}

}  // namespace hyperblocks
