#include "hyperblocks/census.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <thread>

#include "hyperblocks/error.hpp"

namespace hyperblocks {

std::string mode_name(CensusMode m) { return m == CensusMode::full ? "full" : "ample-only"; }

CensusMode parse_mode(const std::string& name) {
  if (name == "full") return CensusMode::full;
  if (name == "ample-only" || name == "ample_only" || name == "ample") return CensusMode::ample_only;
  throw InvalidSpec("unknown census mode '" + name + "'");
}

std::string canonical_form(const PairRelation& pi, std::span<const Permutation> autos) {
  if (autos.empty()) return pi.bit_string();
  std::string best;
  for (const auto& sigma : autos) {
    auto bits = pi.permuted(sigma).bit_string();
    if (best.empty() || bits < best) best = std::move(bits);
  }
  return best;
}

std::string canonical_form(const HyperfieldCandidate& h, std::span<const Permutation> autos) {
  return canonical_form(h.pi, autos);
}

std::string block_mask_label(std::uint64_t mask, std::size_t block_count) {
  std::string out;
  for (std::size_t i = 0; i < block_count && i < 64; ++i) {
    if (((mask >> i) & 1) == 0) continue;
    const auto label = block_label(i);
    out += label.size() == 1 ? label : "[" + label + "]";
  }
  return out;
}

const IsoClass* Census::find_class_of(std::uint64_t block_mask) const {
  for (const auto& c : classes) {
    if (std::binary_search(c.member_masks.begin(), c.member_masks.end(), block_mask)) return &c;
  }
  return nullptr;
}

namespace {

void merge_masks(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from, std::size_t cap) {
  std::vector<std::uint64_t> out;
  out.reserve(into.size() + from.size());
  std::merge(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() > cap) out.resize(cap);
  into = std::move(out);
}

struct Partial {
  std::uint64_t examined = 0;
  std::uint64_t hyperfields = 0;
  std::uint64_t ample = 0;
  std::map<std::string, IsoClass> classes;
};

void record(Partial& part, const HyperfieldCandidate& h, bool ample, std::uint64_t mask,
            std::span<const Permutation> autos, std::size_t cap) {
  ++part.hyperfields;
  if (ample) ++part.ample;
  auto key = canonical_form(h, autos);
  auto [it, inserted] = part.classes.try_emplace(key);
  IsoClass& cls = it->second;
  if (inserted) {
    cls.canonical = key;
    cls.representative = h;
    cls.representative.pi = PairRelation::from_bit_string(h.order(), key);
    cls.ample = ample;
  }
  ++cls.members;
  if (cls.member_masks.size() < cap) {
    cls.member_masks.insert(std::upper_bound(cls.member_masks.begin(), cls.member_masks.end(), mask), mask);
  } else if (cap > 0 && mask < cls.member_masks.back()) {
    cls.member_masks.pop_back();
    cls.member_masks.insert(std::upper_bound(cls.member_masks.begin(), cls.member_masks.end(), mask), mask);
  }
}

void toggle_block(PairRelation& pi, const BlockPartition& bp, std::size_t block) {
  const std::uint32_t r = bp.order();
  for (auto c : bp.block(block)) pi.toggle(decode_pair(r, c));
}

Partial run_range(const BlockPartition& bp, CensusMode mode, std::uint64_t lo, std::uint64_t hi,
                  std::span<const Permutation> autos, const CoeffMatrix& coeff, std::size_t cap) {
  Partial part;
  if (lo >= hi) return part;
  const std::uint32_t r = bp.order();
  const std::size_t b = bp.block_count();

  auto h = make_candidate(bp.group(), bp.minus_one());
  std::uint64_t mask = lo ^ (lo >> 1);
  for (std::size_t i = 0; i < b; ++i) {
    if ((mask >> i) & 1) toggle_block(h.pi, bp, i);
  }
  std::vector<std::int64_t> sums(coeff.rows.size(), 0);
  for (std::size_t g = 0; g < coeff.rows.size(); ++g) {
    for (std::size_t i = 0; i < b; ++i) {
      if ((mask >> i) & 1) sums[g] += coeff.rows[g][i];
    }
  }

  for (std::uint64_t t = lo; t < hi; ++t) {
    if (t != lo) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(t));
      mask ^= std::uint64_t{1} << bit;
      toggle_block(h.pi, bp, bit);
      const std::int64_t sign = ((mask >> bit) & 1) ? 1 : -1;
      for (std::size_t g = 0; g < coeff.rows.size(); ++g) sums[g] += sign * coeff.rows[g][bit];
    }
    ++part.examined;

    if (mode == CensusMode::full) {
      if (check_axioms(h).passed) {
        auto found = h;
        found.status = Status::verified_hyperfield;
        record(part, found, is_ample(found), mask, autos, cap);
      }
    } else {
      const bool keep = std::all_of(sums.begin(), sums.end(), [&](std::int64_t s) { return 2 * s > r; });
      if (keep) {
        auto found = h;
        if (!certify_ample(found, bp)) {
          throw InvariantViolation("row inequalities hold but the candidate is not ample");
        }
        record(part, found, true, mask, autos, cap);
      }
    }
  }
  return part;
}

}  // namespace

void Census::merge(const Census& other, std::size_t max_member_masks) {
  subsets_examined += other.subsets_examined;
  hyperfields += other.hyperfields;
  ample += other.ample;
  std::vector<IsoClass> out;
  out.reserve(classes.size() + other.classes.size());
  auto a = classes.begin();
  auto b = other.classes.begin();
  while (a != classes.end() || b != other.classes.end()) {
    if (b == other.classes.end() || (a != classes.end() && a->canonical < b->canonical)) {
      out.push_back(std::move(*a++));
    } else if (a == classes.end() || b->canonical < a->canonical) {
      out.push_back(*b++);
    } else {
      IsoClass merged = std::move(*a++);
      merged.members += b->members;
      merge_masks(merged.member_masks, b->member_masks, max_member_masks);
      ++b;
      out.push_back(std::move(merged));
    }
  }
  classes = std::move(out);
}

Census enumerate(const BlockPartition& bp, CensusMode mode, const CensusOptions& opts) {
  const std::size_t b = bp.block_count();
  if (b >= 63) throw CapacityExceeded("too many blocks for subset enumeration");
  if (opts.shard_count == 0 || opts.shard_index >= opts.shard_count) {
    throw InvalidSpec("shard index must be below the shard count");
  }
  const std::uint64_t total = std::uint64_t{1} << b;
  const std::uint64_t lo = total / opts.shard_count * opts.shard_index +
                           std::min(opts.shard_index, total % opts.shard_count);
  const std::uint64_t len = total / opts.shard_count + (opts.shard_index < total % opts.shard_count ? 1 : 0);
  if (opts.max_blocks < 63 && len > (std::uint64_t{1} << opts.max_blocks)) {
    throw CapacityExceeded(std::to_string(b) + " blocks give " + std::to_string(total) +
                           " subsets, beyond the budget of 2^" + std::to_string(opts.max_blocks) +
                           "; shard the range or raise max_blocks");
  }

  const auto autos = automorphisms_fixing(bp.group(), bp.minus_one());
  const auto coeff = coefficient_matrix(bp);
  const unsigned threads = std::max(1u, opts.threads);
  const std::size_t cap = opts.max_member_masks;

  std::vector<Partial> parts(threads);
  auto work = [&](unsigned w) {
    const std::uint64_t a = lo + len * w / threads;
    const std::uint64_t z = lo + len * (w + 1) / threads;
    parts[w] = run_range(bp, mode, a, z, autos, coeff, cap);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  Census census;
  census.group = bp.group();
  census.minus_one = bp.minus_one();
  census.mode = mode;
  census.block_count = b;
  for (auto& part : parts) {
    Census piece;
    piece.subsets_examined = part.examined;
    piece.hyperfields = part.hyperfields;
    piece.ample = part.ample;
    for (auto& [key, cls] : part.classes) piece.classes.push_back(std::move(cls));
    census.merge(piece, cap);
  }
  return census;
}

std::vector<Census> census_all_minus_ones(const AbelianGroup& g, CensusMode mode, const CensusOptions& opts) {
  std::vector<Census> out;
  for (Element m : involution_candidates(g)) out.push_back(enumerate(compute_blocks(g, m), mode, opts));
  return out;
}

}  // namespace hyperblocks
