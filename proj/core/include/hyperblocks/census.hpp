#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperblocks/blocks.hpp"
#include "hyperblocks/hyperfield.hpp"

namespace hyperblocks {

enum class CensusMode { full, ample_only };

std::string mode_name(CensusMode m);
CensusMode parse_mode(const std::string& name);

struct CensusOptions {
  unsigned threads = 1;
  /// Largest number of subsets (as a power of two) a single run may examine.
  unsigned max_blocks = 30;
  /// Process only shard `shard_index` of `shard_count` contiguous Gray-code
  /// rank ranges.
  std::uint64_t shard_index = 0;
  std::uint64_t shard_count = 1;
  /// Member block masks kept per class (the smallest ones).
  std::size_t max_member_masks = 64;
};

struct IsoClass {
  std::string canonical;  ///< row-major bit string of the canonical pi
  HyperfieldCandidate representative;
  std::uint64_t members = 0;
  bool ample = false;
  std::vector<std::uint64_t> member_masks;  ///< sorted, truncated
};

struct Census {
  AbelianGroup group;
  Element minus_one = 0;
  CensusMode mode = CensusMode::full;
  std::size_t block_count = 0;
  std::uint64_t subsets_examined = 0;
  std::uint64_t hyperfields = 0;
  std::uint64_t ample = 0;
  std::vector<IsoClass> classes;  ///< sorted by canonical string

  std::size_t class_count() const { return classes.size(); }
  const IsoClass* find_class_of(std::uint64_t block_mask) const;

  /// Combines two partial censuses of the same (group, -1, mode).
  /// Associative and commutative.
  void merge(const Census& other, std::size_t max_member_masks = 64);
};

/// Lexicographic minimum over autos of the row-major bit string of sigma(pi).
std::string canonical_form(const PairRelation& pi, std::span<const Permutation> autos);
std::string canonical_form(const HyperfieldCandidate& h, std::span<const Permutation> autos);

/// Enumerates block subsets of bp in Gray-code order.
///
/// full: every subset is verified with check_axioms.
/// ample_only: only subsets with c_g . x > r/2 for every coefficient row are
/// kept, and they are certified without verification.
/// Throws CapacityExceeded when the examined range exceeds 2^max_blocks.
Census enumerate(const BlockPartition& bp, CensusMode mode, const CensusOptions& opts = {});

/// One census per legal value of -1; classes are never merged across them.
std::vector<Census> census_all_minus_ones(const AbelianGroup& g, CensusMode mode,
                                          const CensusOptions& opts = {});

/// Block mask -> "BD" style label.
std::string block_mask_label(std::uint64_t mask, std::size_t block_count);

}  // namespace hyperblocks
