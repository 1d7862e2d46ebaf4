#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperblocks/blocks.hpp"
#include "hyperblocks/element_set.hpp"
#include "hyperblocks/group.hpp"

namespace hyperblocks {

/// r x r incidence matrix on H^x; row x holds { y : y in x + 1 }.
class PairRelation {
 public:
  PairRelation() = default;
  explicit PairRelation(std::uint32_t r) : r_(r), rows_(r) {}

  std::uint32_t order() const { return r_; }
  bool contains(Pair p) const { return rows_[p.x].contains(p.y); }
  void insert(Pair p) { rows_[p.x].insert(p.y); }
  void erase(Pair p) { rows_[p.x].erase(p.y); }
  void toggle(Pair p) { rows_[p.x].toggle(p.y); }

  const ElementSet& row(Element x) const { return rows_[x]; }
  std::uint32_t row_count(Element x) const { return rows_[x].size(); }
  std::uint32_t column_count(Element y) const;
  std::size_t size() const;

  /// Row-major '0'/'1' string of length r^2.
  std::string bit_string() const;
  static PairRelation from_bit_string(std::uint32_t r, const std::string& bits);

  /// sigma(pi) = { (sigma x, sigma y) : (x, y) in pi }.
  PairRelation permuted(std::span<const Element> sigma) const;

  friend bool operator==(const PairRelation&, const PairRelation&) = default;

 private:
  std::uint32_t r_ = 0;
  std::vector<ElementSet> rows_;
};

enum class Status { unverified, verified_hyperfield, certified_ample, failed };

std::string status_name(Status s);
Status parse_status(const std::string& name);

/// A group, a choice of -1, and a relation pi; element index r is zero.
struct HyperfieldCandidate {
  AbelianGroup group;
  Element minus_one = 0;
  PairRelation pi;
  Status status = Status::unverified;
  std::string failure;

  std::uint32_t order() const { return group.order(); }
  /// Index of the zero element.
  Element zero() const { return group.order(); }
  /// Number of elements including zero.
  std::uint32_t size() const { return group.order() + 1; }
};

/// An empty relation over (g, minus_one). Throws InvalidSpec for a bad -1.
HyperfieldCandidate make_candidate(const AbelianGroup& g, Element minus_one);

/// pi = union of the chosen blocks; status unverified.
HyperfieldCandidate build_candidate(const BlockPartition& bp, const std::vector<bool>& chosen_blocks);
HyperfieldCandidate build_candidate(const BlockPartition& bp, std::uint64_t block_mask);

/// x + y straight from the definition of H_pi: y * P(y^-1 x), with zero
/// included exactly when y^-1 x = -1.
ElementSet add(const HyperfieldCandidate& h, Element x, Element y);

/// Precomputed addition table for a candidate.
class Arithmetic {
 public:
  explicit Arithmetic(HyperfieldCandidate h);

  const HyperfieldCandidate& candidate() const { return h_; }
  const AbelianGroup& group() const { return h_.group; }
  std::uint32_t order() const { return r_; }
  std::uint32_t size() const { return r_ + 1; }
  Element zero() const { return r_; }
  Element one() const { return 0; }

  const ElementSet& sum(Element x, Element y) const { return table_[static_cast<std::size_t>(x) * (r_ + 1) + y]; }
  /// A + x = union over a in A of a + x.
  ElementSet sum(const ElementSet& a, Element x) const;
  /// A + B = union over b in B of A + b.
  ElementSet sum(const ElementSet& a, const ElementSet& b) const;

  Element mul(Element x, Element y) const;
  ElementSet mul(Element x, const ElementSet& a) const;
  Element neg(Element x) const;
  /// Multiplicative inverse; zero has none.
  Element inv(Element x) const;

  /// The whole hyperfield {0} u H^x.
  ElementSet universe() const { return ElementSet::prefix(r_ + 1); }
  ElementSet nonzero() const { return ElementSet::prefix(r_); }

 private:
  HyperfieldCandidate h_;
  std::uint32_t r_;
  std::vector<ElementSet> table_;
};

enum class Axiom { nonempty, commutativity, negatives, associativity, distributivity, reversibility };

std::string axiom_name(Axiom a);

struct VerificationReport {
  bool passed = true;
  std::optional<Axiom> violated;
  /// Elements (zero = r) exhibiting the first violation.
  std::vector<Element> witness;
  std::string message;
};

/// Exhaustive axiom check over all elements including zero. Checks run in
/// the order of Axiom and stop at the first violation; reversibility, which
/// the other axioms imply, runs last as a cross-check.
VerificationReport check_axioms(const HyperfieldCandidate& h);

/// check_axioms, then records verified_hyperfield or failed(reason) in h.
VerificationReport verify_axioms(HyperfieldCandidate& h);

struct AmpleParams {
  std::uint32_t m = 0;  ///< least row popcount of pi
  std::uint32_t k = 0;  ///< least column popcount of pi
};

AmpleParams ample_params(const HyperfieldCandidate& h);
bool is_ample(const HyperfieldCandidate& h);

bool is_union_of_blocks(const PairRelation& pi, const BlockPartition& bp);

/// Certifies a block-union candidate as a hyperfield when m + k > r, without
/// any triple scan. Throws PreconditionError if pi is not a union of blocks
/// of bp or bp does not match the candidate's group and -1.
bool certify_ample(HyperfieldCandidate& h, const BlockPartition& bp);

}  // namespace hyperblocks
