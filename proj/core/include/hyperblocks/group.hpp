#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyperblocks {

/// Index of a group element. Index 0 is always the identity.
using Element = std::uint32_t;

/// A bijection of group element indices, image[i] = sigma(i).
using Permutation = std::vector<Element>;

/// Largest supported group order. Hyperfield element sets reserve one extra
/// slot for zero, so this is one less than ElementSet::kCapacity.
inline constexpr std::uint32_t kMaxGroupOrder = 127;

/// Finite abelian group in invariant-factor form d_1 | d_2 | ... | d_s.
///
/// Elements are residue vectors (v_1, ..., v_s), v_i in [0, d_i), indexed in
/// mixed radix with the last factor varying fastest. For a cyclic group Z_n
/// the index k is the power a^k of the generator a. The trivial group has an
/// empty factor list. Instances are immutable and cheap to copy (tables are
/// shared).
class AbelianGroup {
 public:
  /// Trivial group.
  AbelianGroup();

  const std::vector<std::uint32_t>& invariant_factors() const;
  std::uint32_t order() const;
  Element identity() const { return 0; }
  bool is_cyclic() const { return invariant_factors().size() <= 1; }

  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  /// Least k >= 1 with a^k = identity.
  std::uint32_t order_of(Element a) const;
  Element pow(Element a, std::uint64_t e) const;

  std::vector<std::uint32_t> to_vector(Element a) const;
  Element from_vector(std::span<const std::uint32_t> v) const;

  /// "Z1", "Z3", "Z2xZ4".
  std::string name() const;
  /// Exponent notation (1, a, a^2, ...) for cyclic groups, vectors otherwise.
  std::string element_name(Element a) const;

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.invariant_factors() == b.invariant_factors();
  }

  struct Tables;  // defined in group.cpp

 private:
  explicit AbelianGroup(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  void check(Element a) const;

  std::shared_ptr<const Tables> t_;

  friend AbelianGroup make_group(std::span<const std::uint32_t> factors);
};

/// Builds a group from any list of cyclic factor orders, normalizing it into
/// invariant-factor form. An empty list gives the trivial group.
/// Throws InvalidSpec for a factor < 2, CapacityExceeded above kMaxGroupOrder.
AbelianGroup make_group(std::span<const std::uint32_t> factors);
AbelianGroup make_group(std::initializer_list<std::uint32_t> factors);

/// Cyclic group of order n (n = 1 gives the trivial group).
AbelianGroup cyclic_group(std::uint32_t n);

/// Parses "Z3", "Z2xZ4", "Z1" (case-insensitive 'z', 'x' or '*' separators).
AbelianGroup parse_group_spec(std::string_view spec);

/// Invariant factors of every abelian group of the given order, one list per
/// isomorphism class.
std::vector<std::vector<std::uint32_t>> abelian_groups_of_order(std::uint32_t n);

/// All elements of order 1 or 2, identity first: the legal values of -1.
std::vector<Element> involution_candidates(const AbelianGroup& g);

struct AutomorphismLimits {
  std::uint32_t max_order = 64;
  std::size_t max_count = std::size_t{1} << 18;
};

/// Every automorphism of g, found by backtracking over generator images.
/// The identity permutation comes first. Throws CapacityExceeded when the
/// group order or the number of automorphisms exceeds the limits.
std::vector<Permutation> automorphisms(const AbelianGroup& g, const AutomorphismLimits& limits = {});

/// The automorphisms that fix `fixed` (used with fixed = -1).
std::vector<Permutation> automorphisms_fixing(const AbelianGroup& g, Element fixed,
                                              const AutomorphismLimits& limits = {});

}  // namespace hyperblocks
