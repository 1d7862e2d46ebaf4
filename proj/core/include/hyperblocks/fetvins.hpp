#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperblocks/hyperfield.hpp"

namespace hyperblocks {

/// k homogeneous equations sum_j a_ij x_j ∋ 0 in n variables. Coefficients
/// are hyperfield element indices; zero is the hyperfield's zero index r.
struct LinearSystem {
  std::size_t variables = 0;
  std::vector<std::vector<Element>> coefficients;

  std::size_t equations() const { return coefficients.size(); }
};

using Assignment = std::vector<Element>;

/// Left fold of set-extended hyperaddition; the empty list sums to {0}.
ElementSet set_sum(const Arithmetic& ar, std::span<const ElementSet> terms);

/// True iff 0 is in every equation's sum. Throws InvalidSpec on a dimension
/// mismatch or an out-of-range element.
bool check(const Arithmetic& ar, const LinearSystem& sys, const Assignment& asg);

bool is_nontrivial(const Arithmetic& ar, const Assignment& asg);

/// First nontrivial solution in lexicographic order, with values ordered
/// 0, 1, a, a^2, ... (zero first, then group index order). Throws
/// CapacityExceeded when |H|^n exceeds the budget.
std::optional<Assignment> brute_force_solve(const Arithmetic& ar, const LinearSystem& sys,
                                            std::uint64_t budget = 10'000'000);

struct SolveTrace {
  std::size_t piles_zeroed = 0;
  std::size_t substitutions = 0;
  std::size_t discarded_long = 0;  ///< equations with four or more terms
  std::size_t peeled = 0;
};

/// Constructive solver for ample hyperfields with fewer equations than
/// variables. Zeroes piles, eliminates two-term equations by substitution,
/// drops equations with four or more terms, peels variables used by at most
/// two three-term equations, then assigns them backwards. The result is
/// validated with check(). Throws PreconditionError when the hyperfield is
/// not a verified or certified ample one or k >= n, and InvariantViolation
/// if a step the theory guarantees fails.
Assignment ample_solve(const Arithmetic& ar, const LinearSystem& sys, SolveTrace* trace = nullptr);

struct FetvinsOptions {
  unsigned threads = 1;
  std::uint64_t brute_force_budget = 10'000'000;
  std::uint64_t max_systems = 50'000'000;
  /// Also run ample_solve on every system when the hyperfield is ample.
  bool run_solver = true;
};

struct FetvinsReport {
  bool confirmed = true;
  std::uint32_t n_max = 0;
  std::uint64_t systems_checked = 0;
  std::uint64_t solver_runs = 0;
  std::optional<LinearSystem> counterexample;
  /// Systems where ample_solve raised or returned an invalid assignment.
  std::uint64_t solver_failures = 0;
  std::optional<LinearSystem> solver_failure_example;
  std::string solver_failure_message;
};

/// All equations in n variables whose first nonzero coefficient is 1.
std::vector<std::vector<Element>> normalized_equations(const Arithmetic& ar, std::size_t n);

/// Exhaustively checks every system with 1 <= k < n <= n_max built from
/// normalized equations (as multisets, since order and scaling by a unit do
/// not affect solvability).
FetvinsReport check_fetvins(const Arithmetic& ar, std::uint32_t n_max, const FetvinsOptions& opts = {});

}  // namespace hyperblocks
