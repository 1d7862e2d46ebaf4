#include <gtest/gtest.h>

#include <random>

#include "hb_test_support.hpp"
#include "hyperblocks/error.hpp"
#include "hyperblocks/fetvins.hpp"

using namespace hyperblocks;
using hbtest::verified;
using hbtest::z3;

namespace {

HyperfieldCandidate krasner() {
  auto h = make_candidate(make_group({}), 0);
  h.pi.insert({0, 0});
  return verified(h);
}

HyperfieldCandidate sign() {
  auto h = make_candidate(cyclic_group(2), 1);
  h.pi.insert({0, 0});
  h.pi.insert({1, 0});
  h.pi.insert({1, 1});
  return verified(h);
}

LinearSystem system(std::size_t n, std::vector<std::vector<Element>> rows) { return {n, std::move(rows)}; }

// Ample hyperfields with |H| <= 5, one per class and -1.
const std::vector<HyperfieldCandidate>& ample_small() {
  static const auto all = hbtest::ample_hyperfields(4, true);
  return all;
}

}  // namespace

TEST(SetSum, Examples) {
  Arithmetic k(krasner());
  const ElementSet one = ElementSet::single(0);
  const ElementSet ones[] = {one, one, one};
  EXPECT_EQ(set_sum(k, ones), k.universe());
  EXPECT_EQ(set_sum(k, {}), ElementSet::single(k.zero()));
  Arithmetic bd(verified(z3("BD")));
  for (Element x = 0; x <= 3; ++x) {
    const ElementSet single[] = {ElementSet::single(x)};
    EXPECT_EQ(set_sum(bd, single), ElementSet::single(x));
  }
}

TEST(Check, Examples) {
  Arithmetic s(sign());
  auto eq = system(2, {{0, 0}});
  EXPECT_TRUE(check(s, eq, {0, 1}));
  EXPECT_FALSE(check(s, eq, {0, 0}));
  EXPECT_TRUE(check(s, eq, {s.zero(), s.zero()}));
  EXPECT_THROW(check(s, eq, {0}), InvalidSpec);
  EXPECT_THROW(check(s, system(2, {{0, 0, 0}}), {0, 0}), InvalidSpec);
  EXPECT_THROW(check(s, eq, {0, 7}), InvalidSpec);
  // zero coefficients contribute nothing
  EXPECT_TRUE(check(s, system(2, {{0, s.zero()}}), {s.zero(), 1}));
}

TEST(BruteForce, Examples) {
  Arithmetic k(krasner());
  EXPECT_EQ(brute_force_solve(k, system(2, {{0, 0}})), (Assignment{0, 0}));
  Arithmetic bd(verified(z3("BD")));
  EXPECT_FALSE(brute_force_solve(bd, system(1, {{1}})));
  // lexicographic with zero first: (0, 0, x) comes before anything with x_2 != 0
  auto first = brute_force_solve(bd, system(3, {{0, 0, 0}}));
  ASSERT_TRUE(first);
  EXPECT_EQ((*first)[0], bd.zero());
  EXPECT_THROW(brute_force_solve(bd, system(12, {std::vector<Element>(12, 0)})), CapacityExceeded);
  Arithmetic bc(verified(z3("BC")));
  for (const auto& a : normalized_equations(bc, 3)) {
    for (const auto& b : normalized_equations(bc, 3)) {
      EXPECT_TRUE(brute_force_solve(bc, system(3, {a, b})));
    }
  }
}

TEST(AmpleSolve, Examples) {
  Arithmetic bc(verified(z3("BC")));
  SolveTrace trace;
  auto asg = ample_solve(bc, system(3, {{0, 0, 0}}), &trace);
  EXPECT_TRUE(check(bc, system(3, {{0, 0, 0}}), asg));
  EXPECT_TRUE(is_nontrivial(bc, asg));
  EXPECT_EQ(trace.peeled, 1u);

  auto pile = system(3, {{bc.zero(), 2, bc.zero()}, {0, 1, 1}});
  SolveTrace t2;
  auto a2 = ample_solve(bc, pile, &t2);
  EXPECT_EQ(a2[1], bc.zero());
  EXPECT_GE(t2.piles_zeroed, 1u);
  EXPECT_TRUE(check(bc, pile, a2));

  Arithmetic all(verified(z3("ABCD")));
  auto four = system(4, {{0, 1, 2, 0}, {0, bc.zero(), 1, 2}});
  SolveTrace t3;
  auto a3 = ample_solve(all, four, &t3);
  EXPECT_EQ(t3.discarded_long, 1u);
  EXPECT_TRUE(check(all, four, a3));
  EXPECT_TRUE(is_nontrivial(all, a3));
}

TEST(AmpleSolve, Preconditions) {
  Arithmetic bd(verified(z3("BD")));
  EXPECT_THROW(ample_solve(bd, system(3, {{0, 0, 0}})), PreconditionError);
  Arithmetic bc(verified(z3("BC")));
  EXPECT_THROW(ample_solve(bc, system(2, {{0, 0}, {0, 1}})), PreconditionError);
  Arithmetic raw(z3("BC"));
  EXPECT_THROW(ample_solve(raw, system(3, {{0, 0, 0}})), PreconditionError);
}

TEST(AmpleSolve, LargerRandomSystems) {
  // Also exercises the path where piles are found by stalled peeling.
  std::mt19937_64 rng(11);
  auto bp = compute_blocks(cyclic_group(7), 0);
  auto h = build_candidate(bp, (std::uint64_t{1} << 12) - 1);
  ASSERT_TRUE(certify_ample(h, bp));
  Arithmetic ar(h);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 20;
    const std::size_t k = 1 + rng() % (n - 1);
    LinearSystem sys{n, {}};
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Element> row(n, ar.zero());
      const std::size_t terms = 1 + rng() % 4;
      for (std::size_t t = 0; t < terms; ++t) row[rng() % n] = static_cast<Element>(rng() % 7);
      sys.coefficients.push_back(row);
    }
    auto asg = ample_solve(ar, sys);
    EXPECT_TRUE(check(ar, sys, asg));
    EXPECT_TRUE(is_nontrivial(ar, asg));
  }
}

TEST(Normalized, Counts) {
  Arithmetic bd(verified(z3("BD")));
  EXPECT_EQ(normalized_equations(bd, 1).size(), 1u);
  EXPECT_EQ(normalized_equations(bd, 2).size(), 5u);
  EXPECT_EQ(normalized_equations(bd, 3).size(), 21u);
  for (const auto& row : normalized_equations(bd, 3)) {
    auto lead = std::find_if(row.begin(), row.end(), [&](Element e) { return e != bd.zero(); });
    ASSERT_NE(lead, row.end());
    EXPECT_EQ(*lead, bd.one());
  }
}

TEST(CheckFetvins, Examples) {
  for (const char* seq : {"BC", "BCD", "ABCD", "ABD", "ACD", "ABC"}) {
    Arithmetic ar(verified(z3(seq)));
    auto rep = check_fetvins(ar, 3);
    EXPECT_TRUE(rep.confirmed) << seq;
    EXPECT_EQ(rep.solver_failures, 0u);
    EXPECT_EQ(rep.solver_runs, rep.systems_checked);
  }
  Arithmetic gf4(verified(z3("D")));
  auto f = check_fetvins(gf4, 3);
  EXPECT_TRUE(f.confirmed);
  EXPECT_EQ(f.solver_runs, 0u);
  EXPECT_TRUE(check_fetvins(Arithmetic(krasner()), 3).confirmed);
  FetvinsOptions tight;
  tight.max_systems = 10;
  EXPECT_THROW(check_fetvins(gf4, 3, tight), CapacityExceeded);
  FetvinsOptions threads;
  threads.threads = 3;
  auto par = check_fetvins(Arithmetic(verified(z3("BC"))), 3, threads);
  EXPECT_TRUE(par.confirmed);
  EXPECT_EQ(par.systems_checked, check_fetvins(Arithmetic(verified(z3("BC"))), 3).systems_checked);
}

TEST(CheckFetvins, CounterexampleIsReported) {
  // Z_2 with -1 = 1 and empty pi is not a hyperfield; x + y holds 0 only
  // when x = y, and otherwise nothing.
  auto h = make_candidate(cyclic_group(2), 0);
  Arithmetic ar(h);
  auto rep = check_fetvins(ar, 3);
  EXPECT_FALSE(rep.confirmed);
  ASSERT_TRUE(rep.counterexample);
  EXPECT_EQ(rep.counterexample->equations(), 2u);
  EXPECT_FALSE(brute_force_solve(ar, *rep.counterexample));
}

TEST(Properties, SumOfFour) {
  for (const auto& h : ample_small()) {
    Arithmetic ar(h);
    const std::uint32_t r = h.order();
    for (std::uint32_t code = 0; code < r * r * r * r; ++code) {
      const ElementSet terms[] = {ElementSet::single(code % r), ElementSet::single(code / r % r),
                                  ElementSet::single(code / r / r % r), ElementSet::single(code / r / r / r)};
      EXPECT_EQ(set_sum(ar, terms), ar.universe());
    }
  }
}

TEST(Properties, SolveTwoAtOnce) {
  for (const auto& h : ample_small()) {
    Arithmetic ar(h);
    const std::uint32_t r = h.order();
    for (std::uint32_t code = 0; code < r * r * r * r; ++code) {
      const Element a = code % r, b = code / r % r, c = code / r / r % r, d = code / r / r / r;
      bool found = false;
      for (Element e = 0; e < r && !found; ++e) {
        found = ar.sum(ar.sum(a, b), e).contains(ar.zero()) && ar.sum(ar.sum(c, d), e).contains(ar.zero());
      }
      EXPECT_TRUE(found);
    }
  }
}

TEST(Properties, SolverCompleteUpToFourVariables) {
  for (const auto& h : ample_small()) {
    Arithmetic ar(h);
    FetvinsOptions o;
    auto rep = check_fetvins(ar, 4, o);
    EXPECT_TRUE(rep.confirmed);
    EXPECT_EQ(rep.solver_failures, 0u) << rep.solver_failure_message;
    EXPECT_EQ(rep.solver_runs, rep.systems_checked);
  }
}
