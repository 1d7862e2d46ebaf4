#include <gtest/gtest.h>

#include <set>

#include "hb_test_support.hpp"
#include "hyperblocks/error.hpp"

using namespace hyperblocks;

namespace {

std::set<std::string> member_labels(const IsoClass& c, std::size_t b) {
  std::set<std::string> out;
  for (auto m : c.member_masks) out.insert(block_mask_label(m, b));
  return out;
}

std::set<std::set<std::string>> class_labels(const Census& c) {
  std::set<std::set<std::string>> out;
  for (const auto& cls : c.classes) out.insert(member_labels(cls, c.block_count));
  return out;
}

}  // namespace

TEST(Census, Z3Full) {
  auto bp = compute_blocks(cyclic_group(3), 0);
  auto c = enumerate(bp, CensusMode::full);
  EXPECT_EQ(c.subsets_examined, 16u);
  EXPECT_EQ(c.hyperfields, 9u);
  EXPECT_EQ(c.class_count(), 7u);
  EXPECT_EQ(c.ample, 6u);
  const std::set<std::set<std::string>> expected{{"D"},   {"BD", "CD"}, {"BCD"}, {"ABCD"},
                                                 {"BC"},  {"ABD", "ACD"}, {"ABC"}};
  EXPECT_EQ(class_labels(c), expected);
  for (const auto& cls : c.classes) {
    EXPECT_EQ(cls.representative.pi.bit_string(), cls.canonical);
    EXPECT_EQ(cls.members, cls.member_masks.size());
  }
  ASSERT_NE(c.find_class_of(0b1010), nullptr);  // BD
  EXPECT_EQ(c.find_class_of(0b1010), c.find_class_of(0b1100));
  EXPECT_EQ(c.find_class_of(0b0001), nullptr);
}

TEST(Census, Z3AmpleOnly) {
  auto bp = compute_blocks(cyclic_group(3), 0);
  auto c = enumerate(bp, CensusMode::ample_only);
  EXPECT_EQ(c.hyperfields, 6u);
  EXPECT_EQ(c.ample, 6u);
  std::set<std::string> all;
  for (const auto& cls : c.classes) {
    EXPECT_EQ(cls.representative.status, Status::certified_ample);
    for (const auto& l : member_labels(cls, 4)) all.insert(l);
  }
  EXPECT_EQ(all, (std::set<std::string>{"BC", "ABC", "ABD", "ACD", "BCD", "ABCD"}));
}

TEST(Census, SmallGroups) {
  auto trivial = enumerate(compute_blocks(make_group({}), 0), CensusMode::full);
  EXPECT_EQ(trivial.subsets_examined, 2u);
  EXPECT_EQ(trivial.hyperfields, 2u);
  EXPECT_EQ(trivial.ample, 1u);

  auto z2 = enumerate(compute_blocks(cyclic_group(2), 1), CensusMode::full);
  EXPECT_EQ(z2.hyperfields, 3u);
  EXPECT_EQ(z2.class_count(), 3u);
  EXPECT_EQ(z2.ample, 1u);
}

TEST(Census, AllMinusOnes) {
  EXPECT_EQ(census_all_minus_ones(cyclic_group(3), CensusMode::full).size(), 1u);
  auto z2 = census_all_minus_ones(cyclic_group(2), CensusMode::full);
  ASSERT_EQ(z2.size(), 2u);
  EXPECT_EQ(z2[0].minus_one, 0u);
  EXPECT_EQ(z2[1].minus_one, 1u);
  auto z10 = census_all_minus_ones(cyclic_group(10), CensusMode::ample_only);
  ASSERT_EQ(z10.size(), 2u);
  EXPECT_EQ(z10[0].block_count, 22u);
  EXPECT_EQ(z10[1].block_count, 22u);
}

TEST(Census, ShardsAndThreadsMerge) {
  auto bp = compute_blocks(cyclic_group(5), 0);
  auto whole = enumerate(bp, CensusMode::full);
  for (std::uint64_t n : {2u, 3u, 7u}) {
    CensusOptions o;
    o.shard_count = n;
    Census acc;
    for (std::uint64_t i = 0; i < n; ++i) {
      o.shard_index = i;
      auto part = enumerate(bp, CensusMode::full, o);
      if (i == 0) {
        acc = part;
      } else {
        acc.merge(part);
      }
    }
    EXPECT_EQ(acc.subsets_examined, whole.subsets_examined);
    EXPECT_EQ(acc.hyperfields, whole.hyperfields);
    EXPECT_EQ(acc.ample, whole.ample);
    ASSERT_EQ(acc.class_count(), whole.class_count());
    for (std::size_t i = 0; i < acc.classes.size(); ++i) {
      EXPECT_EQ(acc.classes[i].canonical, whole.classes[i].canonical);
      EXPECT_EQ(acc.classes[i].members, whole.classes[i].members);
      EXPECT_EQ(acc.classes[i].member_masks, whole.classes[i].member_masks);
    }
  }
  CensusOptions t;
  t.threads = 3;
  auto threaded = enumerate(bp, CensusMode::full, t);
  EXPECT_EQ(threaded.hyperfields, whole.hyperfields);
  EXPECT_EQ(threaded.class_count(), whole.class_count());
}

TEST(Census, CapacityAndShardErrors) {
  auto bp = compute_blocks(cyclic_group(13), 0);
  EXPECT_THROW(enumerate(bp, CensusMode::full), CapacityExceeded);
  CensusOptions bad;
  bad.shard_count = 2;
  bad.shard_index = 2;
  EXPECT_THROW(enumerate(compute_blocks(cyclic_group(3), 0), CensusMode::full, bad), InvalidSpec);
}

TEST(Canonical, IdentityOnlyLeavesPiAlone) {
  auto h = hbtest::z3("BD");
  Permutation id{0, 1, 2};
  std::vector<Permutation> autos{id};
  EXPECT_EQ(canonical_form(h, autos), h.pi.bit_string());
  auto all = automorphisms_fixing(cyclic_group(3), 0);
  EXPECT_EQ(canonical_form(h, all), canonical_form(hbtest::z3("CD"), all));
  EXPECT_NE(canonical_form(h, all), canonical_form(hbtest::z3("BCD"), all));
}

TEST(Census, Invariants) {
  for (const auto& s : hbtest::settings(1, 8)) {
    auto g = make_group(s.factors);
    auto bp = compute_blocks(g, s.minus_one);
    auto full = enumerate(bp, CensusMode::full);
    auto ample = enumerate(bp, CensusMode::ample_only);
    const auto autos = automorphisms_fixing(g, s.minus_one);
    std::uint64_t members = 0, ample_members = 0;
    for (const auto& cls : full.classes) {
      members += cls.members;
      if (cls.ample) ample_members += cls.members;
      EXPECT_EQ(autos.size() % cls.members, 0u) << g.name();
      EXPECT_TRUE(is_union_of_blocks(cls.representative.pi, bp));
      EXPECT_EQ(canonical_form(cls.representative, autos), cls.canonical);
    }
    EXPECT_EQ(members, full.hyperfields);
    EXPECT_EQ(ample_members, full.ample);
    EXPECT_EQ(ample.hyperfields, full.ample) << g.name();
    EXPECT_GE(full.hyperfields, ample.hyperfields);
    std::set<std::string> ample_keys;
    for (const auto& cls : ample.classes) ample_keys.insert(cls.canonical);
    for (const auto& cls : full.classes) EXPECT_EQ(ample_keys.count(cls.canonical) == 1, cls.ample);
    if (g.order() % 2 == 1) {
      const auto b = static_cast<std::int64_t>(bp.block_count());
      const std::int64_t exponent = b - static_cast<std::int64_t>(g.order() + 1) / 2;
      EXPECT_GE(full.hyperfields, std::uint64_t{1} << exponent);
    }
  }
}
