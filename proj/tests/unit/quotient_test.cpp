#include <gtest/gtest.h>

#include <set>

#include "hb_test_support.hpp"
#include "hyperblocks/error.hpp"
#include "hyperblocks/quotient.hpp"

using namespace hyperblocks;
using hbtest::verified;
using hbtest::z3;

namespace {

std::string canon(const HyperfieldCandidate& h) {
  return canonical_form(h, automorphisms_fixing(h.group, h.minus_one));
}

std::set<std::uint32_t> as_set(const std::vector<std::uint32_t>& v) { return {v.begin(), v.end()}; }

// Subgroup of Z_p^x generated by g, as residues.
std::set<std::uint32_t> generated(std::uint32_t p, std::uint32_t g) {
  std::set<std::uint32_t> out;
  std::uint32_t x = 1;
  do {
    out.insert(x);
    x = x * g % p;
  } while (x != 1);
  return out;
}

HyperfieldCandidate krasner() {
  auto h = make_candidate(make_group({}), 0);
  h.pi.insert({0, 0});
  return verified(h);
}

}  // namespace

TEST(Field, Construction) {
  auto z7 = make_field(7, 1);
  EXPECT_EQ(z7.size(), 7u);
  EXPECT_EQ(z7.name(), "GF(7)");
  EXPECT_EQ(z7.mul(3, 5), 1u);
  EXPECT_EQ(z7.add(3, 5), 1u);
  EXPECT_EQ(z7.neg(1), 6u);

  auto f2 = make_field(2, 1);
  EXPECT_EQ(f2.size(), 2u);
  EXPECT_EQ(f2.add(1, 1), 0u);

  auto gf4 = make_field(2, 2);
  EXPECT_EQ(gf4.modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(gf4.name(), "GF(2^2)");
  // x * x = x + 1 with x = index 2
  EXPECT_EQ(gf4.mul(2, 2), 3u);

  EXPECT_THROW(make_field(6, 1), InvalidSpec);
  EXPECT_THROW(make_field(1, 1), InvalidSpec);
  EXPECT_THROW(make_field(2, 20), CapacityExceeded);
}

TEST(Field, AxiomsAndLogs) {
  for (auto [p, k] : std::initializer_list<std::pair<std::uint32_t, std::uint32_t>>{
           {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}, {7, 2}, {13, 1}}) {
    auto f = make_field(p, k);
    const std::uint32_t q = f.size();
    EXPECT_EQ(f.modulus().size(), k == 1 ? 0u : k + 1);
    for (std::uint32_t a = 0; a < q; ++a) {
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      EXPECT_EQ(f.mul(a, 1), a);
      if (a != 0) EXPECT_EQ(f.exp(f.log(a)), a);
      for (std::uint32_t b = 0; b < q; ++b) {
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        for (std::uint32_t c = 0; c < q; c += 3) EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
    std::set<std::uint32_t> powers;
    for (std::uint32_t e = 0; e < q - 1; ++e) powers.insert(f.exp(e));
    EXPECT_EQ(powers.size(), q - 1);
  }
}

TEST(Field, PrimePowers) {
  EXPECT_EQ(prime_power(81), (std::pair<std::uint32_t, std::uint32_t>{3, 4}));
  EXPECT_EQ(prime_power(2), (std::pair<std::uint32_t, std::uint32_t>{2, 1}));
  EXPECT_FALSE(prime_power(12));
  EXPECT_FALSE(prime_power(1));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(91));
}

TEST(Quotient, KnownIdentifications) {
  auto bd = quotient_hyperfield(make_quotient_spec(make_field(7, 1), 3));
  EXPECT_EQ(canon(bd), canon(z3("BD")));
  auto spec13 = make_quotient_spec(make_field(13, 1), 3);
  EXPECT_EQ(as_set(spec13.subgroup), generated(13, 8));
  EXPECT_EQ(canon(quotient_hyperfield(spec13)), canon(z3("BCD")));
  auto spec19 = make_quotient_spec(make_field(19, 1), 3);
  EXPECT_EQ(as_set(spec19.subgroup), generated(19, 8));
  EXPECT_EQ(canon(quotient_hyperfield(spec19)), canon(z3("ABCD")));
  EXPECT_EQ(canon(quotient_hyperfield(make_quotient_spec(make_field(2, 2), 3))), canon(z3("D")));
  EXPECT_THROW(make_quotient_spec(make_field(11, 1), 3), InvalidSpec);
}

TEST(Quotient, FullGroupGivesKrasnerOrField) {
  auto k = krasner();
  for (auto [p, e] : std::initializer_list<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 1}, {2, 2}, {7, 1}}) {
    auto h = quotient_hyperfield(make_quotient_spec(make_field(p, e), 1));
    EXPECT_EQ(h.pi, k.pi);
  }
  auto f2 = quotient_hyperfield(make_quotient_spec(make_field(2, 1), 1));
  EXPECT_EQ(f2.pi.size(), 0u);
}

TEST(Quotient, ConstructedQuotientsAreHyperfields) {
  for (std::uint64_t q = 2; q <= 64; ++q) {
    auto pk = prime_power(q);
    if (!pk) continue;
    auto f = make_field(pk->first, pk->second);
    for (std::uint32_t r = 1; r <= q - 1; ++r) {
      if ((q - 1) % r != 0 || r > kMaxGroupOrder) continue;
      auto spec = make_quotient_spec(f, r);
      EXPECT_EQ(spec.subgroup.size(), (q - 1) / r);
      auto h = quotient_hyperfield(spec);
      EXPECT_TRUE(check_axioms(h).passed) << q << " / " << r;
      if (r % 2 == 1 && r <= 15) {
        EXPECT_TRUE(is_union_of_blocks(h.pi, compute_blocks(h.group, h.minus_one)));
      }
    }
  }
}

TEST(Quotient, GeneratorChoiceDoesNotMatter) {
  // Relabelling by a different generator of F^x is an automorphism of Z_r,
  // so the canonical form is unchanged; the pi itself matches under that map.
  auto f = make_field(31, 1);
  auto spec = make_quotient_spec(f, 5);
  auto h = quotient_hyperfield(spec);
  auto autos = automorphisms_fixing(h.group, h.minus_one);
  const auto c = canon(h);
  for (const auto& s : autos) EXPECT_EQ(canonical_form(h.pi.permuted(s), autos), c);
}

TEST(Quotient, FiniteSearch) {
  auto abcd = verified(z3("ABCD"));
  auto found = is_finite_quotient(abcd, 100);
  ASSERT_TRUE(found.witness);
  EXPECT_EQ(found.witness->q, 19u);
  EXPECT_EQ(as_set(found.witness->subgroup), generated(19, 8));

  auto bc = verified(z3("BC"));
  auto miss = is_finite_quotient(bc, 81);
  EXPECT_FALSE(miss.witness);
  EXPECT_TRUE(miss.definitive);
  EXPECT_FALSE(is_finite_quotient(bc, 80).definitive);

  auto k = is_finite_quotient(krasner(), 5);
  ASSERT_TRUE(k.witness);
  EXPECT_EQ(k.witness->q, 3u);
  EXPECT_EQ(k.witness->subgroup_order, 2u);

  EXPECT_THROW(is_finite_quotient(z3("BC"), 81), PreconditionError);
}

TEST(Quotient, InfiniteExclusion) {
  EXPECT_TRUE(excludes_infinite_quotient(verified(z3("BC"))));
  EXPECT_FALSE(excludes_infinite_quotient(verified(z3("ABCD"))));
  EXPECT_FALSE(excludes_infinite_quotient(krasner()));
}

TEST(Quotient, Status) {
  auto bd = quotient_status(verified(z3("BD")), 81);
  EXPECT_EQ(bd.kind, QuotientKind::quotient);
  ASSERT_TRUE(bd.witness);
  EXPECT_EQ(bd.witness->q, 7u);
  EXPECT_EQ(as_set(bd.witness->subgroup), generated(7, 6));
  auto bcd = quotient_status(verified(z3("BCD")), 81);
  ASSERT_TRUE(bcd.witness);
  EXPECT_EQ(bcd.witness->q, 13u);
  EXPECT_EQ(as_set(bcd.witness->subgroup), generated(13, 8));
  for (const char* seq : {"BC", "ABD", "ACD"}) {
    EXPECT_EQ(quotient_status(verified(z3(seq)), 81).kind, QuotientKind::nonquotient) << seq;
  }
  // 1 + 1 = H here, so neither test can rule out an infinite field.
  EXPECT_EQ(quotient_status(verified(z3("ABC")), 81).kind, QuotientKind::unknown);
  EXPECT_EQ(quotient_status(verified(z3("BC")), 50).kind, QuotientKind::unknown);
  EXPECT_EQ(default_quotient_bound(3), 81u);
  EXPECT_EQ(default_quotient_bound(101), 100000u);
  EXPECT_EQ(quotient_kind_name(QuotientKind::nonquotient), "nonquotient");
}

TEST(Quotient, ConsistencyOverCensus) {
  for (std::uint32_t r : {3u, 5u}) {
    auto bp = compute_blocks(cyclic_group(r), 0);
    for (const auto& cls : enumerate(bp, CensusMode::full).classes) {
      auto st = quotient_status(cls.representative);
      if (st.kind == QuotientKind::quotient) {
        ASSERT_TRUE(st.witness);
        auto h = quotient_hyperfield(make_quotient_spec(make_field(st.witness->p, st.witness->k), r));
        EXPECT_EQ(canon(h), cls.canonical);
      }
    }
  }
}
