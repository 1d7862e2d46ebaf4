#include "hyperblocks/quotient.hpp"

#include <algorithm>
#include <numeric>

#include "hyperblocks/census.hpp"
#include "hyperblocks/error.hpp"

namespace hyperblocks {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients, constant term first

std::vector<std::uint32_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<std::uint32_t>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo a nonzero polynomial m over GF(p).
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inverse_mod(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  return out;
}

Poly digits(std::uint64_t index, std::uint32_t p, std::size_t k) {
  Poly out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  return out;
}

std::uint32_t undigits(const Poly& a, std::uint32_t p) {
  std::uint32_t idx = 0;
  for (std::size_t i = a.size(); i-- > 0;) idx = idx * p + a[i];
  return idx;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  // trial division by every monic polynomial of degree 1..k/2
  for (std::size_t d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t tail = 0; tail < count; ++tail) {
      Poly g = digits(tail, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto ps = prime_factors(q);
  if (ps.size() != 1) return std::nullopt;
  std::uint32_t k = 0;
  while (q > 1) {
    q /= ps[0];
    ++k;
  }
  return std::make_pair(ps[0], k);
}

std::uint32_t FiniteField::add(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) return (a + b) % p_;
  std::uint32_t out = 0, place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

std::uint32_t FiniteField::neg(std::uint32_t a) const {
  if (k_ == 1) return (p_ - a % p_) % p_;
  std::uint32_t out = 0, place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return out;
}

std::uint32_t FiniteField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
}

std::string FiniteField::name() const {
  if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

FiniteField make_field(std::uint32_t p, std::uint32_t k, std::uint64_t max_q) {
  if (!is_prime(p)) throw InvalidSpec(std::to_string(p) + " is not prime");
  if (k == 0) throw InvalidSpec("field degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > max_q) {
      throw CapacityExceeded("field size " + std::to_string(p) + "^" + std::to_string(k) + " exceeds the bound " +
                             std::to_string(max_q));
    }
  }

  FiniteField f;
  f.p_ = p;
  f.k_ = k;
  f.q_ = static_cast<std::uint32_t>(q);

  Poly modulus;
  if (k > 1) {
    for (std::uint64_t tail = 0; tail < q; ++tail) {
      Poly cand = digits(tail, p, k);
      cand.push_back(1);
      if (irreducible(cand, p)) {
        modulus = cand;
        break;
      }
    }
    f.modulus_ = modulus;
  }
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (k == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
    auto prod = poly_mod(poly_mul(digits(a, p, k), digits(b, p, k), p), modulus, p);
    return undigits(prod, p);
  };

  const std::uint32_t n = f.q_ - 1;
  const auto ls = prime_factors(n);
  auto slow_pow = [&](std::uint32_t a, std::uint64_t e) {
    std::uint32_t result = 1, base = a;
    while (e > 0) {
      if (e & 1) result = slow_mul(result, base);
      base = slow_mul(base, base);
      e >>= 1;
    }
    return result;
  };
  std::uint32_t gen = 1;
  for (std::uint32_t cand = (n == 1 ? 1 : 2); cand < f.q_; ++cand) {
    if (std::all_of(ls.begin(), ls.end(), [&](std::uint32_t l) { return slow_pow(cand, n / l) != 1; })) {
      gen = cand;
      break;
    }
  }
  f.exp_.resize(n);
  f.log_.assign(f.q_, 0);
  std::uint32_t cur = 1;
  for (std::uint32_t e = 0; e < n; ++e) {
    f.exp_[e] = cur;
    f.log_[cur] = e;
    cur = slow_mul(cur, gen);
  }
  return f;
}

QuotientSpec make_quotient_spec(const FiniteField& field, std::uint32_t r) {
  const std::uint32_t n = field.size() - 1;
  if (r == 0 || n % r != 0) {
    throw InvalidSpec(std::to_string(r) + " does not divide " + std::to_string(n) + " = q - 1");
  }
  QuotientSpec spec{field, r, {}, 1};
  const std::uint32_t order = n / r;
  for (std::uint32_t j = 0; j < order; ++j) spec.subgroup.push_back(field.exp(static_cast<std::uint64_t>(r) * j));
  std::sort(spec.subgroup.begin(), spec.subgroup.end());
  for (auto x : spec.subgroup) {
    const std::uint32_t e = field.log(x);
    if (n / std::gcd(e == 0 ? n : e, n) == order) {
      spec.subgroup_generator = x;
      break;
    }
  }
  return spec;
}

HyperfieldCandidate quotient_hyperfield(const QuotientSpec& spec) {
  const FiniteField& f = spec.field;
  const std::uint32_t r = spec.r;
  const std::uint32_t n = f.size() - 1;
  auto h = make_candidate(cyclic_group(r), f.log(f.neg(f.one())) % r);
  for (Element x = 0; x < r; ++x) {
    for (std::uint32_t e = x; e < n; e += r) {
      // e runs over the coset g^x G
      const std::uint32_t s = f.add(f.exp(e), f.one());
      if (s != 0) h.pi.insert({x, f.log(s) % r});
    }
  }
  return h;
}

FiniteQuotientSearch is_finite_quotient(const HyperfieldCandidate& h, std::uint64_t q_bound) {
  if (h.status != Status::verified_hyperfield && h.status != Status::certified_ample) {
    throw PreconditionError("quotient search needs a verified or certified hyperfield");
  }
  FiniteQuotientSearch out;
  out.q_bound = q_bound;
  const std::uint32_t r = h.order();
  if (!h.group.is_cyclic()) {
    out.definitive = true;
    return out;
  }
  std::uint64_t r4 = 1;
  for (int i = 0; i < 4; ++i) r4 *= r;
  out.definitive = (r % 2 == 1) && q_bound >= r4;

  const auto autos = automorphisms_fixing(h.group, h.minus_one, {kMaxGroupOrder, std::size_t{1} << 18});
  const auto target = canonical_form(h, autos);
  for (std::uint64_t q = r + 1; q <= q_bound; q += r) {
    const auto pk = prime_power(q);
    if (!pk) continue;
    const auto field = make_field(pk->first, pk->second, q_bound);
    const auto spec = make_quotient_spec(field, r);
    const auto quot = quotient_hyperfield(spec);
    if (quot.minus_one != h.minus_one) continue;
    if (canonical_form(quot, autos) == target) {
      out.witness = QuotientWitness{q, pk->first, pk->second, r, spec.subgroup_generator,
                                    static_cast<std::uint32_t>(spec.subgroup.size()), spec.subgroup};
      return out;
    }
  }
  return out;
}

bool excludes_infinite_quotient(const HyperfieldCandidate& h) {
  const ElementSet sum = add(h, h.group.identity(), h.minus_one);
  return sum != ElementSet::prefix(h.size());
}

std::string quotient_kind_name(QuotientKind k) {
  switch (k) {
    case QuotientKind::quotient: return "quotient";
    case QuotientKind::nonquotient: return "nonquotient";
    case QuotientKind::unknown: return "unknown";
  }
  return "unknown";
}

std::uint64_t default_quotient_bound(std::uint32_t r) {
  std::uint64_t r4 = 1;
  for (int i = 0; i < 4; ++i) r4 *= r;
  return std::min<std::uint64_t>(r4, 100000);
}

QuotientStatus quotient_status(const HyperfieldCandidate& h, std::optional<std::uint64_t> q_bound) {
  QuotientStatus st;
  st.q_bound = q_bound.value_or(default_quotient_bound(h.order()));
  auto search = is_finite_quotient(h, st.q_bound);
  if (search.witness) {
    st.kind = QuotientKind::quotient;
    st.witness = std::move(search.witness);
  } else if (search.definitive && excludes_infinite_quotient(h)) {
    st.kind = QuotientKind::nonquotient;
  } else {
    st.kind = QuotientKind::unknown;
  }
  return st;
}

}  // namespace hyperblocks
