#include "hyperblocks/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>

#include "hyperblocks/error.hpp"

namespace hyperblocks {

struct AbelianGroup::Tables {
  std::vector<std::uint32_t> factors;
  std::uint32_t order = 1;
  std::vector<Element> mul;  // order * order
  std::vector<Element> inv;
  std::vector<std::uint32_t> elem_order;
};

namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> factorize(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint32_t ipow(std::uint32_t b, std::uint32_t e) {
  std::uint32_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Primary decomposition: gather prime-power exponents, then deal the j-th
// largest exponent of every prime into the j-th largest invariant factor.
std::vector<std::uint32_t> normalize(std::span<const std::uint32_t> factors) {
  std::map<std::uint32_t, std::vector<std::uint32_t>> exps;
  for (auto d : factors) {
    for (auto [p, e] : factorize(d)) exps[p].push_back(e);
  }
  std::size_t s = 0;
  for (auto& [p, es] : exps) {
    std::sort(es.begin(), es.end(), std::greater<>());
    s = std::max(s, es.size());
  }
  std::vector<std::uint32_t> inv(s, 1);
  for (const auto& [p, es] : exps) {
    for (std::size_t j = 0; j < es.size(); ++j) inv[s - 1 - j] *= ipow(p, es[j]);
  }
  return inv;
}

std::shared_ptr<const AbelianGroup::Tables> build_tables(std::vector<std::uint32_t> factors) {
  auto t = std::make_shared<AbelianGroup::Tables>();
  t->factors = std::move(factors);
  for (auto d : t->factors) t->order *= d;
  const std::uint32_t r = t->order;
  const std::size_t s = t->factors.size();

  std::vector<std::vector<std::uint32_t>> vecs(r, std::vector<std::uint32_t>(s));
  for (std::uint32_t i = 0; i < r; ++i) {
    std::uint32_t rem = i;
    for (std::size_t j = s; j-- > 0;) {
      vecs[i][j] = rem % t->factors[j];
      rem /= t->factors[j];
    }
  }
  auto encode = [&](const std::vector<std::uint32_t>& v) {
    std::uint32_t idx = 0;
    for (std::size_t j = 0; j < s; ++j) idx = idx * t->factors[j] + v[j];
    return idx;
  };

  t->mul.resize(static_cast<std::size_t>(r) * r);
  t->inv.resize(r);
  std::vector<std::uint32_t> w(s);
  for (std::uint32_t a = 0; a < r; ++a) {
    for (std::uint32_t b = 0; b < r; ++b) {
      for (std::size_t j = 0; j < s; ++j) w[j] = (vecs[a][j] + vecs[b][j]) % t->factors[j];
      t->mul[static_cast<std::size_t>(a) * r + b] = encode(w);
    }
    for (std::size_t j = 0; j < s; ++j) w[j] = (t->factors[j] - vecs[a][j]) % t->factors[j];
    t->inv[a] = encode(w);
  }

  t->elem_order.resize(r);
  for (std::uint32_t a = 0; a < r; ++a) {
    std::uint32_t k = 1;
    for (std::size_t j = 0; j < s; ++j) {
      const std::uint32_t d = t->factors[j];
      const std::uint32_t oj = d / std::gcd(d, vecs[a][j]);
      k = std::lcm(k, oj);
    }
    t->elem_order[a] = k;
  }
  return t;
}

}  // namespace

AbelianGroup::AbelianGroup() : t_(build_tables({})) {}

const std::vector<std::uint32_t>& AbelianGroup::invariant_factors() const { return t_->factors; }
std::uint32_t AbelianGroup::order() const { return t_->order; }

void AbelianGroup::check(Element a) const {
  if (a >= t_->order) {
    throw InvalidSpec("element index " + std::to_string(a) + " out of range for " + name());
  }
}

Element AbelianGroup::mul(Element a, Element b) const {
  return t_->mul[static_cast<std::size_t>(a) * t_->order + b];
}

Element AbelianGroup::inv(Element a) const { return t_->inv[a]; }

std::uint32_t AbelianGroup::order_of(Element a) const {
  check(a);
  return t_->elem_order[a];
}

Element AbelianGroup::pow(Element a, std::uint64_t e) const {
  Element result = identity();
  Element base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint32_t> AbelianGroup::to_vector(Element a) const {
  check(a);
  const auto& f = t_->factors;
  std::vector<std::uint32_t> v(f.size());
  for (std::size_t j = f.size(); j-- > 0;) {
    v[j] = a % f[j];
    a /= f[j];
  }
  return v;
}

Element AbelianGroup::from_vector(std::span<const std::uint32_t> v) const {
  const auto& f = t_->factors;
  if (v.size() != f.size()) throw InvalidSpec("residue vector has wrong length");
  Element idx = 0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (v[j] >= f[j]) throw InvalidSpec("residue out of range");
    idx = idx * f[j] + v[j];
  }
  return idx;
}

std::string AbelianGroup::name() const {
  if (t_->factors.empty()) return "Z1";
  std::string out;
  for (std::size_t j = 0; j < t_->factors.size(); ++j) {
    if (j > 0) out += 'x';
    out += 'Z' + std::to_string(t_->factors[j]);
  }
  return out;
}

std::string AbelianGroup::element_name(Element a) const {
  check(a);
  if (is_cyclic()) {
    if (a == 0) return "1";
    if (a == 1) return "a";
    return "a^" + std::to_string(a);
  }
  std::string out = "(";
  const auto v = to_vector(a);
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j > 0) out += ',';
    out += std::to_string(v[j]);
  }
  return out + ")";
}

AbelianGroup make_group(std::span<const std::uint32_t> factors) {
  std::uint64_t order = 1;
  for (auto d : factors) {
    if (d < 2) throw InvalidSpec("cyclic factor " + std::to_string(d) + " is smaller than 2");
    order *= d;
    if (order > kMaxGroupOrder) {
      throw CapacityExceeded("group order exceeds the supported maximum of " +
                             std::to_string(kMaxGroupOrder));
    }
  }
  return AbelianGroup(build_tables(normalize(factors)));
}

AbelianGroup make_group(std::initializer_list<std::uint32_t> factors) {
  return make_group(std::span<const std::uint32_t>(factors.begin(), factors.size()));
}

AbelianGroup cyclic_group(std::uint32_t n) {
  if (n == 0) throw InvalidSpec("cyclic group of order 0");
  if (n == 1) return AbelianGroup();
  return make_group({n});
}

AbelianGroup parse_group_spec(std::string_view spec) {
  std::vector<std::uint32_t> factors;
  std::size_t pos = 0;
  bool trivial = false;
  while (pos < spec.size()) {
    if (std::tolower(static_cast<unsigned char>(spec[pos])) != 'z') {
      throw InvalidSpec("bad group spec '" + std::string(spec) + "'");
    }
    ++pos;
    std::uint32_t d = 0;
    auto [ptr, ec] = std::from_chars(spec.data() + pos, spec.data() + spec.size(), d);
    if (ec != std::errc() || d == 0) {
      throw InvalidSpec("bad group spec '" + std::string(spec) + "'");
    }
    pos = static_cast<std::size_t>(ptr - spec.data());
    if (d == 1) {
      trivial = true;
    } else {
      factors.push_back(d);
    }
    if (pos < spec.size()) {
      const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(spec[pos])));
      if (c != 'x' && c != '*') throw InvalidSpec("bad group spec '" + std::string(spec) + "'");
      ++pos;
      if (pos == spec.size()) throw InvalidSpec("bad group spec '" + std::string(spec) + "'");
    }
  }
  if (factors.empty() && !trivial) throw InvalidSpec("empty group spec");
  return make_group(factors);
}

std::vector<std::vector<std::uint32_t>> abelian_groups_of_order(std::uint32_t n) {
  if (n == 0) throw InvalidSpec("group order 0");
  // partitions of each prime exponent, as descending exponent lists
  auto partitions = [](std::uint32_t e) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur;
    auto rec = [&](auto&& self, std::uint32_t rest, std::uint32_t cap) -> void {
      if (rest == 0) {
        out.push_back(cur);
        return;
      }
      for (std::uint32_t part = std::min(rest, cap); part >= 1; --part) {
        cur.push_back(part);
        self(self, rest - part, part);
        cur.pop_back();
      }
    };
    rec(rec, e, e);
    return out;
  };

  std::vector<std::vector<std::uint32_t>> result{{}};
  for (auto [p, e] : factorize(n)) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& base : result) {
      for (const auto& part : partitions(e)) {
        auto f = base;
        for (auto pe : part) f.push_back(ipow(p, pe));
        next.push_back(std::move(f));
      }
    }
    result = std::move(next);
  }
  for (auto& f : result) f = normalize(f);
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<Element> involution_candidates(const AbelianGroup& g) {
  std::vector<Element> out;
  for (Element a = 0; a < g.order(); ++a) {
    if (g.order_of(a) <= 2) out.push_back(a);
  }
  return out;
}

std::vector<Permutation> automorphisms(const AbelianGroup& g, const AutomorphismLimits& limits) {
  if (g.order() > limits.max_order) {
    throw CapacityExceeded("automorphism search is limited to groups of order <= " +
                           std::to_string(limits.max_order));
  }
  const auto& f = g.invariant_factors();
  const std::size_t s = f.size();

  std::vector<std::vector<Element>> by_order(g.order() + 1);
  for (Element a = 0; a < g.order(); ++a) by_order[g.order_of(a)].push_back(a);

  std::vector<Permutation> out;
  // images[i] lists the images of <e_1..e_i> in mixed-radix order.
  std::vector<std::vector<Element>> images(s + 1);
  images[0] = {g.identity()};
  std::vector<char> seen(g.order());

  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == s) {
      if (out.size() >= limits.max_count) {
        throw CapacityExceeded("more than " + std::to_string(limits.max_count) +
                               " automorphisms for " + g.name());
      }
      out.push_back(images[s]);
      return;
    }
    for (Element gi : by_order[f[i]]) {
      auto& next = images[i + 1];
      next.clear();
      std::fill(seen.begin(), seen.end(), 0);
      bool injective = true;
      for (Element base : images[i]) {
        Element cur = base;
        for (std::uint32_t t = 0; t < f[i]; ++t) {
          if (seen[cur]) {
            injective = false;
            break;
          }
          seen[cur] = 1;
          next.push_back(cur);
          cur = g.mul(cur, gi);
        }
        if (!injective) break;
      }
      if (injective) self(self, i + 1);
    }
  };
  rec(rec, 0);

  auto ident = std::find_if(out.begin(), out.end(), [](const Permutation& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != i) return false;
    }
    return true;
  });
  std::rotate(out.begin(), ident, ident + 1);
  return out;
}

std::vector<Permutation> automorphisms_fixing(const AbelianGroup& g, Element fixed,
                                              const AutomorphismLimits& limits) {
  auto all = automorphisms(g, limits);
  std::erase_if(all, [&](const Permutation& p) { return p[fixed] != fixed; });
  return all;
}

}  // namespace hyperblocks
