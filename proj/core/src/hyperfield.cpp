#include "hyperblocks/hyperfield.hpp"

#include <algorithm>

#include "hyperblocks/error.hpp"

namespace hyperblocks {

std::uint32_t PairRelation::column_count(Element y) const {
  std::uint32_t n = 0;
  for (const auto& row : rows_) n += row.contains(y) ? 1 : 0;
  return n;
}

std::size_t PairRelation::size() const {
  std::size_t n = 0;
  for (const auto& row : rows_) n += row.size();
  return n;
}

std::string PairRelation::bit_string() const {
  std::string bits(static_cast<std::size_t>(r_) * r_, '0');
  for (Element x = 0; x < r_; ++x) {
    rows_[x].for_each([&](std::uint32_t y) { bits[static_cast<std::size_t>(x) * r_ + y] = '1'; });
  }
  return bits;
}

PairRelation PairRelation::from_bit_string(std::uint32_t r, const std::string& bits) {
  if (bits.size() != static_cast<std::size_t>(r) * r) {
    throw InvalidSpec("pi bit string has length " + std::to_string(bits.size()) + ", expected " +
                      std::to_string(static_cast<std::size_t>(r) * r));
  }
  PairRelation pi(r);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      pi.insert({static_cast<Element>(i / r), static_cast<Element>(i % r)});
    } else if (bits[i] != '0') {
      throw InvalidSpec("pi bit string may only contain '0' and '1'");
    }
  }
  return pi;
}

PairRelation PairRelation::permuted(std::span<const Element> sigma) const {
  PairRelation out(r_);
  for (Element x = 0; x < r_; ++x) {
    auto& dst = out.rows_[sigma[x]];
    rows_[x].for_each([&](std::uint32_t y) { dst.insert(sigma[y]); });
  }
  return out;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::unverified: return "unverified";
    case Status::verified_hyperfield: return "verified-hyperfield";
    case Status::certified_ample: return "certified-ample";
    case Status::failed: return "failed";
  }
  return "unverified";
}

Status parse_status(const std::string& name) {
  for (auto s : {Status::unverified, Status::verified_hyperfield, Status::certified_ample, Status::failed}) {
    if (status_name(s) == name) return s;
  }
  if (name.rfind("failed", 0) == 0) return Status::failed;
  throw InvalidSpec("unknown status '" + name + "'");
}

HyperfieldCandidate make_candidate(const AbelianGroup& g, Element minus_one) {
  if (minus_one >= g.order() || g.order_of(minus_one) > 2) {
    throw InvalidSpec("-1 must be an element of order 1 or 2");
  }
  HyperfieldCandidate h;
  h.group = g;
  h.minus_one = minus_one;
  h.pi = PairRelation(g.order());
  return h;
}

HyperfieldCandidate build_candidate(const BlockPartition& bp, const std::vector<bool>& chosen_blocks) {
  if (chosen_blocks.size() != bp.block_count()) {
    throw PreconditionError("block selection has length " + std::to_string(chosen_blocks.size()) +
                            ", expected " + std::to_string(bp.block_count()));
  }
  auto h = make_candidate(bp.group(), bp.minus_one());
  const std::uint32_t r = bp.order();
  for (std::size_t i = 0; i < chosen_blocks.size(); ++i) {
    if (!chosen_blocks[i]) continue;
    for (auto c : bp.block(i)) h.pi.insert(decode_pair(r, c));
  }
  return h;
}

HyperfieldCandidate build_candidate(const BlockPartition& bp, std::uint64_t block_mask) {
  if (bp.block_count() < 64 && (block_mask >> bp.block_count()) != 0) {
    throw PreconditionError("block mask has bits beyond the block count");
  }
  std::vector<bool> sel(bp.block_count());
  for (std::size_t i = 0; i < sel.size() && i < 64; ++i) sel[i] = ((block_mask >> i) & 1) != 0;
  return build_candidate(bp, sel);
}

ElementSet add(const HyperfieldCandidate& h, Element x, Element y) {
  const Element zero = h.zero();
  if (x == zero) return ElementSet::single(y);
  if (y == zero) return ElementSet::single(x);
  const auto& g = h.group;
  const Element z = g.mul(g.inv(y), x);
  ElementSet out;
  h.pi.row(z).for_each([&](std::uint32_t w) { out.insert(g.mul(y, w)); });
  if (z == h.minus_one) out.insert(zero);
  return out;
}

Arithmetic::Arithmetic(HyperfieldCandidate h) : h_(std::move(h)), r_(h_.group.order()) {
  const std::uint32_t n = r_ + 1;
  table_.resize(static_cast<std::size_t>(n) * n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) table_[static_cast<std::size_t>(x) * n + y] = add(h_, x, y);
  }
}

ElementSet Arithmetic::sum(const ElementSet& a, Element x) const {
  ElementSet out;
  a.for_each([&](std::uint32_t e) { out |= sum(e, x); });
  return out;
}

ElementSet Arithmetic::sum(const ElementSet& a, const ElementSet& b) const {
  ElementSet out;
  b.for_each([&](std::uint32_t e) { out |= sum(a, e); });
  return out;
}

Element Arithmetic::mul(Element x, Element y) const {
  if (x == r_ || y == r_) return r_;
  return h_.group.mul(x, y);
}

ElementSet Arithmetic::mul(Element x, const ElementSet& a) const {
  ElementSet out;
  a.for_each([&](std::uint32_t e) { out.insert(mul(x, e)); });
  return out;
}

Element Arithmetic::neg(Element x) const { return mul(h_.minus_one, x); }

Element Arithmetic::inv(Element x) const {
  if (x == r_) throw PreconditionError("zero has no multiplicative inverse");
  return h_.group.inv(x);
}

std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::nonempty: return "nonempty";
    case Axiom::commutativity: return "commutativity";
    case Axiom::negatives: return "negatives";
    case Axiom::associativity: return "associativity";
    case Axiom::distributivity: return "distributivity";
    case Axiom::reversibility: return "reversibility";
  }
  return "unknown";
}

namespace {

std::string element_text(const HyperfieldCandidate& h, Element e) {
  return e == h.zero() ? std::string("0") : h.group.element_name(e);
}

VerificationReport violation(const HyperfieldCandidate& h, Axiom a, std::vector<Element> witness,
                             std::string detail) {
  VerificationReport rep;
  rep.passed = false;
  rep.violated = a;
  rep.witness = std::move(witness);
  std::string w;
  for (std::size_t i = 0; i < rep.witness.size(); ++i) {
    if (i > 0) w += ", ";
    w += element_text(h, rep.witness[i]);
  }
  rep.message = axiom_name(a) + " fails at (" + w + "): " + std::move(detail);
  return rep;
}

}  // namespace

VerificationReport check_axioms(const HyperfieldCandidate& h) {
  const Arithmetic ar(h);
  const std::uint32_t n = ar.size();
  auto text = [&](Element e) { return element_text(h, e); };

  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (ar.sum(x, y).empty()) {
        return violation(h, Axiom::nonempty, {x, y}, text(x) + " + " + text(y) + " is empty");
      }
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      if (ar.sum(x, y) != ar.sum(y, x)) {
        return violation(h, Axiom::commutativity, {x, y}, "x + y differs from y + x");
      }
    }
  }
  for (Element x = 0; x < n; ++x) {
    std::uint32_t count = 0;
    for (Element y = 0; y < n; ++y) count += ar.sum(x, y).contains(ar.zero()) ? 1 : 0;
    if (count != 1) {
      return violation(h, Axiom::negatives, {x},
                       std::to_string(count) + " elements y have 0 in " + text(x) + " + y");
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      const ElementSet& xy = ar.sum(x, y);
      for (Element z = 0; z < n; ++z) {
        // x + (y + z) equals (y + z) + x once commutativity holds
        if (ar.sum(xy, z) != ar.sum(ar.sum(y, z), x)) {
          return violation(h, Axiom::associativity, {x, y, z}, "(x + y) + z differs from x + (y + z)");
        }
      }
    }
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      for (Element c = 0; c < n; ++c) {
        if (ar.mul(a, ar.sum(b, c)) != ar.sum(ar.mul(a, b), ar.mul(a, c))) {
          return violation(h, Axiom::distributivity, {a, b, c}, "a(b + c) differs from ab + ac");
        }
      }
    }
  }
  for (Element y = 0; y < n; ++y) {
    const Element ny = ar.neg(y);
    for (Element z = 0; z < n; ++z) {
      const ElementSet& yz = ar.sum(y, z);
      for (Element x = 0; x < n; ++x) {
        if (yz.contains(x) && !ar.sum(x, ny).contains(z)) {
          return violation(h, Axiom::reversibility, {x, y, z}, "x in y + z but z not in x - y");
        }
      }
    }
  }
  return {};
}

VerificationReport verify_axioms(HyperfieldCandidate& h) {
  auto rep = check_axioms(h);
  if (rep.passed) {
    h.status = Status::verified_hyperfield;
    h.failure.clear();
  } else {
    h.status = Status::failed;
    h.failure = rep.message;
  }
  return rep;
}

AmpleParams ample_params(const HyperfieldCandidate& h) {
  const std::uint32_t r = h.order();
  AmpleParams p{r, r};
  std::vector<std::uint32_t> cols(r, 0);
  for (Element x = 0; x < r; ++x) {
    p.m = std::min(p.m, h.pi.row_count(x));
    h.pi.row(x).for_each([&](std::uint32_t y) { ++cols[y]; });
  }
  for (auto c : cols) p.k = std::min(p.k, c);
  return p;
}

bool is_ample(const HyperfieldCandidate& h) {
  const auto p = ample_params(h);
  return p.m + p.k > h.order();
}

bool is_union_of_blocks(const PairRelation& pi, const BlockPartition& bp) {
  const std::uint32_t r = bp.order();
  if (pi.order() != r) return false;
  for (const auto& block : bp.blocks()) {
    const bool first = pi.contains(decode_pair(r, block.front()));
    for (auto c : block) {
      if (pi.contains(decode_pair(r, c)) != first) return false;
    }
  }
  return true;
}

bool certify_ample(HyperfieldCandidate& h, const BlockPartition& bp) {
  if (!(h.group == bp.group()) || h.minus_one != bp.minus_one()) {
    throw PreconditionError("block partition does not match the candidate's group and -1");
  }
  if (!is_union_of_blocks(h.pi, bp)) {
    throw PreconditionError("pi is not a union of blocks");
  }
  if (!is_ample(h)) return false;
  h.status = Status::certified_ample;
  h.failure.clear();
  return true;
}

}  // namespace hyperblocks
