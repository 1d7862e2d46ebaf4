#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperblocks/hyperfield.hpp"

namespace hyperblocks {

/// GF(p^k). Elements are indexed 0..q-1 by their base-p coefficient digits
/// (constant term least significant); 0 is zero and 1 is one.
class FiniteField {
 public:
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t size() const { return q_; }
  /// Monic modulus, coefficients from the constant term up (size k+1);
  /// empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t one() const { return 1; }

  /// A fixed generator of the cyclic group F^x.
  std::uint32_t generator() const { return exp_[1 % (q_ - 1)]; }
  /// Discrete log base generator() of a nonzero element.
  std::uint32_t log(std::uint32_t a) const { return log_[a]; }
  std::uint32_t exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

  std::string name() const;

 private:
  friend FiniteField make_field(std::uint32_t p, std::uint32_t k, std::uint64_t max_q);

  std::uint32_t p_ = 2;
  std::uint32_t k_ = 1;
  std::uint32_t q_ = 2;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;  // size q-1
  std::vector<std::uint32_t> log_;  // size q, log_[0] unused
};

bool is_prime(std::uint64_t n);

/// Prime field for k = 1; otherwise the lexicographically least monic
/// irreducible modulus (tail coefficients read as a base-p number, constant
/// term least significant). Throws InvalidSpec if p is not prime and
/// CapacityExceeded if p^k > max_q.
FiniteField make_field(std::uint32_t p, std::uint32_t k, std::uint64_t max_q = 100000);

/// If q is a prime power p^k, returns {p, k}.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

/// F / G where G is the subgroup of r-th powers (index r in F^x).
struct QuotientSpec {
  FiniteField field;
  std::uint32_t r = 1;
  std::vector<std::uint32_t> subgroup;     ///< sorted element indices of G
  std::uint32_t subgroup_generator = 1;    ///< least generator of G
};

/// Throws InvalidSpec unless r divides q - 1.
QuotientSpec make_quotient_spec(const FiniteField& field, std::uint32_t r);

/// The coset hyperfield on Z_r: the class of g^e (g = field.generator())
/// is a^(e mod r). [a] + [b] collects the classes of a g1 + b g2.
HyperfieldCandidate quotient_hyperfield(const QuotientSpec& spec);

struct QuotientWitness {
  std::uint64_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint32_t r = 0;
  std::uint32_t subgroup_generator = 1;
  std::uint32_t subgroup_order = 0;
  std::vector<std::uint32_t> subgroup;
};

struct FiniteQuotientSearch {
  std::optional<QuotientWitness> witness;
  std::uint64_t q_bound = 0;
  /// True when "not found" is a proof: q_bound >= r^4 with r odd, or the
  /// multiplicative group is not cyclic.
  bool definitive = false;
};

/// Scans prime powers q <= q_bound with r | q - 1 in increasing order and
/// compares canonical forms. Requires a verified or certified candidate.
FiniteQuotientSearch is_finite_quotient(const HyperfieldCandidate& h, std::uint64_t q_bound);

/// True iff 1 + (-1) is not the whole hyperfield, which rules out being a
/// quotient of an infinite field.
bool excludes_infinite_quotient(const HyperfieldCandidate& h);

enum class QuotientKind { quotient, nonquotient, unknown };

std::string quotient_kind_name(QuotientKind k);

struct QuotientStatus {
  QuotientKind kind = QuotientKind::unknown;
  std::optional<QuotientWitness> witness;
  std::uint64_t q_bound = 0;
};

/// min(r^4, 100000).
std::uint64_t default_quotient_bound(std::uint32_t r);

QuotientStatus quotient_status(const HyperfieldCandidate& h, std::optional<std::uint64_t> q_bound = std::nullopt);

}  // namespace hyperblocks
