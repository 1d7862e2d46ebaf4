#include "hyperblocks/fetvins.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>

#include "hyperblocks/error.hpp"

namespace hyperblocks {

ElementSet set_sum(const Arithmetic& ar, std::span<const ElementSet> terms) {
  ElementSet acc = ElementSet::single(ar.zero());
  for (const auto& t : terms) acc = ar.sum(acc, t);
  return acc;
}

namespace {

void check_dimensions(const Arithmetic& ar, const LinearSystem& sys) {
  for (const auto& row : sys.coefficients) {
    if (row.size() != sys.variables) throw InvalidSpec("equation length differs from the variable count");
    for (auto a : row) {
      if (a > ar.zero()) throw InvalidSpec("coefficient out of range");
    }
  }
}

bool equation_holds(const Arithmetic& ar, const std::vector<Element>& row, const Assignment& asg) {
  ElementSet acc = ElementSet::single(ar.zero());
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] == ar.zero()) continue;
    acc = ar.sum(acc, ar.mul(row[j], asg[j]));
  }
  return acc.contains(ar.zero());
}

}  // namespace

bool check(const Arithmetic& ar, const LinearSystem& sys, const Assignment& asg) {
  check_dimensions(ar, sys);
  if (asg.size() != sys.variables) throw InvalidSpec("assignment length differs from the variable count");
  for (auto v : asg) {
    if (v > ar.zero()) throw InvalidSpec("assignment value out of range");
  }
  return std::all_of(sys.coefficients.begin(), sys.coefficients.end(),
                     [&](const auto& row) { return equation_holds(ar, row, asg); });
}

bool is_nontrivial(const Arithmetic& ar, const Assignment& asg) {
  return std::any_of(asg.begin(), asg.end(), [&](Element v) { return v != ar.zero(); });
}

std::optional<Assignment> brute_force_solve(const Arithmetic& ar, const LinearSystem& sys, std::uint64_t budget) {
  check_dimensions(ar, sys);
  const std::uint64_t base = ar.size();
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < sys.variables; ++j) {
    total *= base;
    if (total > budget) {
      throw CapacityExceeded("brute force over " + std::to_string(base) + "^" + std::to_string(sys.variables) +
                             " assignments exceeds the budget");
    }
  }
  // digit d stands for zero when d == 0 and for group element d - 1 otherwise
  std::vector<std::uint32_t> digit(sys.variables, 0);
  Assignment asg(sys.variables, ar.zero());
  for (std::uint64_t t = 1; t < total; ++t) {
    for (std::size_t j = sys.variables; j-- > 0;) {
      if (++digit[j] < base) {
        asg[j] = digit[j] - 1;
        break;
      }
      digit[j] = 0;
      asg[j] = ar.zero();
    }
    if (std::all_of(sys.coefficients.begin(), sys.coefficients.end(),
                    [&](const auto& row) { return equation_holds(ar, row, asg); })) {
      return asg;
    }
  }
  return std::nullopt;
}

namespace {

struct Term {
  std::size_t var;
  Element coef;  // never zero
};

using Equation = std::vector<Term>;  // sorted by var, one term per var

struct Substitution {
  std::size_t eliminated;
  Element factor;  // x_eliminated = factor * x_kept
  std::size_t kept;
};

constexpr std::size_t kExactPileVariables = 12;

class Reducer {
 public:
  Reducer(const Arithmetic& ar, const LinearSystem& sys, SolveTrace* trace)
      : ar_(ar), trace_(trace), live_(sys.variables, true), zeroed_(sys.variables, false) {
    for (const auto& row : sys.coefficients) {
      Equation eq;
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] != ar.zero()) eq.push_back({j, row[j]});
      }
      if (!eq.empty()) eqs_.push_back(std::move(eq));
    }
  }

  Assignment solve() {
    while (true) {
      reduce();
      std::vector<std::size_t> stalled;
      if (peel_and_assign(stalled)) break;
      // A stalled peel leaves a pile; this only happens when piles were not
      // searched for exactly.
      if (exact_piles()) throw InvariantViolation("peeling stalled although the system has no pile");
      std::vector<std::size_t> vars;
      for (auto e : stalled) {
        for (const auto& t : eqs_[e]) vars.push_back(t.var);
      }
      zero_variables(vars);
    }
    return assemble();
  }

 private:
  std::size_t live_count() const { return static_cast<std::size_t>(std::count(live_.begin(), live_.end(), true)); }
  bool exact_piles() const { return live_count() <= kExactPileVariables; }

  void zero_variables(std::vector<std::size_t> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (auto v : vars) {
      live_[v] = false;
      zeroed_[v] = true;
    }
    for (auto& eq : eqs_) {
      std::erase_if(eq, [&](const Term& t) { return zeroed_[t.var]; });
    }
    std::erase_if(eqs_, [](const Equation& eq) { return eq.empty(); });
    if (trace_ != nullptr) ++trace_->piles_zeroed;
  }

  std::optional<std::vector<std::size_t>> find_pile() const {
    for (const auto& eq : eqs_) {
      if (eq.size() == 1) return std::vector<std::size_t>{eq.front().var};
    }
    if (!exact_piles() || eqs_.empty()) return std::nullopt;

    std::vector<std::size_t> compact(live_.size(), 0);
    std::size_t next = 0;
    for (std::size_t v = 0; v < live_.size(); ++v) {
      if (live_[v]) compact[v] = next++;
    }
    std::vector<std::uint64_t> var_mask(eqs_.size(), 0);
    for (std::size_t e = 0; e < eqs_.size(); ++e) {
      for (const auto& t : eqs_[e]) var_mask[e] |= std::uint64_t{1} << compact[t.var];
    }
    const std::size_t k = eqs_.size();
    if (k >= 63) return std::nullopt;
    for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << k); ++subset) {
      std::uint64_t vars = 0;
      for (std::size_t e = 0; e < k; ++e) {
        if ((subset >> e) & 1) vars |= var_mask[e];
      }
      if (std::popcount(vars) <= std::popcount(subset)) {
        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < k; ++e) {
          if ((subset >> e) & 1) {
            for (const auto& t : eqs_[e]) out.push_back(t.var);
          }
        }
        return out;
      }
    }
    return std::nullopt;
  }

  // a x_j + b x_k ∋ 0 is solved by x_j = -a^-1 b x_k.
  void substitute(std::size_t index) {
    const Equation two = eqs_[index];
    eqs_.erase(eqs_.begin() + static_cast<std::ptrdiff_t>(index));
    const std::size_t j = two[0].var;
    const std::size_t k = two[1].var;
    const Element factor = ar_.neg(ar_.mul(ar_.inv(two[0].coef), two[1].coef));
    subs_.push_back({j, factor, k});
    live_[j] = false;

    for (auto& eq : eqs_) {
      auto tj = std::find_if(eq.begin(), eq.end(), [&](const Term& t) { return t.var == j; });
      if (tj == eq.end()) continue;
      const Element moved = ar_.mul(tj->coef, factor);
      eq.erase(tj);
      auto tk = std::find_if(eq.begin(), eq.end(), [&](const Term& t) { return t.var == k; });
      if (tk == eq.end()) {
        eq.push_back({k, moved});
        std::sort(eq.begin(), eq.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
        continue;
      }
      // The merged coefficient is a set; any nonzero member will do, and
      // the least index is taken. A sum of {0} contributes nothing.
      const ElementSet merged = ar_.sum(moved, tk->coef) & ar_.nonzero();
      if (merged.empty()) {
        eq.erase(tk);
      } else {
        tk->coef = merged.first();
      }
    }
    std::erase_if(eqs_, [](const Equation& eq) { return eq.empty(); });
    if (trace_ != nullptr) ++trace_->substitutions;
  }

  void reduce() {
    while (true) {
      if (auto pile = find_pile()) {
        zero_variables(std::move(*pile));
        continue;
      }
      auto two = std::find_if(eqs_.begin(), eqs_.end(), [](const Equation& eq) { return eq.size() == 2; });
      if (two != eqs_.end()) {
        substitute(static_cast<std::size_t>(two - eqs_.begin()));
        continue;
      }
      return;
    }
  }

  // Returns false with the stalled three-term equations when no variable
  // occurs in two or fewer of them.
  bool peel_and_assign(std::vector<std::size_t>& stalled) {
    std::vector<std::size_t> three;
    std::size_t long_eqs = 0;
    for (std::size_t e = 0; e < eqs_.size(); ++e) {
      if (eqs_[e].size() == 3) {
        three.push_back(e);
      } else {
        ++long_eqs;
      }
    }

    std::vector<std::size_t> order;
    std::vector<std::vector<std::size_t>> owned;
    std::vector<bool> removed(eqs_.size(), false);
    std::size_t remaining = three.size();
    while (remaining > 0) {
      std::vector<std::size_t> occurrences(live_.size(), 0);
      for (auto e : three) {
        if (removed[e]) continue;
        for (const auto& t : eqs_[e]) ++occurrences[t.var];
      }
      std::size_t pick = live_.size();
      for (std::size_t v = 0; v < live_.size(); ++v) {
        if (occurrences[v] >= 1 && occurrences[v] <= 2) {
          pick = v;
          break;
        }
      }
      if (pick == live_.size()) {
        for (auto e : three) {
          if (!removed[e]) stalled.push_back(e);
        }
        return false;
      }
      std::vector<std::size_t> mine;
      for (auto e : three) {
        if (removed[e]) continue;
        const auto& eq = eqs_[e];
        if (std::any_of(eq.begin(), eq.end(), [&](const Term& t) { return t.var == pick; })) {
          mine.push_back(e);
          removed[e] = true;
          --remaining;
        }
      }
      order.push_back(pick);
      owned.push_back(std::move(mine));
    }

    values_.assign(live_.size(), ar_.zero());
    for (std::size_t v = 0; v < live_.size(); ++v) {
      if (live_[v]) values_[v] = ar_.one();
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      const std::size_t v = order[i];
      bool found = false;
      for (Element e = 0; e < ar_.order() && !found; ++e) {
        values_[v] = e;
        found = std::all_of(owned[i].begin(), owned[i].end(), [&](std::size_t idx) { return holds(eqs_[idx]); });
      }
      if (!found) {
        throw InvariantViolation("no nonzero value satisfies the equations of a peeled variable");
      }
    }
    if (trace_ != nullptr) {
      trace_->discarded_long += long_eqs;
      trace_->peeled += order.size();
    }
    return true;
  }

  bool holds(const Equation& eq) const {
    ElementSet acc = ElementSet::single(ar_.zero());
    for (const auto& t : eq) acc = ar_.sum(acc, ar_.mul(t.coef, values_[t.var]));
    return acc.contains(ar_.zero());
  }

  Assignment assemble() const {
    Assignment asg = values_;
    for (std::size_t v = 0; v < zeroed_.size(); ++v) {
      if (zeroed_[v]) asg[v] = ar_.zero();
    }
    for (auto it = subs_.rbegin(); it != subs_.rend(); ++it) {
      asg[it->eliminated] = ar_.mul(it->factor, asg[it->kept]);
    }
    return asg;
  }

  const Arithmetic& ar_;
  SolveTrace* trace_;
  std::vector<Equation> eqs_;
  std::vector<bool> live_;
  std::vector<bool> zeroed_;
  std::vector<Substitution> subs_;
  Assignment values_;
};

}  // namespace

Assignment ample_solve(const Arithmetic& ar, const LinearSystem& sys, SolveTrace* trace) {
  const auto& h = ar.candidate();
  if (h.status != Status::verified_hyperfield && h.status != Status::certified_ample) {
    throw PreconditionError("ample_solve needs a verified or certified hyperfield");
  }
  if (!is_ample(h)) throw PreconditionError("ample_solve needs an ample hyperfield");
  check_dimensions(ar, sys);
  if (sys.equations() >= sys.variables) throw PreconditionError("ample_solve needs fewer equations than variables");

  Reducer reducer(ar, sys, trace);
  Assignment asg = reducer.solve();
  if (!is_nontrivial(ar, asg)) throw InvariantViolation("solver produced the trivial assignment");
  if (!check(ar, sys, asg)) throw InvariantViolation("solver produced an assignment that fails check()");
  return asg;
}

std::vector<std::vector<Element>> normalized_equations(const Arithmetic& ar, std::size_t n) {
  std::vector<std::vector<Element>> out;
  const std::uint32_t base = ar.size();
  for (std::size_t lead = 0; lead < n; ++lead) {
    const std::size_t free = n - lead - 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < free; ++i) count *= base;
    for (std::uint64_t t = 0; t < count; ++t) {
      std::vector<Element> row(n, ar.zero());
      row[lead] = ar.one();
      std::uint64_t rest = t;
      for (std::size_t j = n; j-- > lead + 1;) {
        const auto d = static_cast<std::uint32_t>(rest % base);
        rest /= base;
        row[j] = d == 0 ? ar.zero() : d - 1;
      }
      out.push_back(std::move(row));
    }
  }
  return out;
}

namespace {

std::uint64_t multiset_count(std::uint64_t items, std::uint64_t k) {
  // C(items + k - 1, k), saturating
  long double c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) c = c * static_cast<long double>(items + k - i) / static_cast<long double>(i);
  return c > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(c + 0.5L);
}

}  // namespace

FetvinsReport check_fetvins(const Arithmetic& ar, std::uint32_t n_max, const FetvinsOptions& opts) {
  FetvinsReport rep;
  rep.n_max = n_max;
  const auto& h = ar.candidate();
  const bool solver = opts.run_solver && is_ample(h) &&
                      (h.status == Status::verified_hyperfield || h.status == Status::certified_ample);

  std::uint64_t planned = 0;
  for (std::uint32_t n = 2; n <= n_max; ++n) {
    const auto eqs = static_cast<std::uint64_t>(normalized_equations(ar, n).size());
    for (std::uint32_t k = 1; k < n; ++k) planned += multiset_count(eqs, k);
    std::uint64_t assignments = 1;
    for (std::uint32_t j = 0; j < n; ++j) assignments *= ar.size();
    if (assignments > opts.brute_force_budget) {
      throw CapacityExceeded("brute force over " + std::to_string(ar.size()) + "^" + std::to_string(n) +
                             " assignments exceeds the budget");
    }
  }
  if (planned > opts.max_systems) {
    throw CapacityExceeded(std::to_string(planned) + " systems exceed the budget of " +
                           std::to_string(opts.max_systems));
  }

  std::mutex mu;
  for (std::uint32_t n = 2; n <= n_max && rep.confirmed; ++n) {
    const auto eqs = normalized_equations(ar, n);
    for (std::uint32_t k = 1; k < n && rep.confirmed; ++k) {
      const unsigned threads = std::max(1u, opts.threads);
      std::atomic<bool> stop{false};
      auto work = [&](unsigned w) {
        std::vector<std::size_t> pick(k, 0);
        LinearSystem sys;
        sys.variables = n;
        sys.coefficients.resize(k);
        std::uint64_t local_checked = 0, local_runs = 0, serial = 0;
        while (!stop.load(std::memory_order_relaxed)) {
          if (serial++ % threads == w) {
            for (std::size_t i = 0; i < k; ++i) sys.coefficients[i] = eqs[pick[i]];
            ++local_checked;
            if (!brute_force_solve(ar, sys, opts.brute_force_budget)) {
              std::lock_guard lock(mu);
              if (rep.confirmed) {
                rep.confirmed = false;
                rep.counterexample = sys;
              }
              stop = true;
            }
            if (solver) {
              ++local_runs;
              std::string failure;
              try {
                ample_solve(ar, sys);
              } catch (const InvariantViolation& e) {
                failure = e.what();
              }
              if (!failure.empty()) {
                std::lock_guard lock(mu);
                if (rep.solver_failures++ == 0) {
                  rep.solver_failure_example = sys;
                  rep.solver_failure_message = failure;
                }
              }
            }
          }
          // next nondecreasing k-tuple of equation indices
          std::size_t i = k;
          while (i > 0 && pick[i - 1] + 1 == eqs.size()) --i;
          if (i == 0) break;
          ++pick[i - 1];
          for (std::size_t j = i; j < k; ++j) pick[j] = pick[i - 1];
        }
        std::lock_guard lock(mu);
        rep.systems_checked += local_checked;
        rep.solver_runs += local_runs;
      };
      if (threads == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
      }
    }
  }
  return rep;
}

}  // namespace hyperblocks
