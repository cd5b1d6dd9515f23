#pragma once

// Strong Horn-backdoor sets of size exactly k, enumerated in lexicographic
// order by branching on the smallest still-eligible variable, each branch
// guarded by a bounded-search-tree existence test.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fptenum/enumcore.hpp"
#include "fptenum/errors.hpp"

namespace fptenum {

using Var = std::uint32_t;
using VarSet = std::vector<Var>;  // sorted ascending

struct Literal {
  Var var;
  bool positive;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Literals sorted by variable; no variable occurs twice.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
    std::ranges::sort(lits_);
    auto dup = std::ranges::unique(lits_);
    lits_.erase(dup.begin(), dup.end());
    for (std::size_t i = 1; i < lits_.size(); ++i)
      if (lits_[i].var == lits_[i - 1].var)
        throw PreconditionError("clause contains both polarities of variable " + std::to_string(lits_[i].var));
  }

  const std::vector<Literal>& literals() const noexcept { return lits_; }
  bool empty() const noexcept { return lits_.empty(); }
  std::size_t size() const noexcept { return lits_.size(); }

  std::size_t positive_count() const {
    return static_cast<std::size_t>(std::ranges::count_if(lits_, [](const Literal& l) { return l.positive; }));
  }

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> lits_;
};

class CnfFormula {
 public:
  CnfFormula() = default;
  CnfFormula(std::size_t var_count, std::vector<Clause> clauses) : n_(var_count), clauses_(std::move(clauses)) {
    for (const auto& c : clauses_)
      for (const auto& l : c.literals())
        if (l.var >= n_) throw PreconditionError("literal variable " + std::to_string(l.var) + " out of range");
  }

  std::size_t var_count() const noexcept { return n_; }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Clause> clauses_;
};

inline bool is_horn(const CnfFormula& phi) {
  return std::ranges::all_of(phi.clauses(), [](const Clause& c) { return c.positive_count() <= 1; });
}

// phi|_vars: every literal over a variable of vars is deleted. Clauses that
// become empty are kept.
inline CnfFormula restrict(const CnfFormula& phi, const VarSet& vars) {
  std::vector<bool> drop(phi.var_count(), false);
  for (auto v : vars) {
    if (v >= phi.var_count()) throw PreconditionError("restricted variable out of range");
    drop[v] = true;
  }
  std::vector<Clause> out;
  out.reserve(phi.clauses().size());
  for (const auto& c : phi.clauses()) {
    std::vector<Literal> kept;
    for (const auto& l : c.literals())
      if (!drop[l.var]) kept.push_back(l);
    out.emplace_back(std::move(kept));
  }
  return CnfFormula(phi.var_count(), std::move(out));
}

// Is there S ⊆ pool, |S| = k, with phi|_S Horn? phi must already be
// restricted by whatever the caller has committed to.
//
// A clause with two positive literals p1, p2 forces p1 or p2 into S; the
// lowest non-Horn clause and its two lowest positive literals are used. Once
// phi is Horn, any k pool variables do, since deleting more occurrences
// keeps a formula Horn.
inline bool exists_sbds(const CnfFormula& phi, std::size_t k, const VarSet& pool) {
  const Clause* offending = nullptr;
  for (const auto& c : phi.clauses())
    if (c.positive_count() >= 2) {
      offending = &c;
      break;
    }
  if (!offending) return pool.size() >= k;
  if (k == 0 || pool.size() < k) return false;

  Var p[2];
  std::size_t found = 0;
  for (const auto& l : offending->literals())
    if (l.positive && found < 2) p[found++] = l.var;

  for (auto v : p) {
    if (!std::ranges::binary_search(pool, v)) continue;
    VarSet rest;
    rest.reserve(pool.size() - 1);
    std::ranges::remove_copy(pool, std::back_inserter(rest), v);
    if (exists_sbds(restrict(phi, {v}), k - 1, rest)) return true;
  }
  return false;
}

inline VarSet all_variables(const CnfFormula& phi) {
  VarSet vars(phi.var_count());
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = static_cast<Var>(i);
  return vars;
}

// Every S ⊆ {0..n-1} with |S| = k and phi|_S Horn, exactly once, in
// lexicographic order.
inline SolutionStream<VarSet> generate_sbds(const CnfFormula& phi, std::size_t k,
                                            std::shared_ptr<SearchTrace> trace = nullptr) {
  struct Frame {
    VarSet chosen;
    std::size_t budget;
    std::size_t next;  // eligible pool is next..n-1
    std::size_t node;
  };
  struct State {
    CnfFormula phi;
    std::vector<Frame> stack;
    std::shared_ptr<SearchTrace> trace;
  };
  auto st = std::make_shared<State>(State{phi, {}, std::move(trace)});
  const auto n = phi.var_count();
  auto pool_from = [n](std::size_t first) {
    VarSet pool;
    for (auto v = first; v < n; ++v) pool.push_back(static_cast<Var>(v));
    return pool;
  };

  if (exists_sbds(phi, k, all_variables(phi))) {
    std::size_t node = st->trace ? st->trace->enter(SearchTrace::kNoParent) : 0;
    st->stack.push_back({{}, k, 0, node});
  }

  return SolutionStream<VarSet>([st, pool_from, n]() -> std::optional<VarSet> {
    while (!st->stack.empty()) {
      Frame f = std::move(st->stack.back());
      st->stack.pop_back();
      if (f.budget == 0) {
        if (st->trace) st->trace->emit(f.node);
        return std::move(f.chosen);
      }
      if (f.next == n) continue;  // unreachable under the guards
      const auto v = static_cast<Var>(f.next);
      auto rest = pool_from(f.next + 1);
      auto enter = [&](VarSet chosen, std::size_t budget) {
        std::size_t node = st->trace ? st->trace->enter(f.node) : 0;
        st->stack.push_back({std::move(chosen), budget, f.next + 1, node});
      };
      // Exclusion branch pushed first so inclusion is explored first.
      if (exists_sbds(restrict(st->phi, f.chosen), f.budget, rest)) enter(f.chosen, f.budget);
      VarSet with = f.chosen;
      with.push_back(v);
      if (exists_sbds(restrict(st->phi, with), f.budget - 1, rest)) enter(std::move(with), f.budget - 1);
    }
    return std::nullopt;
  });
}

}  // namespace fptenum
