#pragma once

// Enumeration of all models of weight at least k by self-reduction: variables
// are fixed one at a time from the highest index down, true before false, and
// a branch is entered only if an exact weight oracle confirms that it still
// contains a model of sufficient weight.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fptenum/csp.hpp"
#include "fptenum/enumcore.hpp"
#include "fptenum/errors.hpp"
#include "fptenum/gf2.hpp"

namespace fptenum {

using Model = std::vector<std::size_t>;  // true variables, ascending

enum class OracleKind { bruteforce, dual_horn_propagation, affine_gauss, branch_and_bound };

inline std::string_view to_string(OracleKind k) {
  switch (k) {
    case OracleKind::bruteforce: return "brute";
    case OracleKind::dual_horn_propagation: return "dualhorn";
    case OracleKind::affine_gauss: return "affine";
    case OracleKind::branch_and_bound: return "bb";
  }
  return "?";
}

inline constexpr std::size_t kAffineFreeVarLimit = 22;

namespace detail {

inline bool all_relations(const GammaFormula& phi, bool (*pred)(const BooleanRelation&)) {
  return std::ranges::all_of(phi.constraints(), [&](const Constraint& c) { return pred(*c.relation); });
}

inline bool is_or_closed(const BooleanRelation& r) { return classify_relation(r).dual_horn; }
inline bool is_affine(const BooleanRelation& r) { return classify_relation(r).affine; }

}  // namespace detail

// Maximum weight of a model of a formula whose relations are all closed
// under OR; nullopt if unsatisfiable.
//
// Complementing every tuple turns the formula into an AND-closed one whose
// unique minimal model is reached by raising a lower bound: for each
// constraint, the AND of all consistent tuples above the bound must itself be
// above the bound. The complement of that minimal model is the heaviest
// model of the original formula.
inline std::optional<std::size_t> max_weight_dual_horn(const GammaFormula& phi) {
  if (!detail::all_relations(phi, detail::is_or_closed))
    throw PreconditionError("max_weight_dual_horn needs OR-closed relations");
  if (phi.unsatisfiable()) return std::nullopt;

  struct Complemented {
    std::vector<Tuple> tuples;  // complemented, consistent on repeated vars
    const std::vector<std::size_t>* vars;
  };
  std::vector<Complemented> cons;
  std::vector<std::vector<std::size_t>> watch(phi.var_count());
  for (const auto& c : phi.constraints()) {
    Complemented cc{{}, &c.vars};
    const Tuple mask = c.relation->full_mask();
    for (auto t : c.relation->tuples()) {
      Tuple ct = t ^ mask;
      bool consistent = true;
      for (std::size_t i = 0; i < c.vars.size() && consistent; ++i)
        for (std::size_t j = i + 1; j < c.vars.size(); ++j)
          if (c.vars[i] == c.vars[j] && ((ct >> i) & 1U) != ((ct >> j) & 1U)) {
            consistent = false;
            break;
          }
      if (consistent) cc.tuples.push_back(ct);
    }
    if (cc.tuples.empty()) return std::nullopt;
    for (auto v : c.vars) watch[v].push_back(cons.size());
    cons.push_back(std::move(cc));
  }

  std::vector<bool> bound(phi.var_count(), false);
  std::vector<std::size_t> queue(cons.size());
  std::vector<bool> queued(cons.size(), true);
  for (std::size_t i = 0; i < cons.size(); ++i) queue[i] = i;

  while (!queue.empty()) {
    auto ci = queue.back();
    queue.pop_back();
    queued[ci] = false;
    const auto& c = cons[ci];
    const auto& vars = *c.vars;
    Tuple low = 0;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (bound[vars[i]]) low |= Tuple{1} << i;
    bool any = false;
    Tuple meet = ~Tuple{0};
    for (auto t : c.tuples) {
      if ((t & low) != low) continue;
      meet &= t;
      any = true;
    }
    if (!any) return std::nullopt;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (((meet >> i) & 1U) && !bound[vars[i]]) {
        bound[vars[i]] = true;
        for (auto other : watch[vars[i]])
          if (!queued[other]) {
            queued[other] = true;
            queue.push_back(other);
          }
      }
    }
  }
  auto raised = static_cast<std::size_t>(std::ranges::count(bound, true));
  return phi.var_count() - raised;
}

namespace detail {

// Linear equations (over coordinates) whose solution set is exactly r, or
// nullopt when r is empty.
inline std::optional<std::vector<gf2::Row>> affine_equations(const BooleanRelation& r) {
  if (r.empty()) return std::nullopt;
  const std::size_t a = r.arity();
  const Tuple t0 = r.tuples().front();
  std::vector<gf2::Row> diffs;
  for (auto t : r.tuples()) {
    gf2::Row row(a);
    for (std::size_t i = 0; i < a; ++i) row.set(i, ((t ^ t0) >> i) & 1U);
    diffs.push_back(std::move(row));
  }
  auto span = gf2::eliminate(std::move(diffs), a);
  if (r.size() != (std::size_t{1} << span.rows.size()))
    throw PreconditionError("relation is not affine");
  // Annihilator of the span: one equation per free column.
  std::vector<gf2::Row> eqs;
  for (auto f : span.free_columns()) {
    gf2::Row eq(a);
    eq.set(f, true);
    for (std::size_t i = 0; i < span.rows.size(); ++i)
      if (span.rows[i].get(f)) eq.set(span.pivots[i], true);
    bool rhs = false;
    for (std::size_t i = 0; i < a; ++i)
      if (eq.get(i) && ((t0 >> i) & 1U)) rhs = !rhs;
    eq.rhs = rhs;
    eqs.push_back(std::move(eq));
  }
  return eqs;
}

}  // namespace detail

// Maximum model weight of an affine formula by elimination over GF(2) and
// exhaustion of the free variables; nullopt if unsatisfiable. Stops early
// once `target` is reached.
inline std::optional<std::size_t> max_weight_affine(const GammaFormula& phi,
                                                    std::size_t target = static_cast<std::size_t>(-1)) {
  if (phi.unsatisfiable()) return std::nullopt;
  const std::size_t n = phi.var_count();
  std::vector<gf2::Row> rows;
  for (const auto& c : phi.constraints()) {
    auto eqs = detail::affine_equations(*c.relation);
    if (!eqs) return std::nullopt;
    for (const auto& eq : *eqs) {
      gf2::Row row(n);
      for (std::size_t i = 0; i < c.vars.size(); ++i)
        if (eq.get(i)) row.flip(c.vars[i]);
      row.rhs = eq.rhs;
      rows.push_back(std::move(row));
    }
  }
  auto sys = gf2::eliminate(std::move(rows), n);
  if (!sys.consistent) return std::nullopt;
  auto free = sys.free_columns();
  if (free.size() > kAffineFreeVarLimit)
    throw GuardError("affine oracle limited to " + std::to_string(kAffineFreeVarLimit) + " free variables");

  // Per pivot row, which free variables it depends on (as a bitmask over
  // free-variable positions).
  std::vector<std::uint32_t> deps(sys.rows.size(), 0);
  for (std::size_t r = 0; r < sys.rows.size(); ++r)
    for (std::size_t j = 0; j < free.size(); ++j)
      if (sys.rows[r].get(free[j])) deps[r] |= std::uint32_t{1} << j;

  std::size_t best = 0;
  const std::uint64_t total = std::uint64_t{1} << free.size();
  for (std::uint64_t fa = 0; fa < total; ++fa) {
    std::size_t weight = static_cast<std::size_t>(std::popcount(fa));
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
      bool v = sys.rows[r].rhs ^ (std::popcount(deps[r] & static_cast<std::uint32_t>(fa)) & 1);
      weight += v;
    }
    best = std::max(best, weight);
    if (best >= target) break;
  }
  return best;
}

// Depth-first search for a model of weight >= target, trying true first and
// cutting branches that cannot reach the target even if every remaining
// variable were true.
inline bool branch_and_bound_reaches(const GammaFormula& phi, std::size_t target) {
  if (phi.unsatisfiable()) return false;
  const std::size_t n = phi.var_count();
  if (target > n) return false;
  std::vector<std::vector<std::size_t>> touching(n);
  for (std::size_t ci = 0; ci < phi.constraints().size(); ++ci)
    for (auto v : phi.constraints()[ci].vars) touching[v].push_back(ci);
  std::vector<signed char> value(n, -1);

  auto consistent = [&](const Constraint& c) {
    Tuple mask = 0, want = 0;
    for (std::size_t i = 0; i < c.vars.size(); ++i) {
      auto v = value[c.vars[i]];
      if (v < 0) continue;
      mask |= Tuple{1} << i;
      if (v) want |= Tuple{1} << i;
    }
    return std::ranges::any_of(c.relation->tuples(), [&](Tuple t) { return (t & mask) == want; });
  };

  for (const auto& c : phi.constraints())
    if (!consistent(c)) return false;

  auto search = [&](auto&& self, std::size_t v, std::size_t weight) -> bool {
    if (weight + (n - v) < target) return false;
    if (v == n) return true;
    for (signed char b : {1, 0}) {
      value[v] = b;
      bool ok = std::ranges::all_of(touching[v], [&](std::size_t ci) { return consistent(phi.constraints()[ci]); });
      if (ok && self(self, v + 1, weight + static_cast<std::size_t>(b))) {
        value[v] = -1;
        return true;
      }
    }
    value[v] = -1;
    return false;
  };
  return search(search, 0, 0);
}

// Exact decision procedure for "phi has a model of weight >= max(w, 0)".
class WeightOracle {
 public:
  explicit WeightOracle(OracleKind kind = OracleKind::bruteforce) : kind_(kind) {}

  OracleKind kind() const noexcept { return kind_; }

  // Whether this oracle's preconditions hold for every relation of phi.
  bool applicable(const GammaFormula& phi) const {
    switch (kind_) {
      case OracleKind::dual_horn_propagation: return detail::all_relations(phi, detail::is_or_closed);
      case OracleKind::affine_gauss: return detail::all_relations(phi, detail::is_affine);
      case OracleKind::bruteforce: return phi.var_count() <= kBruteForceVarLimit;
      case OracleKind::branch_and_bound: return true;
    }
    return false;
  }

  bool decide(const GammaFormula& phi, std::int64_t w) const {
    const auto target = static_cast<std::size_t>(std::max<std::int64_t>(w, 0));
    if (phi.unsatisfiable()) return false;
    if (target > phi.var_count()) return false;
    switch (kind_) {
      case OracleKind::bruteforce: {
        auto models = brute_models(phi);
        return std::ranges::any_of(models, [&](std::uint64_t m) {
          return static_cast<std::size_t>(std::popcount(m)) >= target;
        });
      }
      case OracleKind::dual_horn_propagation: {
        auto best = max_weight_dual_horn(phi);
        return best && *best >= target;
      }
      case OracleKind::affine_gauss: {
        auto best = max_weight_affine(phi, target);
        return best && *best >= target;
      }
      case OracleKind::branch_and_bound: return branch_and_bound_reaches(phi, target);
    }
    return false;
  }

 private:
  OracleKind kind_;
};

inline void require_applicable(const WeightOracle& oracle, const GammaFormula& phi) {
  if (!oracle.applicable(phi))
    throw PreconditionError("oracle '" + std::string(to_string(oracle.kind())) + "' does not apply to this formula");
}

inline bool has_maxones(const WeightOracle& oracle, const GammaFormula& phi, std::int64_t w) {
  require_applicable(oracle, phi);
  return oracle.decide(phi, w);
}

// First applicable of dual-Horn propagation, affine elimination,
// branch-and-bound.
inline WeightOracle auto_select_oracle(const GammaFormula& phi) {
  for (auto kind : {OracleKind::dual_horn_propagation, OracleKind::affine_gauss, OracleKind::branch_and_bound,
                    OracleKind::bruteforce}) {
    WeightOracle o(kind);
    if (o.applicable(phi)) return o;
  }
  return WeightOracle(OracleKind::bruteforce);
}

// Every model of phi with at least k true variables, exactly once. Emission
// order: variable n-1 is decided first, true before false. A model is emitted
// only once every variable is fixed; after the budget reaches zero the search
// keeps branching with a zero budget so heavier extensions are not lost.
inline SolutionStream<Model> enumerate_maxones(const WeightOracle& oracle, const GammaFormula& phi, std::int64_t k,
                                               std::shared_ptr<SearchTrace> trace = nullptr) {
  require_applicable(oracle, phi);
  struct Frame {
    GammaFormula phi;
    Model chosen;  // descending, original indices
    std::int64_t budget;
    std::size_t remaining;
    std::size_t node;
  };
  struct State {
    WeightOracle oracle;
    std::vector<Frame> stack;
    std::shared_ptr<SearchTrace> trace;
  };
  auto st = std::make_shared<State>(State{oracle, {}, std::move(trace)});
  auto clamp = [](std::int64_t w) { return std::max<std::int64_t>(w, 0); };

  if (oracle.decide(phi, clamp(k))) {
    std::size_t node = st->trace ? st->trace->enter(SearchTrace::kNoParent) : 0;
    st->stack.push_back({phi, {}, clamp(k), phi.var_count(), node});
  }

  return SolutionStream<Model>([st, clamp]() -> std::optional<Model> {
    while (!st->stack.empty()) {
      Frame f = std::move(st->stack.back());
      st->stack.pop_back();
      if (f.remaining == 0) {
        if (st->trace) st->trace->emit(f.node);
        return Model(f.chosen.rbegin(), f.chosen.rend());
      }
      const std::size_t var = f.remaining - 1;
      auto with_false = substitute(f.phi, var, false);
      auto with_true = substitute(f.phi, var, true);
      auto enter = [&](GammaFormula g, Model chosen, std::int64_t budget) {
        std::size_t node = st->trace ? st->trace->enter(f.node) : 0;
        st->stack.push_back({std::move(g), std::move(chosen), budget, var, node});
      };
      // The false branch is pushed first so the true branch is explored first.
      if (st->oracle.decide(with_false, f.budget)) enter(std::move(with_false), f.chosen, f.budget);
      if (st->oracle.decide(with_true, clamp(f.budget - 1))) {
        Model chosen = std::move(f.chosen);
        chosen.push_back(var);
        enter(std::move(with_true), std::move(chosen), clamp(f.budget - 1));
      }
    }
    return std::nullopt;
  });
}

}  // namespace fptenum
