#pragma once

// Brute-force reference implementations, independent of the library code
// paths they are compared against.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "fptenum/backdoor.hpp"
#include "fptenum/csp.hpp"
#include "fptenum/vertexcover.hpp"

namespace oracle {

using fptenum::Tuple;

// Every vertex subset of size <= k that touches all edges.
inline std::set<fptenum::VertexSet> vertex_covers(const fptenum::Graph& g, std::size_t k) {
  std::set<fptenum::VertexSet> out;
  const std::size_t n = g.vertex_count();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > k) continue;
    bool ok = true;
    for (auto [u, v] : g.edges())
      if (!((mask >> u) & 1U) && !((mask >> v) & 1U)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    fptenum::VertexSet s;
    for (fptenum::Vertex v = 0; v < n; ++v)
      if ((mask >> v) & 1U) s.push_back(v);
    out.insert(s);
  }
  return out;
}

// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<fptenum::VarSet> k_subsets(std::size_t n, std::size_t k) {
  std::vector<fptenum::VarSet> out;
  fptenum::VarSet cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (auto v = from; v < n; ++v) {
      cur.push_back(static_cast<fptenum::Var>(v));
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Size-k sets S such that no clause keeps two positive literals outside S.
// Lexicographic order.
inline std::vector<fptenum::VarSet> horn_backdoors(const fptenum::CnfFormula& phi, std::size_t k) {
  std::vector<fptenum::VarSet> out;
  for (auto& s : k_subsets(phi.var_count(), k)) {
    std::vector<bool> in(phi.var_count(), false);
    for (auto v : s) in[v] = true;
    bool horn = true;
    for (const auto& c : phi.clauses()) {
      int pos = 0;
      for (const auto& l : c.literals())
        if (l.positive && !in[l.var]) ++pos;
      if (pos > 1) horn = false;
    }
    if (horn) out.push_back(s);
  }
  return out;
}

// Evaluates phi on every assignment by linear scan of relation tables.
inline std::vector<std::uint64_t> models(const fptenum::GammaFormula& phi) {
  std::vector<std::uint64_t> out;
  if (phi.unsatisfiable()) return out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << phi.var_count()); ++m) {
    bool ok = true;
    for (const auto& c : phi.constraints()) {
      Tuple t = 0;
      for (std::size_t i = 0; i < c.vars.size(); ++i)
        if ((m >> c.vars[i]) & 1U) t |= Tuple{1} << i;
      bool found = false;
      for (auto x : c.relation->tuples()) found |= (x == t);
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(m);
  }
  return out;
}

inline long max_weight(const fptenum::GammaFormula& phi) {
  long best = -1;
  for (auto m : models(phi)) best = std::max<long>(best, std::popcount(m));
  return best;
}

// ---- Definability by exhaustive clause search --------------------------
//
// A relation is definable in a clause class iff it equals the model set of
// the conjunction of all clauses of that class it satisfies: any defining
// CNF is a subset of those clauses, and adding further implied clauses
// cannot remove a tuple of the relation.

struct ClauseSpec {
  Tuple pos;  // coordinates occurring positively
  Tuple neg;  // coordinates occurring negatively
};

inline bool clause_holds(const ClauseSpec& c, Tuple t) { return (t & c.pos) != 0 || (~t & c.neg) != 0; }

template <class Accept>
bool definable_by_clauses(const fptenum::BooleanRelation& r, Accept accept) {
  const std::size_t a = r.arity();
  std::vector<ClauseSpec> implied;
  // Each coordinate: absent, positive or negative.
  std::size_t total = 1;
  for (std::size_t i = 0; i < a; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    ClauseSpec c{0, 0};
    std::size_t x = code;
    for (std::size_t i = 0; i < a; ++i, x /= 3) {
      if (x % 3 == 1) c.pos |= Tuple{1} << i;
      if (x % 3 == 2) c.neg |= Tuple{1} << i;
    }
    if (!accept(c)) continue;
    bool sat = true;
    for (auto t : r.tuples()) sat &= clause_holds(c, t);
    if (sat) implied.push_back(c);
  }
  for (Tuple t = 0; t < (Tuple{1} << a); ++t) {
    bool all = true;
    for (const auto& c : implied) all &= clause_holds(c, t);
    bool in = false;
    for (auto x : r.tuples()) in |= (x == t);
    if (all != in) return false;
  }
  return true;
}

inline bool horn_definable(const fptenum::BooleanRelation& r) {
  return definable_by_clauses(r, [](const ClauseSpec& c) { return std::popcount(c.pos) <= 1; });
}

inline bool dual_horn_definable(const fptenum::BooleanRelation& r) {
  return definable_by_clauses(r, [](const ClauseSpec& c) { return std::popcount(c.neg) <= 1; });
}

inline bool bijunctive_definable(const fptenum::BooleanRelation& r) {
  return definable_by_clauses(r, [](const ClauseSpec& c) { return std::popcount(c.pos) + std::popcount(c.neg) <= 2; });
}

// Same argument with XOR equations a·x = b in place of clauses.
inline bool affine_definable(const fptenum::BooleanRelation& r) {
  const std::size_t a = r.arity();
  std::vector<std::pair<Tuple, int>> implied;
  for (Tuple coef = 0; coef < (Tuple{1} << a); ++coef)
    for (int rhs = 0; rhs < 2; ++rhs) {
      bool sat = true;
      for (auto t : r.tuples()) sat &= (std::popcount(coef & t) % 2) == rhs;
      if (sat) implied.emplace_back(coef, rhs);
    }
  for (Tuple t = 0; t < (Tuple{1} << a); ++t) {
    bool all = true;
    for (auto [coef, rhs] : implied) all &= (std::popcount(coef & t) % 2) == rhs;
    bool in = false;
    for (auto x : r.tuples()) in |= (x == t);
    if (all != in) return false;
  }
  return true;
}

}  // namespace oracle
