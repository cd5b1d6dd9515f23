#pragma once

// Seeded random instance generators. Identical seeds reproduce identical
// instances.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fptenum/backdoor.hpp"
#include "fptenum/csp.hpp"
#include "fptenum/errors.hpp"
#include "fptenum/vertexcover.hpp"

namespace fptenum::gen {

using Rng = std::mt19937_64;

inline std::size_t below(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// G(n, p).
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng, p)) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

// Sparse graph on n >= 10 vertices with a planted star of degree 5..7 and one
// disjoint extra edge, at random positions; everything else isolated. With
// k = 3 the star centre is forced and the kernel is the single edge, so the
// number of covers of size <= 3 grows linearly in n while the work per cover
// does not.
inline Graph planted_sparse_graph(std::size_t n, std::uint64_t seed) {
  if (n < 10) throw PreconditionError("planted sparse graph needs at least 10 vertices");
  Rng rng(seed);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::ranges::shuffle(perm, rng);
  std::size_t leaves = 5 + below(rng, 3);
  std::vector<Edge> edges;
  std::size_t at = 1;
  for (std::size_t i = 0; i < leaves; ++i) edges.emplace_back(perm[0], perm[at++]);
  edges.emplace_back(perm[at], perm[at + 1]);
  return Graph(n, std::move(edges));
}

inline std::vector<Tuple> all_tuples(std::size_t arity) {
  std::vector<Tuple> out(std::size_t{1} << arity);
  std::iota(out.begin(), out.end(), Tuple{0});
  return out;
}

inline BooleanRelation random_relation(Rng& rng, std::size_t arity, double density) {
  std::vector<Tuple> tuples;
  for (auto t : all_tuples(arity))
    if (coin(rng, density)) tuples.push_back(t);
  return BooleanRelation(arity, std::move(tuples));
}

// Smallest OR-closed superset of a random nonempty relation.
inline BooleanRelation random_dual_horn_relation(Rng& rng, std::size_t arity) {
  std::vector<Tuple> tuples;
  std::size_t seeds = 1 + below(rng, 3);
  for (std::size_t i = 0; i < seeds; ++i) tuples.push_back(static_cast<Tuple>(below(rng, std::size_t{1} << arity)));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Tuple> add;
    for (auto a : tuples)
      for (auto b : tuples)
        if (std::ranges::find(tuples, a | b) == tuples.end() && std::ranges::find(add, a | b) == add.end())
          add.push_back(a | b);
    if (!add.empty()) {
      grew = true;
      tuples.insert(tuples.end(), add.begin(), add.end());
    }
  }
  return BooleanRelation(arity, std::move(tuples));
}

// Coset of a random subspace: closed under x ^ y ^ z.
inline BooleanRelation random_affine_relation(Rng& rng, std::size_t arity) {
  const std::size_t full = std::size_t{1} << arity;
  std::vector<Tuple> span{0};
  std::size_t gens = below(rng, arity + 1);
  for (std::size_t i = 0; i < gens; ++i) {
    auto g = static_cast<Tuple>(below(rng, full));
    std::vector<Tuple> next = span;
    for (auto s : span)
      if (std::ranges::find(next, s ^ g) == next.end()) next.push_back(s ^ g);
    span = std::move(next);
  }
  auto offset = static_cast<Tuple>(below(rng, full));
  for (auto& s : span) s ^= offset;
  return BooleanRelation(arity, std::move(span));
}

// Random formula over a fresh language of `relations` relations drawn by
// make_relation, each with arity in 1..max_arity.
template <class MakeRelation>
GammaFormula random_formula(std::size_t n, std::size_t constraints, std::size_t relations, std::size_t max_arity,
                            std::uint64_t seed, MakeRelation make_relation) {
  Rng rng(seed);
  ConstraintLanguage lang;
  for (std::size_t i = 0; i < relations; ++i)
    lang.add("R" + std::to_string(i), make_relation(rng, 1 + below(rng, max_arity)));
  GammaFormula phi(std::move(lang), n);
  if (n == 0) return phi;
  for (std::size_t i = 0; i < constraints; ++i) {
    const auto& [name, rel] = phi.language().relations()[below(rng, relations)];
    std::vector<std::size_t> vars;
    for (std::size_t j = 0; j < rel->arity(); ++j) vars.push_back(below(rng, n));
    phi.add_constraint(name, vars);
  }
  return phi;
}

inline GammaFormula random_dual_horn_formula(std::size_t n, std::uint64_t seed) {
  Rng sizes(seed ^ 0x9e3779b97f4a7c15ULL);
  return random_formula(n, below(sizes, n + 2), 3, 3, seed, random_dual_horn_relation);
}

inline GammaFormula random_affine_formula(std::size_t n, std::uint64_t seed) {
  Rng sizes(seed ^ 0x9e3779b97f4a7c15ULL);
  return random_formula(n, below(sizes, n / 2 + 2), 3, 3, seed, random_affine_relation);
}

// Conjunction of (x ∨ y), (x ≠ y), (x → y) constraints on random pairs.
inline GammaFormula random_two_clause_formula(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ConstraintLanguage lang;
  lang.add("OR", BooleanRelation::from_strings(2, {"01", "10", "11"}));
  lang.add("NEQ", BooleanRelation::from_strings(2, {"01", "10"}));
  lang.add("IMP", BooleanRelation::from_strings(2, {"00", "01", "11"}));
  GammaFormula phi(std::move(lang), n);
  if (n == 0) return phi;
  const char* names[] = {"OR", "NEQ", "IMP"};
  std::size_t m = below(rng, n + 2);
  for (std::size_t i = 0; i < m; ++i) phi.add_constraint(names[below(rng, 3)], {below(rng, n), below(rng, n)});
  return phi;
}

// Implication chain x0 → x1 → ... → x_{n-1} plus random forward implications.
// Exactly n + 1 models, so the number of models of weight >= k is linear in n.
inline GammaFormula implication_chain_formula(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ConstraintLanguage lang;
  lang.add("IMP", BooleanRelation::from_strings(2, {"00", "01", "11"}));
  GammaFormula phi(std::move(lang), n);
  for (std::size_t i = 0; i + 1 < n; ++i) phi.add_constraint("IMP", {i, i + 1});
  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (!coin(rng, 0.3)) continue;
    std::size_t j = i + 2 + below(rng, n - i - 2);
    phi.add_constraint("IMP", {i, j});
  }
  return phi;
}

// Random CNF with m clauses of 1..max_width distinct variables.
inline CnfFormula random_cnf(std::size_t n, std::size_t m, std::size_t max_width, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t width = 1 + below(rng, std::min(max_width, n));
    std::vector<Var> vars(n);
    std::iota(vars.begin(), vars.end(), Var{0});
    std::ranges::shuffle(vars, rng);
    std::vector<Literal> lits;
    for (std::size_t j = 0; j < width; ++j) lits.push_back({vars[j], coin(rng, 0.5)});
    clauses.emplace_back(std::move(lits));
  }
  return CnfFormula(n, std::move(clauses));
}

// Horn background over n variables plus one clause with three positive
// literals: the number of size-k backdoors grows polynomially in n.
inline CnfFormula planted_backdoor_cnf(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw PreconditionError("planted backdoor formula needs at least 3 variables");
  Rng rng(seed);
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < n; ++i) {
    auto a = static_cast<Var>(below(rng, n));
    auto b = static_cast<Var>(below(rng, n));
    if (a == b) continue;
    clauses.emplace_back(std::vector<Literal>{{a, false}, {b, coin(rng, 0.5)}});
  }
  std::vector<Var> vars(n);
  std::iota(vars.begin(), vars.end(), Var{0});
  std::ranges::shuffle(vars, rng);
  clauses.emplace_back(std::vector<Literal>{{vars[0], true}, {vars[1], true}, {vars[2], true}});
  return CnfFormula(n, std::move(clauses));
}

}  // namespace fptenum::gen
