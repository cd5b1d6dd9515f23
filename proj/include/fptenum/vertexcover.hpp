#pragma once

// All vertex covers of size at most k, enumerated through Buss'
// kernelization used as an enum-kernel.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fptenum/enumcore.hpp"
#include "fptenum/errors.hpp"

namespace fptenum {

using Vertex = std::uint32_t;
using VertexSet = std::vector<Vertex>;  // sorted ascending
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph on vertices 0..n-1. Edges are stored with the
// smaller endpoint first, sorted.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t vertex_count, std::vector<Edge> edges) : n_(vertex_count), adj_(vertex_count) {
    for (auto& [u, v] : edges) {
      if (u >= n_ || v >= n_)
        throw PreconditionError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
      if (u == v) throw PreconditionError("self-loop on vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::ranges::sort(edges);
    if (std::ranges::adjacent_find(edges) != edges.end()) throw PreconditionError("duplicate edge");
    edges_ = std::move(edges);
    for (auto [u, v] : edges_) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::ranges::sort(nb);
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }

  bool has_edge(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    return std::ranges::binary_search(edges_, Edge{u, v});
  }

  bool is_cover(std::span<const Vertex> cover) const {
    std::vector<bool> in(n_, false);
    for (auto v : cover) {
      if (v >= n_) return false;
      in[v] = true;
    }
    return std::ranges::all_of(edges_, [&](const Edge& e) { return in[e.first] || in[e.second]; });
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

// Result of exhaustively applying the two Buss rules.
//   kernel          remaining graph, relabelled 0..|V_K|-1 in ascending order
//   kernel_labels   kernel vertex i is original vertex kernel_labels[i]
// When infeasible is set no cover of size <= k exists; the sets then describe
// the state at which reduction stopped.
struct BussReduction {
  Graph kernel;
  VertexSet kernel_labels;
  VertexSet high_degree_removed;
  VertexSet isolated_removed;
  std::int64_t residual_budget = 0;
  bool infeasible = false;

  friend bool operator==(const BussReduction&, const BussReduction&) = default;
};

// One applicable reduction step.
struct BussAction {
  enum class Rule { high_degree, isolated } rule;
  Vertex vertex;
};

namespace detail {

class ReducibleGraph {
 public:
  explicit ReducibleGraph(const Graph& g) : g_(g), alive_(g.vertex_count(), true), degree_(g.vertex_count()) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) degree_[v] = g.degree(v);
    edges_ = g.edge_count();
  }

  void remove(Vertex v) {
    alive_[v] = false;
    for (auto u : g_.neighbors(v)) {
      if (alive_[u]) {
        --degree_[u];
        --edges_;
      }
    }
  }

  bool alive(Vertex v) const { return alive_[v]; }
  std::size_t degree(Vertex v) const { return degree_[v]; }
  std::size_t edge_count() const { return edges_; }
  std::size_t vertex_count() const { return alive_.size(); }

 private:
  const Graph& g_;
  std::vector<bool> alive_;
  std::vector<std::size_t> degree_;
  std::size_t edges_;
};

inline void applicable_actions(const ReducibleGraph& rg, std::int64_t budget, std::vector<BussAction>& out) {
  out.clear();
  for (Vertex v = 0; v < rg.vertex_count(); ++v) {
    if (!rg.alive(v)) continue;
    if (static_cast<std::int64_t>(rg.degree(v)) > budget)
      out.push_back({BussAction::Rule::high_degree, v});
    else if (rg.degree(v) == 0)
      out.push_back({BussAction::Rule::isolated, v});
  }
}

inline BussReduction finish_reduction(const Graph& g, const ReducibleGraph& rg, VertexSet high, VertexSet isolated,
                                      std::int64_t budget, bool infeasible) {
  BussReduction red;
  std::ranges::sort(high);
  std::ranges::sort(isolated);
  red.high_degree_removed = std::move(high);
  red.isolated_removed = std::move(isolated);
  red.residual_budget = budget;

  std::vector<Vertex> relabel(g.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (rg.alive(v)) {
      relabel[v] = static_cast<Vertex>(red.kernel_labels.size());
      red.kernel_labels.push_back(v);
    }
  }
  std::vector<Edge> kernel_edges;
  for (auto [u, v] : g.edges())
    if (rg.alive(u) && rg.alive(v)) kernel_edges.emplace_back(relabel[u], relabel[v]);
  red.kernel = Graph(red.kernel_labels.size(), std::move(kernel_edges));

  red.infeasible = infeasible || budget < 0 ||
                   static_cast<std::int64_t>(red.kernel.edge_count()) > budget * budget;
  return red;
}

}  // namespace detail

// Applies the Buss rules to a fixed point; choose(actions) picks which of the
// currently applicable actions to perform next. Reduction stops as soon as
// the budget would become negative.
template <class Chooser>
BussReduction buss_kernelize_with(const Graph& g, std::size_t k, Chooser&& choose) {
  detail::ReducibleGraph rg(g);
  VertexSet high, isolated;
  auto budget = static_cast<std::int64_t>(k);
  std::vector<BussAction> actions;
  for (;;) {
    detail::applicable_actions(rg, budget, actions);
    if (actions.empty()) break;
    std::size_t pick = choose(std::span<const BussAction>(actions));
    const auto& a = actions.at(pick);
    rg.remove(a.vertex);
    if (a.rule == BussAction::Rule::high_degree) {
      high.push_back(a.vertex);
      if (--budget < 0) return detail::finish_reduction(g, rg, std::move(high), std::move(isolated), budget, true);
    } else {
      isolated.push_back(a.vertex);
    }
  }
  return detail::finish_reduction(g, rg, std::move(high), std::move(isolated), budget, false);
}

// Canonical schedule: high-degree rule on the lowest eligible vertex first,
// isolated-vertex removals once no vertex exceeds the budget.
inline BussReduction buss_kernelize(const Graph& g, std::size_t k) {
  detail::ReducibleGraph rg(g);
  VertexSet high, isolated;
  auto budget = static_cast<std::int64_t>(k);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (rg.alive(v) && static_cast<std::int64_t>(rg.degree(v)) > budget) {
        rg.remove(v);
        high.push_back(v);
        if (--budget < 0) return detail::finish_reduction(g, rg, std::move(high), std::move(isolated), budget, true);
        changed = true;
        break;
      }
    }
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (rg.alive(v) && rg.degree(v) == 0) {
      rg.remove(v);
      isolated.push_back(v);
    }
  }
  return detail::finish_reduction(g, rg, std::move(high), std::move(isolated), budget, false);
}

// All vertex covers of g with at most budget vertices, each sorted.
// Exponential in general; meant for kernels.
inline std::vector<VertexSet> covers_up_to(const Graph& g, std::size_t budget) {
  std::vector<VertexSet> out;
  const auto n = static_cast<Vertex>(g.vertex_count());
  VertexSet chosen;
  // excluded_below[v]: number of lower neighbors of v left out of the cover.
  // A vertex with a positive count is forced into the cover.
  std::vector<std::size_t> excluded_below(n, 0);
  std::size_t forced_pending = 0;

  auto recurse = [&](auto&& self, Vertex v) -> void {
    if (chosen.size() + forced_pending > budget) return;
    if (v == n) {
      out.push_back(chosen);
      return;
    }
    const bool forced = excluded_below[v] > 0;
    if (forced) --forced_pending;
    chosen.push_back(v);
    self(self, v + 1);
    chosen.pop_back();
    if (forced) {
      ++forced_pending;
      return;
    }
    for (auto u : g.neighbors(v))
      if (u > v && excluded_below[u]++ == 0) ++forced_pending;
    self(self, v + 1);
    for (auto u : g.neighbors(v))
      if (u > v && --excluded_below[u] == 0) --forced_pending;
  };
  recurse(recurse, 0);
  return out;
}

namespace detail {

// Subsets of pool (sorted) of size 0..max_size, by increasing size and
// lexicographically within a size, merged into base.
inline SolutionStream<VertexSet> augmentations(VertexSet base, VertexSet pool, std::size_t max_size) {
  struct State {
    VertexSet base;
    VertexSet pool;
    std::size_t max_size;
    std::size_t size = 0;
    std::vector<std::size_t> idx;  // current combination, indices into pool
    bool started = false;
    bool done = false;
  };
  max_size = std::min(max_size, pool.size());
  auto st = std::make_shared<State>(State{std::move(base), std::move(pool), max_size, 0, {}, false, false});

  return SolutionStream<VertexSet>([st]() -> std::optional<VertexSet> {
    if (st->done) return std::nullopt;
    if (!st->started) {
      st->started = true;
    } else {
      // Advance to the next combination of the current size, or grow.
      const std::size_t m = st->pool.size();
      std::size_t r = st->size;
      std::size_t i = r;
      while (i > 0 && st->idx[i - 1] == m - r + i - 1) --i;
      if (i == 0) {
        if (++st->size > st->max_size) {
          st->done = true;
          return std::nullopt;
        }
        st->idx.resize(st->size);
        for (std::size_t j = 0; j < st->size; ++j) st->idx[j] = j;
      } else {
        ++st->idx[i - 1];
        for (std::size_t j = i; j < r; ++j) st->idx[j] = st->idx[j - 1] + 1;
      }
    }
    VertexSet out;
    out.reserve(st->base.size() + st->idx.size());
    auto bit = st->base.begin();
    for (auto j : st->idx) {
      Vertex v = st->pool[j];
      while (bit != st->base.end() && *bit < v) out.push_back(*bit++);
      out.push_back(v);
    }
    out.insert(out.end(), bit, st->base.end());
    return out;
  });
}

}  // namespace detail

// Streams f(G, W) = { W ∪ V_D ∪ V' : V' ⊆ V_I, |V'| <= k - |W| - |V_D| }.
// w is a cover of the kernel in original vertex labels.
inline SolutionStream<VertexSet> expand_cover(const BussReduction& red, std::size_t k, const VertexSet& w) {
  if (red.infeasible) throw PreconditionError("expand_cover on an infeasible reduction");
  std::vector<bool> in_kernel_cover(red.kernel_labels.size(), false);
  for (auto v : w) {
    auto it = std::ranges::lower_bound(red.kernel_labels, v);
    if (it == red.kernel_labels.end() || *it != v)
      throw PreconditionError("vertex " + std::to_string(v) + " is not a kernel vertex");
    in_kernel_cover[static_cast<std::size_t>(it - red.kernel_labels.begin())] = true;
  }
  for (auto [u, v] : red.kernel.edges())
    if (!in_kernel_cover[u] && !in_kernel_cover[v]) throw PreconditionError("set is not a vertex cover of the kernel");
  const auto used = static_cast<std::int64_t>(w.size() + red.high_degree_removed.size());
  const auto limit = static_cast<std::int64_t>(k);
  if (static_cast<std::int64_t>(w.size()) > red.residual_budget || used > limit)
    throw PreconditionError("kernel cover exceeds the residual budget");

  VertexSet base;
  std::ranges::set_union(w, red.high_degree_removed, std::back_inserter(base));
  return detail::augmentations(std::move(base), red.isolated_removed, static_cast<std::size_t>(limit - used));
}

using VcInstance = ParamInstance<Graph>;
using VcKernelizer = EnumKernelizer<Graph, BussReduction, VertexSet, VertexSet>;

inline VcInstance make_vc_instance(Graph g, std::size_t k) {
  auto size = g.vertex_count() + g.edge_count();
  return VcInstance(std::move(g), k, size);
}

// Buss reduction packaged as an enum-kernelization. Kernel size is
// |V_K| + |E_K|, bounded by 3k^2 (at most k^2 edges, no isolated vertices).
inline VcKernelizer vertex_cover_kernelizer() {
  VcKernelizer kz;
  kz.kernelize = [](const VcInstance& x) { return buss_kernelize(x.payload(), x.parameter()); };
  kz.kernel_size = [](const BussReduction& red) {
    return red.infeasible ? std::size_t{0} : red.kernel.vertex_count() + red.kernel.edge_count();
  };
  kz.size_bound = [](std::size_t k) { return 3 * k * k; };
  kz.kernel_solver = [](const BussReduction& red) {
    std::vector<VertexSet> sols;
    if (red.infeasible) return sols;
    for (auto& c : covers_up_to(red.kernel, static_cast<std::size_t>(red.residual_budget))) {
      VertexSet labelled;
      labelled.reserve(c.size());
      for (auto v : c) labelled.push_back(red.kernel_labels[v]);
      sols.push_back(std::move(labelled));
    }
    return sols;
  };
  kz.expander = [](const VcInstance& x, const BussReduction& red, const VertexSet& w) {
    return expand_cover(red, x.parameter(), w);
  };
  return kz;
}

// Every vertex cover of g with at most k vertices, exactly once, each as a
// sorted vertex list.
inline SolutionStream<VertexSet> enumerate_all_vcs(const Graph& g, std::size_t k) {
  return kernel_enumerate(vertex_cover_kernelizer(), make_vc_instance(g, k));
}

}  // namespace fptenum
