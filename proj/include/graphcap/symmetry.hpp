#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "graphcap/bitset.hpp"
#include "graphcap/error.hpp"
#include "graphcap/graph.hpp"

namespace graphcap {

using Permutation = std::vector<Vertex>;

namespace detail {

inline std::vector<Bitset> adjacency_matrix(const Graph& g) {
  std::vector<Bitset> m(g.vertex_count(), Bitset(g.vertex_count()));
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v : g.neighbors(u)) m[u].set(v);
  return m;
}

/// Backtracking over vertex images. `visit` is called with each complete
/// automorphism and returns false to stop the search.
class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Graph& g) : g_(g), adj_(adjacency_matrix(g)) {}

  template <class Visit>
  void run(const std::vector<std::pair<Vertex, Vertex>>& fixed, Visit&& visit) {
    const std::size_t n = g_.vertex_count();
    image_.assign(n, kUnset);
    used_ = Bitset(n);
    // Fixed pairs first, then breadth-first so each new vertex has mapped neighbors.
    order_.clear();
    Bitset seen(n);
    for (auto [v, w] : fixed) {
      if (v >= n || w >= n) fail(ErrorCode::InvalidArgument, "fixed pair out of range");
      if (!seen.test(v)) {
        seen.set(v);
        order_.push_back(v);
      }
    }
    for (Vertex s = 0; s < n; ++s) {
      if (seen.test(s)) continue;
      seen.set(s);
      order_.push_back(s);
    }
    std::vector<Vertex> bfs;
    Bitset placed(n);
    for (Vertex root : order_) {
      if (placed.test(root)) continue;
      std::size_t head = bfs.size();
      bfs.push_back(root);
      placed.set(root);
      while (head < bfs.size()) {
        Vertex u = bfs[head++];
        for (Vertex v : g_.neighbors(u))
          if (!placed.test(v)) {
            placed.set(v);
            bfs.push_back(v);
          }
      }
    }
    // Keep fixed vertices at the front.
    std::vector<Vertex> final_order;
    Bitset in_order(n);
    for (auto [v, w] : fixed)
      if (!in_order.test(v)) {
        in_order.set(v);
        final_order.push_back(v);
      }
    for (Vertex v : bfs)
      if (!in_order.test(v)) {
        in_order.set(v);
        final_order.push_back(v);
      }
    order_ = std::move(final_order);
    forced_.assign(n, kUnset);
    for (auto [v, w] : fixed) {
      if (forced_[v] != kUnset && forced_[v] != w) return;
      forced_[v] = w;
    }
    stop_ = false;
    extend(0, visit);
  }

 private:
  static constexpr Vertex kUnset = static_cast<Vertex>(-1);

  template <class Visit>
  void extend(std::size_t depth, Visit& visit) {
    if (stop_) return;
    if (depth == order_.size()) {
      if (!visit(image_)) stop_ = true;
      return;
    }
    const Vertex v = order_[depth];
    auto try_image = [&](Vertex w) {
      if (used_.test(w) || g_.degree(w) != g_.degree(v)) return;
      for (std::size_t k = 0; k < depth; ++k) {
        const Vertex u = order_[k];
        if (adj_[u].test(v) != adj_[image_[u]].test(w)) return;
      }
      image_[v] = w;
      used_.set(w);
      extend(depth + 1, visit);
      used_.reset(w);
      image_[v] = kUnset;
    };
    if (forced_[v] != kUnset) {
      try_image(forced_[v]);
      return;
    }
    for (Vertex w = 0; w < g_.vertex_count() && !stop_; ++w) try_image(w);
  }

  const Graph& g_;
  std::vector<Bitset> adj_;
  std::vector<Vertex> order_;
  std::vector<Vertex> image_;
  std::vector<Vertex> forced_;
  Bitset used_;
  bool stop_ = false;
};

}  // namespace detail

/// An automorphism honoring every (v -> w) pair in `fixed`, if one exists.
inline std::optional<Permutation> find_automorphism(
    const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& fixed) {
  std::optional<Permutation> found;
  detail::AutomorphismSearch search(g);
  search.run(fixed, [&](const Permutation& p) {
    found = p;
    return false;
  });
  return found;
}

/// All automorphisms, up to `limit` of them (CapExceeded past that).
inline std::vector<Permutation> enumerate_automorphisms(const Graph& g, std::size_t limit = 100000) {
  std::vector<Permutation> all;
  bool overflow = false;
  detail::AutomorphismSearch search(g);
  search.run({}, [&](const Permutation& p) {
    if (all.size() == limit) {
      overflow = true;
      return false;
    }
    all.push_back(p);
    return true;
  });
  if (overflow)
    fail(ErrorCode::CapExceeded, "more than " + std::to_string(limit) + " automorphisms");
  return all;
}

inline bool is_automorphism(const Graph& g, const Permutation& p) {
  const std::size_t n = g.vertex_count();
  if (p.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Vertex v : p) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && g.has_edge(u, v) != g.has_edge(p[u], p[v])) return false;
  return true;
}

namespace detail {
inline bool symmetry_search_allowed(const Graph& g, const Limits& limits) {
  return g.vertex_count() <= limits.max_automorphism_vertices;
}
}  // namespace detail

/// Brute-force search below the automorphism cap; above it, falls back on
/// construction hints and otherwise reports CapExceeded.
inline bool is_vertex_transitive(const Graph& g, const Limits& limits = {}) {
  if (!detail::symmetry_search_allowed(g, limits)) {
    if (g.hints().vertex_transitive) return *g.hints().vertex_transitive;
    fail(ErrorCode::CapExceeded, "vertex-transitivity search limited to " +
                                     std::to_string(limits.max_automorphism_vertices) +
                                     " vertices");
  }
  for (Vertex w = 1; w < g.vertex_count(); ++w)
    if (!find_automorphism(g, {{0, w}})) return false;
  return true;
}

/// Edgeless graphs count as edge-transitive.
inline bool is_edge_transitive(const Graph& g, const Limits& limits = {}) {
  if (!detail::symmetry_search_allowed(g, limits)) {
    if (g.hints().edge_transitive) return *g.hints().edge_transitive;
    fail(ErrorCode::CapExceeded, "edge-transitivity search limited to " +
                                     std::to_string(limits.max_automorphism_vertices) +
                                     " vertices");
  }
  const auto edges = g.edges();
  if (edges.empty()) return true;
  const auto [a, b] = edges.front();
  for (std::size_t i = 1; i < edges.size(); ++i) {
    const auto [c, d] = edges[i];
    if (!find_automorphism(g, {{a, c}, {b, d}}) && !find_automorphism(g, {{a, d}, {b, c}}))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Homomorphisms

using Homomorphism = std::vector<Vertex>;

inline bool is_homomorphism(const Graph& g, const Graph& h, const Homomorphism& f) {
  if (f.size() != g.vertex_count()) return false;
  for (Vertex v : f)
    if (v >= h.vertex_count()) return false;
  for (auto [u, v] : g.edges())
    if (!h.has_edge(f[u], f[v])) return false;
  return true;
}

struct HomomorphismSearchOptions {
  std::size_t max_vertices = 4096;
  std::size_t max_nodes = 50'000'000;
};

/// Backtracking with forward checking and smallest-domain-first ordering.
/// nullopt means no homomorphism exists; an exhausted node budget is reported
/// as CapExceeded instead.
inline std::optional<Homomorphism> find_homomorphism(const Graph& g, const Graph& h,
                                                     const HomomorphismSearchOptions& opts = {}) {
  if (g.vertex_count() > opts.max_vertices || h.vertex_count() > opts.max_vertices)
    fail(ErrorCode::CapExceeded, "homomorphism search limited to " +
                                     std::to_string(opts.max_vertices) + " vertices");
  const std::size_t n = g.vertex_count();
  const std::size_t m = h.vertex_count();
  const auto h_adj = detail::adjacency_matrix(h);
  constexpr Vertex kUnset = static_cast<Vertex>(-1);

  Homomorphism f(n, kUnset);
  std::vector<Bitset> domain(n, Bitset(m));
  for (auto& d : domain) d.set_all();
  std::size_t nodes = 0;

  auto pick = [&]() -> std::optional<Vertex> {
    std::optional<Vertex> best;
    std::size_t best_size = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (f[v] != kUnset) continue;
      const std::size_t s = domain[v].count();
      if (!best || s < best_size || (s == best_size && g.degree(v) > g.degree(*best))) {
        best = v;
        best_size = s;
      }
    }
    return best;
  };

  auto recurse = [&](auto&& self) -> bool {
    if (++nodes > opts.max_nodes)
      fail(ErrorCode::CapExceeded, "homomorphism search node budget exhausted");
    auto next = pick();
    if (!next) return true;
    const Vertex v = *next;
    for (std::size_t w = domain[v].find_first(); w != Bitset::npos; w = domain[v].find_next(w)) {
      f[v] = static_cast<Vertex>(w);
      std::vector<std::pair<Vertex, Bitset>> saved;
      bool dead = false;
      for (Vertex u : g.neighbors(v)) {
        if (f[u] != kUnset) continue;
        saved.emplace_back(u, domain[u]);
        domain[u] &= h_adj[w];
        if (domain[u].none()) {
          dead = true;
          break;
        }
      }
      if (!dead && self(self)) return true;
      for (auto it = saved.rbegin(); it != saved.rend(); ++it) domain[it->first] = std::move(it->second);
      f[v] = kUnset;
    }
    return false;
  };

  if (!recurse(recurse)) return std::nullopt;
  if (!is_homomorphism(g, h, f))
    fail(ErrorCode::NumericFailure, "internal error: homomorphism failed verification");
  return f;
}

}  // namespace graphcap
