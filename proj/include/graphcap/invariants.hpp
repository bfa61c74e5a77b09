#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "graphcap/bitset.hpp"
#include "graphcap/error.hpp"
#include "graphcap/graph.hpp"
#include "graphcap/rational.hpp"
#include "graphcap/simplex.hpp"
#include "graphcap/symmetry.hpp"

namespace graphcap {

struct SearchOptions {
  /// Wall-clock budget; exceeding it raises ErrorCode::Timeout.
  std::optional<std::chrono::milliseconds> timeout;
  /// Lets the independence search fix vertex 0 in the set (valid for
  /// vertex-transitive graphs only).
  bool vertex_transitive = false;
};

namespace detail {

class Deadline {
 public:
  explicit Deadline(const std::optional<std::chrono::milliseconds>& budget) {
    if (budget) end_ = std::chrono::steady_clock::now() + *budget;
  }
  /// Cheap to call in hot loops; reads the clock every 1024 calls.
  void check() {
    if (!end_ || (++ticks_ & 1023) != 0) return;
    if (std::chrono::steady_clock::now() > *end_) fail(ErrorCode::Timeout, "search time budget exceeded");
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
  std::uint64_t ticks_ = 0;
};

/// Maximum clique by bitset branch and bound with greedy-coloring bounds.
/// Vertices are renumbered by descending degree (ties by index) so that the
/// coloring visits high-degree vertices first.
class MaxCliqueSolver {
 public:
  MaxCliqueSolver(const std::vector<Bitset>& adj, Deadline& deadline) : deadline_(deadline) {
    const std::size_t n = adj.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), Vertex{0});
    std::vector<std::size_t> deg(n);
    for (std::size_t v = 0; v < n; ++v) deg[v] = adj[v].count();
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Vertex a, Vertex b) { return deg[a] > deg[b]; });
    pos_.resize(n);
    for (std::size_t i = 0; i < n; ++i) pos_[order_[i]] = static_cast<Vertex>(i);
    adj_.assign(n, Bitset(n));
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = adj[v].find_first(); w != Bitset::npos; w = adj[v].find_next(w))
        adj_[pos_[v]].set(pos_[w]);
  }

  /// `seed` is a known clique (original labels) used as the incumbent.
  std::vector<Vertex> solve(const std::vector<Vertex>& seed) {
    set_incumbent(seed);
    Bitset all(size());
    all.set_all();
    search({}, all);
    return best();
  }

  std::size_t size() const noexcept { return adj_.size(); }
  /// Solver position of an original vertex, and back.
  Vertex position(Vertex v) const { return pos_[v]; }
  Vertex vertex(Vertex p) const { return order_[p]; }
  /// Adjacency row of a solver position.
  const Bitset& row(Vertex p) const { return adj_[p]; }

  void set_incumbent(const std::vector<Vertex>& clique) {
    best_.clear();
    for (Vertex v : clique) best_.push_back(pos_[v]);
  }
  std::size_t best_size() const noexcept { return best_.size(); }
  std::vector<Vertex> best() const {
    std::vector<Vertex> out;
    for (Vertex v : best_) out.push_back(order_[v]);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Exhaustive search for cliques extending `current` (solver positions, a clique
  /// fully adjacent to `candidates`) within `candidates`.
  void search(const std::vector<Vertex>& current, const Bitset& candidates) {
    const std::size_t n = adj_.size();
    if (levels_.size() != n + 1) levels_.assign(n + 1, Level{Bitset(n), Bitset(n), Bitset(n), {}, {}});
    current_ = current;
    if (candidates.none()) {
      if (current_.size() > best_.size()) best_ = current_;
      return;
    }
    levels_[0].candidates = candidates;
    expand(0);
  }

  /// Number of colors used by the greedy sequential coloring of `candidates`.
  std::size_t color_bound(const Bitset& candidates) {
    Bitset uncolored = candidates, cls(adj_.size());
    std::size_t k = 0;
    while (uncolored.any()) {
      ++k;
      cls = uncolored;
      for (std::size_t v = cls.find_first(); v != Bitset::npos; v = cls.find_next(v)) {
        uncolored.reset(v);
        cls.subtract(adj_[v]);
      }
    }
    return k;
  }

  std::uint64_t nodes() const { return nodes_; }

  /// Extra test run at every node: returns true when no clique of `need`
  /// vertices fits inside the candidates.
  void set_node_test(std::function<bool(const Bitset&, std::size_t)> test) { node_test_ = std::move(test); }

 private:
  struct Level {
    Bitset candidates;
    Bitset uncolored;
    Bitset color_class;
    std::vector<Vertex> vertex;
    std::vector<std::size_t> color;
  };

  void expand(std::size_t depth) {
    ++nodes_;
    deadline_.check();
    Level& lv = levels_[depth];
    // Greedy sequential coloring of the candidates; only vertices whose color
    // could still beat the incumbent are kept for branching.
    lv.vertex.clear();
    lv.color.clear();
    lv.uncolored = lv.candidates;
    const std::size_t kmin =
        best_.size() >= current_.size() ? best_.size() - current_.size() + 1 : 1;
    if (node_test_ && node_test_(lv.candidates, kmin)) return;
    std::size_t k = 0;
    while (lv.uncolored.any()) {
      ++k;
      lv.color_class = lv.uncolored;
      for (std::size_t v = lv.color_class.find_first(); v != Bitset::npos;
           v = lv.color_class.find_next(v)) {
        lv.uncolored.reset(v);
        lv.color_class.subtract(adj_[v]);
        if (k >= kmin) {
          lv.vertex.push_back(static_cast<Vertex>(v));
          lv.color.push_back(k);
        }
      }
    }
    for (std::size_t i = lv.vertex.size(); i-- > 0;) {
      if (current_.size() + lv.color[i] <= best_.size()) return;
      const Vertex v = lv.vertex[i];
      current_.push_back(v);
      Level& next = levels_[depth + 1];
      next.candidates.assign_and(lv.candidates, adj_[v]);
      if (next.candidates.none()) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(depth + 1);
      }
      current_.pop_back();
      lv.candidates.reset(v);
    }
  }

  Deadline& deadline_;
  std::vector<Vertex> order_;
  std::vector<Vertex> pos_;
  std::vector<Bitset> adj_;
  std::vector<Level> levels_;
  std::vector<Vertex> current_;
  std::vector<Vertex> best_;
  std::uint64_t nodes_ = 0;
  std::function<bool(const Bitset&, std::size_t)> node_test_;
};

/// Greedy minimum-degree independent set, used as the starting incumbent.
inline std::vector<Vertex> greedy_independent_set(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> deg(n);
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<Vertex> out;
  while (true) {
    std::optional<Vertex> pick;
    for (Vertex v = 0; v < n; ++v)
      if (!removed[v] && (!pick || deg[v] < deg[*pick])) pick = v;
    if (!pick) break;
    out.push_back(*pick);
    removed[*pick] = true;
    for (Vertex w : g.neighbors(*pick)) {
      if (removed[w]) continue;
      removed[w] = true;
      for (Vertex x : g.neighbors(w))
        if (!removed[x]) --deg[x];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Iterated local search for a large independent set: (1,2)-swaps to a local
/// optimum, then a random forced insertion as the perturbation. Stops after
/// `iterations` perturbations or once `target` vertices are reached.
inline std::vector<Vertex> local_search_independent_set(const Graph& g, std::vector<Vertex> start,
                                                        std::size_t iterations, std::size_t target,
                                                        Deadline& deadline, std::uint64_t seed = 1) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return start;
  std::mt19937_64 rng(seed);
  struct State {
    std::vector<char> in;
    std::vector<std::size_t> tight;  // neighbors inside the set
    std::size_t size = 0;
  };
  State cur{std::vector<char>(n, 0), std::vector<std::size_t>(n, 0), 0};
  auto insert = [&](State& st, Vertex v) {
    st.in[v] = 1;
    ++st.size;
    for (Vertex w : g.neighbors(v)) ++st.tight[w];
  };
  auto remove = [&](State& st, Vertex v) {
    st.in[v] = 0;
    --st.size;
    for (Vertex w : g.neighbors(v)) --st.tight[w];
  };
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  auto fill_free = [&](State& st) {
    std::shuffle(order.begin(), order.end(), rng);
    for (Vertex v : order)
      if (!st.in[v] && st.tight[v] == 0) insert(st, v);
  };
  std::vector<Vertex> one_tight;
  auto improve = [&](State& st) {
    for (bool changed = true; changed;) {
      changed = false;
      deadline.check();
      for (Vertex x = 0; x < n; ++x) {
        if (!st.in[x]) continue;
        one_tight.clear();
        for (Vertex w : g.neighbors(x))
          if (st.tight[w] == 1) one_tight.push_back(w);
        for (std::size_t i = 0; i < one_tight.size() && st.in[x]; ++i)
          for (std::size_t j = i + 1; j < one_tight.size(); ++j) {
            const Vertex u = one_tight[i], w = one_tight[j];
            if (g.has_edge(u, w)) continue;
            remove(st, x);
            insert(st, u);
            insert(st, w);
            for (Vertex y : g.neighbors(x))
              if (!st.in[y] && st.tight[y] == 0) insert(st, y);
            changed = true;
            break;
          }
      }
    }
  };

  for (Vertex v : start) insert(cur, v);
  fill_free(cur);
  improve(cur);
  State best = cur;
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  for (std::size_t it = 0; it < iterations && best.size < target; ++it) {
    State next = cur;
    Vertex v = pick(rng);
    for (int tries = 0; next.in[v] && tries < 16; ++tries) v = pick(rng);
    if (next.in[v]) continue;
    for (Vertex w : g.neighbors(v))
      if (next.in[w]) remove(next, w);
    insert(next, v);
    fill_free(next);
    improve(next);
    if (next.size + 1 >= cur.size) cur = std::move(next);
    if (cur.size > best.size) best = cur;
    else if (it % 64 == 63) cur = best;
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (best.in[v]) out.push_back(v);
  return out;
}

}  // namespace detail

struct IndependentSetResult {
  std::size_t size = 0;
  std::vector<Vertex> witness;
  std::uint64_t nodes = 0;
};

inline bool is_independent_set(const Graph& g, const std::vector<Vertex>& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (set[i] == set[j] || g.has_edge(set[i], set[j])) return false;
  return true;
}

/// Exact independence number with a witness set.
inline IndependentSetResult independence_number(const Graph& g, const SearchOptions& opts = {}) {
  const std::size_t n = g.vertex_count();
  IndependentSetResult result;
  if (g.edge_count() == 0) {
    result.size = n;
    result.witness.resize(n);
    std::iota(result.witness.begin(), result.witness.end(), Vertex{0});
    return result;
  }
  detail::Deadline deadline(opts.timeout);

  // Vertex 0 may be assumed in some maximum set; search the rest of the graph
  // outside its closed neighborhood.
  std::vector<Vertex> keep;
  std::vector<Vertex> forced;
  if (opts.vertex_transitive) {
    forced.push_back(0);
    for (Vertex v = 1; v < n; ++v)
      if (!g.has_edge(0, v)) keep.push_back(v);
  } else {
    keep.resize(n);
    std::iota(keep.begin(), keep.end(), Vertex{0});
  }
  const std::size_t m = keep.size();
  std::vector<Vertex> local(n, static_cast<Vertex>(-1));
  for (std::size_t i = 0; i < m; ++i) local[keep[i]] = static_cast<Vertex>(i);

  // Complement adjacency restricted to `keep`: cliques there are independent sets of g.
  std::vector<Bitset> comp(m, Bitset(m));
  for (std::size_t i = 0; i < m; ++i) {
    comp[i].set_all();
    comp[i].reset(i);
    for (Vertex w : g.neighbors(keep[i]))
      if (local[w] != static_cast<Vertex>(-1)) comp[i].reset(local[w]);
  }

  std::vector<Edge> sub_edges;
  for (std::size_t i = 0; i < m; ++i)
    for (Vertex w : g.neighbors(keep[i]))
      if (local[w] != static_cast<Vertex>(-1) && i < local[w])
        sub_edges.emplace_back(static_cast<Vertex>(i), local[w]);
  std::vector<Vertex> seed;
  if (m > 0) seed = detail::greedy_independent_set(Graph::from_edges(m, sub_edges));

  detail::MaxCliqueSolver solver(comp, deadline);
  auto best = solver.solve(seed);
  result.nodes = solver.nodes();
  result.witness = forced;
  for (Vertex v : best) result.witness.push_back(keep[v]);
  std::sort(result.witness.begin(), result.witness.end());
  result.size = result.witness.size();
  if (!is_independent_set(g, result.witness))
    fail(ErrorCode::NumericFailure, "internal error: witness is not independent");
  return result;
}

inline std::size_t clique_number(const Graph& g, const SearchOptions& opts = {}) {
  return independence_number(complement(g), opts).size;
}

namespace detail {

/// DSATUR backtracking for a proper coloring with at most k colors (k <= 64).
inline bool colorable(const Graph& g, std::size_t k, Deadline& deadline) {
  const std::size_t n = g.vertex_count();
  if (k == 0) return n == 0;
  if (k > 64) fail(ErrorCode::CapExceeded, "coloring search limited to 64 colors");
  std::vector<int> color(n, -1);
  std::vector<std::vector<int>> neighbor_count(n, std::vector<int>(k, 0));
  std::vector<int> saturation(n, 0);

  auto assign = [&](Vertex v, int c, int delta) {
    for (Vertex w : g.neighbors(v)) {
      int& cnt = neighbor_count[w][static_cast<std::size_t>(c)];
      if (delta > 0 && cnt++ == 0) ++saturation[w];
      if (delta < 0 && --cnt == 0) --saturation[w];
    }
  };

  auto recurse = [&](auto&& self, std::size_t colored, int used) -> bool {
    deadline.check();
    if (colored == n) return true;
    std::optional<Vertex> pick;
    for (Vertex v = 0; v < n; ++v) {
      if (color[v] >= 0) continue;
      if (!pick || saturation[v] > saturation[*pick] ||
          (saturation[v] == saturation[*pick] && g.degree(v) > g.degree(*pick)))
        pick = v;
    }
    const Vertex v = *pick;
    const int limit = std::min<int>(static_cast<int>(k), used + 1);
    for (int c = 0; c < limit; ++c) {
      if (neighbor_count[v][static_cast<std::size_t>(c)] > 0) continue;
      color[v] = c;
      assign(v, c, +1);
      if (self(self, colored + 1, std::max(used, c + 1))) return true;
      assign(v, c, -1);
      color[v] = -1;
    }
    return false;
  };
  return recurse(recurse, 0, 0);
}

}  // namespace detail

/// Exact chromatic number by iterative deepening from the clique number.
inline std::size_t chromatic_number(const Graph& g, const SearchOptions& opts = {}) {
  if (g.edge_count() == 0) return 1;
  detail::Deadline deadline(opts.timeout);
  std::size_t k = clique_number(g, opts);
  while (!detail::colorable(g, k, deadline)) ++k;
  return k;
}

// ---------------------------------------------------------------------------
// Fractional chromatic number

struct FractionalOptions {
  std::size_t max_independent_sets = 20000;
};

/// Maximal independent sets via Bron–Kerbosch with pivoting.
inline std::vector<std::vector<Vertex>> maximal_independent_sets(const Graph& g,
                                                                 std::size_t limit = 20000) {
  const std::size_t n = g.vertex_count();
  std::vector<Bitset> comp(n, Bitset(n));
  for (Vertex v = 0; v < n; ++v) {
    comp[v].set_all();
    comp[v].reset(v);
    for (Vertex w : g.neighbors(v)) comp[v].reset(w);
  }
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> r;
  auto bk = [&](auto&& self, Bitset p, Bitset x) -> void {
    if (p.none() && x.none()) {
      if (out.size() == limit)
        fail(ErrorCode::CapExceeded,
             "more than " + std::to_string(limit) + " maximal independent sets");
      out.push_back(r);
      return;
    }
    std::size_t pivot = Bitset::npos, best = 0;
    for (const Bitset* s : {&p, &x})
      for (std::size_t u = s->find_first(); u != Bitset::npos; u = s->find_next(u)) {
        Bitset t = p;
        t &= comp[u];
        const std::size_t c = t.count();
        if (pivot == Bitset::npos || c > best) {
          pivot = u;
          best = c;
        }
      }
    Bitset branch = p;
    branch.subtract(comp[pivot]);
    for (std::size_t v = branch.find_first(); v != Bitset::npos; v = branch.find_next(v)) {
      r.push_back(static_cast<Vertex>(v));
      Bitset np = p, nx = x;
      np &= comp[v];
      nx &= comp[v];
      self(self, np, nx);
      r.pop_back();
      p.reset(v);
      x.set(v);
    }
  };
  Bitset p(n), x(n);
  p.set_all();
  bk(bk, p, x);
  for (auto& s : out) std::sort(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct FractionalColoring {
  Rational value;
  std::vector<std::vector<Vertex>> sets;
  std::vector<Rational> weights;
};

/// Minimum total weight on independent sets covering every vertex at least
/// once, solved exactly over the rationals.
inline FractionalColoring fractional_coloring(const Graph& g, const FractionalOptions& opts = {}) {
  FractionalColoring out;
  out.sets = maximal_independent_sets(g, opts.max_independent_sets);
  const std::size_t n = g.vertex_count();
  lp::LinearProgram<Rational> prog;
  prog.objective.assign(out.sets.size(), Rational(1));
  for (Vertex v = 0; v < n; ++v) {
    lp::LinearProgram<Rational>::Row row;
    row.coeffs.assign(out.sets.size(), Rational(0));
    for (std::size_t s = 0; s < out.sets.size(); ++s)
      if (std::binary_search(out.sets[s].begin(), out.sets[s].end(), v)) row.coeffs[s] = 1;
    row.relation = lp::Relation::GreaterEqual;
    row.rhs = 1;
    prog.rows.push_back(std::move(row));
  }
  auto sol = lp::solve(prog);
  if (sol.status != lp::Status::Optimal)
    fail(ErrorCode::NumericFailure, "fractional coloring LP did not reach optimality");
  out.value = sol.value;
  out.weights = sol.x;
  return out;
}

inline Rational fractional_chromatic(const Graph& g, const FractionalOptions& opts = {}) {
  return fractional_coloring(g, opts).value;
}

/// Fractional clique-cover number: the fractional chromatic number of the complement.
inline Rational fractional_clique_cover(const Graph& g, const FractionalOptions& opts = {}) {
  return fractional_chromatic(complement(g), opts);
}

// ---------------------------------------------------------------------------
// Counting lower bounds

inline Rational caro_wei(const Graph& g) {
  Rational sum(0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) sum += Rational(1, static_cast<long long>(g.degree(v) + 1));
  return sum;
}

/// |V| |T| / |N[T]| for an independent set T of a vertex-transitive graph.
inline Rational vt_counting_bound(const Graph& g, const std::vector<Vertex>& t) {
  if (t.empty()) fail(ErrorCode::InvalidArgument, "vt counting bound needs a nonempty set");
  for (Vertex v : t)
    if (v >= g.vertex_count()) fail(ErrorCode::InvalidArgument, "vertex index out of range");
  if (!is_independent_set(g, t)) fail(ErrorCode::NotIndependent, "set is not independent");
  std::vector<bool> closed(g.vertex_count(), false);
  for (Vertex v : t) {
    closed[v] = true;
    for (Vertex w : g.neighbors(v)) closed[w] = true;
  }
  const auto nt = std::count(closed.begin(), closed.end(), true);
  return Rational(static_cast<long long>(g.vertex_count() * t.size()), static_cast<long long>(nt));
}

/// Natural log of |V|^n / sum_{i<=d} C(n,i) (|V|/s - 1)^i.
inline double log_gv_sphere_count(std::size_t vertex_count, std::size_t s_size, std::size_t n,
                                  std::size_t d) {
  if (s_size < 1 || s_size > vertex_count)
    fail(ErrorCode::InvalidArgument, "independent set size must lie in [1, |V|]");
  if (d > n) fail(ErrorCode::InvalidArgument, "need 0 <= d <= n");
  const double g = static_cast<double>(vertex_count);
  const double ratio = g / static_cast<double>(s_size) - 1.0;
  std::vector<double> terms;
  for (std::size_t i = 0; i <= d; ++i) {
    if (i > 0 && ratio == 0.0) break;
    double t = std::lgamma(double(n) + 1) - std::lgamma(double(i) + 1) - std::lgamma(double(n - i) + 1);
    if (i > 0) t += static_cast<double>(i) * std::log(ratio);
    terms.push_back(t);
  }
  const double mx = *std::max_element(terms.begin(), terms.end());
  double acc = 0;
  for (double t : terms) acc += std::exp(t - mx);
  return static_cast<double>(n) * std::log(g) - (mx + std::log(acc));
}

/// Finite-length counting lower bound on alpha(G(n,d)) from a set of size s_size.
inline double gv_sphere_count(const Graph& g, std::size_t s_size, std::size_t n, std::size_t d) {
  return std::exp(log_gv_sphere_count(g.vertex_count(), s_size, n, d));
}

namespace detail {

/// Orbits on V(G) of pointwise stabilizers (inside an enumerated Aut(G)) of
/// symbol sets given as bitmasks.
class SymbolStabilizers {
 public:
  SymbolStabilizers(std::vector<Permutation> autos, std::size_t q) : autos_(std::move(autos)), q_(q) {}

  /// orbit[v] is the smallest vertex in the orbit of v.
  const std::vector<Vertex>& orbits(std::uint64_t mask) {
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    std::vector<Vertex> parent(q_);
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& p : autos_) {
      bool fixes = true;
      for (Vertex v = 0; v < q_ && fixes; ++v)
        if (((mask >> v) & 1u) && p[v] != v) fixes = false;
      if (!fixes) continue;
      for (Vertex v = 0; v < q_; ++v) {
        Vertex a = find(v), b = find(p[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (Vertex v = 0; v < q_; ++v) parent[v] = find(v);
    return cache_.emplace(mask, std::move(parent)).first->second;
  }

  bool trivial(std::uint64_t mask) {
    const auto& o = orbits(mask);
    for (Vertex v = 0; v < q_; ++v)
      if (o[v] != v) return false;
    return true;
  }

 private:
  std::vector<Permutation> autos_;
  std::size_t q_;
  std::map<std::uint64_t, std::vector<Vertex>> cache_;
};

/// Upper bound on an independent set of G(n,d) inside a candidate set.
/// Fixing the symbols on a coordinate set J splits the words into classes,
/// each a copy of G(n-|J|, min(d, n-|J|)), so each class holds at most that
/// graph's independence number of chosen words.
class PartitionBound {
 public:
  /// `words` by solver position; `caps[s]` is the class bound when |J| = s.
  /// Coordinate sets are added by increasing size while the total number of
  /// class masks stays within `mask_budget`.
  PartitionBound(const std::vector<SequenceWord>& words, std::size_t q, std::size_t n,
                 const std::vector<std::size_t>& caps, std::size_t mask_budget) {
    std::size_t masks = 0;
    for (std::size_t s = 1; s < n && s < caps.size(); ++s) {
      const auto power = checked_power(q, s, mask_budget + 1);
      const std::size_t sets = binomial_capped(n, s, mask_budget + 1);
      if (!power || !sets || masks + *power * sets > mask_budget) break;
      const std::size_t classes = *power;
      masks += classes * sets;
      std::vector<bool> pick(n, false);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(s), true);
      do {
        Block b;
        b.cap = caps[s];
        b.masks.assign(classes, Bitset(words.size()));
        for (std::size_t p = 0; p < words.size(); ++p) {
          std::size_t idx = 0;
          for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) idx = idx * q + words[p][i];
          b.masks[idx].set(p);
        }
        blocks_.push_back(std::move(b));
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  }

  bool empty() const noexcept { return blocks_.empty(); }

  /// True when some coordinate set proves that fewer than `need` words of
  /// `cand` can be chosen.
  bool below(const Bitset& cand, std::size_t need) const {
    for (const auto& b : blocks_) {
      std::size_t sum = 0;
      for (const auto& m : b.masks) {
        sum += std::min(cand.count_and(m), b.cap);
        if (sum >= need) break;
      }
      if (sum < need) return true;
    }
    return false;
  }

  std::size_t bound(const Bitset& cand) const {
    std::size_t out = cand.count();
    for (const auto& b : blocks_) {
      std::size_t sum = 0;
      for (const auto& m : b.masks) sum += std::min(cand.count_and(m), b.cap);
      out = std::min(out, sum);
    }
    return out;
  }

 private:
  struct Block {
    std::size_t cap = 0;
    std::vector<Bitset> masks;
  };

  static std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
      r = r * (n - k + i) / i;
      if (r > cap) return 0;
    }
    return r;
  }

  std::vector<Block> blocks_;
};

/// Maximum independent set of G(n,d) with isomorph rejection.
///
/// The chosen words W are fixed pointwise by the group generated by
/// permutations of coordinates whose columns over W agree and, on each such
/// class, base automorphisms fixing every symbol in that column. Branching on
/// one representative per orbit of that group, and excluding each orbit once
/// it has been explored, loses no maximum set: the groups shrink along every
/// branch, so earlier orbits stay invariant below.
class PowerAlphaSolver {
 public:
  /// `caps[s]` bounds a class of words agreeing on s fixed coordinates (see
  /// PartitionBound); an empty vector disables that bound.
  PowerAlphaSolver(const Graph& base, const Graph& power, std::size_t n, std::vector<Permutation> autos,
                   Deadline& deadline, const std::vector<std::size_t>& caps = {})
      : q_(base.vertex_count()), n_(n), stabilizers_(std::move(autos), base.vertex_count()),
        comp_(complement_rows(power)), solver_(comp_, deadline), deadline_(deadline) {
    words_.resize(power.vertex_count());
    for (std::size_t p = 0; p < words_.size(); ++p) words_[p] = decode_word(solver_.vertex(static_cast<Vertex>(p)), q_, n_);
    partition_.emplace(words_, q_, n_, caps, std::max<std::size_t>(64, words_.size() / 8));
    if (!partition_->empty())
      solver_.set_node_test([this](const Bitset& cand, std::size_t need) { return partition_->below(cand, need); });
  }

  std::vector<Vertex> solve(const std::vector<Vertex>& seed) {
    solver_.set_incumbent(seed);
    Bitset all(words_.size());
    all.set_all();
    std::vector<CoordinateClass> group(1);
    group[0].coords.resize(n_);
    std::iota(group[0].coords.begin(), group[0].coords.end(), std::size_t{0});
    std::vector<Vertex> current;
    branch(current, all, group);
    return solver_.best();
  }

  std::uint64_t nodes() const { return solver_.nodes() + orbit_nodes_; }

  /// Upper bound on the answer before any branching.
  std::size_t root_bound() {
    Bitset all(words_.size());
    all.set_all();
    return std::min(solver_.color_bound(all), partition_->bound(all));
  }

 private:
  bool hopeless(std::size_t current, const Bitset& cand) {
    const std::size_t best = solver_.best_size();
    if (current + solver_.color_bound(cand) <= best) return true;
    return current <= best && partition_->below(cand, best - current + 1);
  }

  struct CoordinateClass {
    std::vector<std::size_t> coords;
    std::uint64_t mask = 0;  // symbols fixed on these coordinates
  };

  static std::vector<Bitset> complement_rows(const Graph& g) {
    const std::size_t m = g.vertex_count();
    std::vector<Bitset> rows(m, Bitset(m));
    for (Vertex v = 0; v < m; ++v) {
      rows[v].set_all();
      rows[v].reset(v);
      for (Vertex w : g.neighbors(v)) rows[v].reset(w);
    }
    return rows;
  }

  std::vector<CoordinateClass> refine(const std::vector<CoordinateClass>& group, const SequenceWord& w) const {
    std::vector<CoordinateClass> out;
    for (const auto& cls : group) {
      std::map<Vertex, std::size_t> split;
      for (std::size_t i : cls.coords) {
        auto [it, fresh] = split.emplace(w[i], out.size());
        if (fresh) out.push_back({{}, cls.mask | (std::uint64_t{1} << w[i])});
        out[it->second].coords.push_back(i);
      }
    }
    return out;
  }

  bool trivial(const std::vector<CoordinateClass>& group) {
    for (const auto& cls : group)
      if (cls.coords.size() > 1 || !stabilizers_.trivial(cls.mask)) return false;
    return true;
  }

  void branch(std::vector<Vertex>& current, const Bitset& cand, const std::vector<CoordinateClass>& group) {
    ++orbit_nodes_;
    deadline_.check();
    if (cand.none()) {
      solver_.search(current, cand);
      return;
    }
    if (hopeless(current.size(), cand)) return;
    if (trivial(group)) {
      solver_.search(current, cand);
      return;
    }

    std::map<std::vector<Vertex>, std::size_t> index;
    std::vector<Bitset> orbits;
    std::vector<Vertex> reps;
    std::vector<Vertex> key;
    for (std::size_t v = cand.find_first(); v != Bitset::npos; v = cand.find_next(v)) {
      key.clear();
      for (const auto& cls : group) {
        const auto& orb = stabilizers_.orbits(cls.mask);
        const std::size_t start = key.size();
        for (std::size_t i : cls.coords) key.push_back(orb[words_[v][i]]);
        std::sort(key.begin() + static_cast<std::ptrdiff_t>(start), key.end());
      }
      auto [it, fresh] = index.emplace(key, orbits.size());
      if (fresh) {
        orbits.emplace_back(cand.size());
        reps.push_back(static_cast<Vertex>(v));
      }
      orbits[it->second].set(v);
    }
    if (orbits.size() * 2 > cand.count()) {
      solver_.search(current, cand);
      return;
    }

    Bitset remaining = cand, next(cand.size());
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      if (hopeless(current.size(), remaining)) break;
      const Vertex r = reps[i];
      next.assign_and(remaining, solver_.row(r));
      current.push_back(r);
      branch(current, next, refine(group, words_[r]));
      current.pop_back();
      remaining.subtract(orbits[i]);
    }
  }

  std::size_t q_, n_;
  SymbolStabilizers stabilizers_;
  std::vector<Bitset> comp_;
  MaxCliqueSolver solver_;
  Deadline& deadline_;
  std::vector<SequenceWord> words_;  // by solver position
  std::optional<PartitionBound> partition_;
  std::uint64_t orbit_nodes_ = 0;
};

}  // namespace detail

namespace detail {

using AlphaCache = std::map<std::pair<std::size_t, std::size_t>, std::size_t>;

inline constexpr std::size_t kLocalSearchRounds = 2000;

inline IndependentSetResult alpha_power(const Graph& g, std::size_t n, std::size_t d, SearchOptions opts,
                                        const Limits& limits, Deadline& deadline, AlphaCache& cache) {
  Graph p = power_graph(g, n, d, limits);
  if (g.vertex_count() > limits.max_automorphism_vertices || g.vertex_count() > 64 || p.edge_count() == 0) {
    bool vt = false;
    try {
      vt = is_vertex_transitive(g, limits);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CapExceeded) throw;
    }
    opts.vertex_transitive = opts.vertex_transitive || vt;
    return independence_number(p, opts);
  }
  // Independence numbers of the shorter powers bound classes of words that
  // agree on a block of coordinates.
  std::vector<std::size_t> caps(n, 0);
  for (std::size_t s = 1; s < n; ++s) {
    const std::size_t k = n - s, dk = std::min(d, k);
    auto it = cache.find({k, dk});
    if (it == cache.end())
      it = cache.emplace(std::pair{k, dk}, alpha_power(g, k, dk, opts, limits, deadline, cache).size).first;
    caps[s] = it->second;
  }
  PowerAlphaSolver solver(g, p, n, enumerate_automorphisms(g), deadline, caps);
  IndependentSetResult result;
  const auto seed = local_search_independent_set(p, greedy_independent_set(p), kLocalSearchRounds,
                                                 solver.root_bound(), deadline);
  result.witness = solver.solve(seed);
  result.size = result.witness.size();
  result.nodes = solver.nodes();
  if (!is_independent_set(p, result.witness))
    fail(ErrorCode::NumericFailure, "internal error: witness is not independent");
  return result;
}

}  // namespace detail

/// alpha(G(n,d)) by exact branch and bound on the materialized power graph.
/// When Aut(G) can be enumerated, symmetric branches are pruned through the
/// coordinate-wise automorphisms and coordinate permutations of G(n,d), and
/// classes of words agreeing on a block of coordinates are bounded by the
/// independence numbers of shorter powers.
inline IndependentSetResult exact_alpha_power_witness(const Graph& g, std::size_t n, std::size_t d,
                                                      SearchOptions opts = {},
                                                      const Limits& limits = {}) {
  detail::Deadline deadline(opts.timeout);
  detail::AlphaCache cache;
  return detail::alpha_power(g, n, d, opts, limits, deadline, cache);
}

inline std::size_t exact_alpha_power(const Graph& g, std::size_t n, std::size_t d,
                                     const SearchOptions& opts = {}, const Limits& limits = {}) {
  return exact_alpha_power_witness(g, n, d, opts, limits).size;
}

}  // namespace graphcap
