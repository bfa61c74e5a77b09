#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "graphcap/error.hpp"

namespace graphcap {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Size caps shared by every routine that materializes or searches a graph.
struct Limits {
  std::size_t max_vertices = 20000;            // explicit power-graph materialization
  std::size_t max_automorphism_vertices = 12;  // brute-force symmetry predicates
};

/// Value of the coordinate semimetric: a nonnegative integer or infinity.
/// Addition saturates at infinity.
class ExtendedDistance {
 public:
  constexpr ExtendedDistance() = default;
  constexpr explicit ExtendedDistance(std::uint64_t v) : value_(v) {}

  static constexpr ExtendedDistance infinity() {
    ExtendedDistance d;
    d.value_ = kInf;
    return d;
  }

  constexpr bool is_infinite() const { return value_ == kInf; }
  constexpr std::uint64_t value() const {
    if (is_infinite()) fail(ErrorCode::InvalidArgument, "infinite distance has no finite value");
    return value_;
  }

  friend constexpr ExtendedDistance operator+(ExtendedDistance a, ExtendedDistance b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtendedDistance(a.value_ + b.value_);
  }
  ExtendedDistance& operator+=(ExtendedDistance o) { return *this = *this + o; }

  friend constexpr bool operator==(ExtendedDistance, ExtendedDistance) = default;
  friend constexpr auto operator<=>(ExtendedDistance, ExtendedDistance) = default;
  friend constexpr bool operator==(ExtendedDistance a, std::uint64_t v) {
    return !a.is_infinite() && a.value_ == v;
  }
  friend constexpr std::strong_ordering operator<=>(ExtendedDistance a, std::uint64_t v) {
    if (a.is_infinite()) return std::strong_ordering::greater;
    return a.value_ <=> v;
  }

  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(value_); }

 private:
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value_ = 0;
};

/// Symmetry facts known from construction. The brute-force predicates consult
/// them only when a graph is too large to search directly.
struct SymmetryHints {
  std::optional<bool> vertex_transitive;
  std::optional<bool> edge_transitive;
};

/// Finite simple undirected graph stored as sorted neighbor lists.
class Graph {
 public:
  Graph() = default;

  /// Builds from an arbitrary edge list; duplicates are merged, self-loops and
  /// out-of-range endpoints are rejected.
  static Graph from_edges(std::size_t vertex_count, const std::vector<Edge>& edges,
                          std::string label = "graph", SymmetryHints hints = {}) {
    if (vertex_count < 1) fail(ErrorCode::InvalidArgument, "graph needs at least one vertex");
    if (vertex_count > std::numeric_limits<Vertex>::max())
      fail(ErrorCode::CapExceeded, "vertex count exceeds index range");
    Graph g;
    g.adj_.assign(vertex_count, {});
    for (auto [u, v] : edges) {
      if (u >= vertex_count || v >= vertex_count)
        fail(ErrorCode::InvalidArgument,
             "edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
      if (u == v) fail(ErrorCode::InvalidArgument, "self-loop at vertex " + std::to_string(u));
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    g.finish();
    g.label_ = std::move(label);
    g.hints_ = hints;
    return g;
  }

  /// Takes ownership of already symmetric neighbor lists.
  static Graph from_adjacency(std::vector<std::vector<Vertex>> adj, std::string label,
                              SymmetryHints hints = {}) {
    if (adj.empty()) fail(ErrorCode::InvalidArgument, "graph needs at least one vertex");
    Graph g;
    g.adj_ = std::move(adj);
    g.finish();
    for (Vertex u = 0; u < g.adj_.size(); ++u)
      for (Vertex v : g.adj_[u]) {
        if (v == u) fail(ErrorCode::InvalidArgument, "self-loop at vertex " + std::to_string(u));
        if (!std::binary_search(g.adj_[v].begin(), g.adj_[v].end(), u))
          fail(ErrorCode::InvalidArgument, "adjacency is not symmetric");
      }
    g.label_ = std::move(label);
    g.hints_ = hints;
    return g;
  }

  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  const std::string& label() const noexcept { return label_; }
  const SymmetryHints& hints() const noexcept { return hints_; }
  void set_label(std::string label) { label_ = std::move(label); }
  void set_hints(SymmetryHints hints) { hints_ = hints; }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& n = adj_.at(u);
    return std::binary_search(n.begin(), n.end(), v);
  }

  bool is_regular() const {
    for (const auto& n : adj_)
      if (n.size() != adj_.front().size()) return false;
    return true;
  }

  /// Edges as (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < adj_.size(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  void finish() {
    edge_count_ = 0;
    for (auto& n : adj_) {
      std::sort(n.begin(), n.end());
      n.erase(std::unique(n.begin(), n.end()), n.end());
      edge_count_ += n.size();
    }
    edge_count_ /= 2;
  }

  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
  std::string label_;
  SymmetryHints hints_;
};

// ---------------------------------------------------------------------------
// Standard constructors

inline Graph make_complete(std::size_t q) {
  if (q < 1) fail(ErrorCode::InvalidArgument, "complete graph needs q >= 1");
  std::vector<std::vector<Vertex>> adj(q);
  for (Vertex u = 0; u < q; ++u)
    for (Vertex v = 0; v < q; ++v)
      if (u != v) adj[u].push_back(v);
  return Graph::from_adjacency(std::move(adj), "K:" + std::to_string(q), {true, true});
}

/// C_1 is a single vertex and C_2 a single edge; m >= 3 gives the usual cycle.
inline Graph make_cycle(std::size_t m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "cycle needs m >= 1");
  std::vector<Edge> edges;
  if (m == 2) edges.emplace_back(0, 1);
  if (m >= 3)
    for (Vertex i = 0; i < m; ++i) edges.emplace_back(i, static_cast<Vertex>((i + 1) % m));
  return Graph::from_edges(m, edges, "C:" + std::to_string(m), {true, true});
}

inline Graph make_path(std::size_t m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "path needs m >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(m, edges, "P:" + std::to_string(m));
}

/// Lexicographically ordered a-subsets of {1..c}, as used for Kneser labels.
inline std::vector<std::vector<int>> lexicographic_subsets(int c, int a) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(a));
  for (int i = 0; i < a; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = a - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == c - a + i + 1) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < a; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

/// Kneser graph K(c,a): a-subsets of {1..c}, adjacent iff disjoint.
inline Graph make_kneser(int c, int a) {
  if (a < 1 || c < a)
    fail(ErrorCode::InvalidArgument, "kneser needs 1 <= a <= c");
  if (c > 30) fail(ErrorCode::CapExceeded, "kneser ground set too large");
  auto subsets = lexicographic_subsets(c, a);
  std::vector<std::uint32_t> masks;
  for (const auto& s : subsets) {
    std::uint32_t m = 0;
    for (int x : s) m |= 1u << (x - 1);
    masks.push_back(m);
  }
  std::vector<Edge> edges;
  for (Vertex u = 0; u < masks.size(); ++u)
    for (Vertex v = u + 1; v < masks.size(); ++v)
      if ((masks[u] & masks[v]) == 0) edges.emplace_back(u, v);
  return Graph::from_edges(masks.size(), edges,
                           "kneser:" + std::to_string(c) + "," + std::to_string(a), {true, true});
}

struct CliqueTerm {
  std::size_t multiplicity;
  std::size_t clique_size;
};

inline std::string clique_sum_label(const std::vector<CliqueTerm>& terms) {
  std::string s = "sum:";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) s += "+";
    s += std::to_string(terms[i].multiplicity) + "xK" + std::to_string(terms[i].clique_size);
  }
  return s;
}

/// Disjoint union of cliques in the order given.
inline Graph make_clique_sum(const std::vector<CliqueTerm>& terms) {
  if (terms.empty()) fail(ErrorCode::InvalidArgument, "clique sum needs at least one term");
  std::vector<Edge> edges;
  Vertex next = 0;
  bool uniform = true;
  for (const auto& t : terms) {
    if (t.multiplicity < 1 || t.clique_size < 1)
      fail(ErrorCode::InvalidArgument, "clique sum multiplicities and sizes must be >= 1");
    if (t.clique_size != terms.front().clique_size) uniform = false;
    for (std::size_t m = 0; m < t.multiplicity; ++m) {
      for (Vertex i = 0; i < t.clique_size; ++i)
        for (Vertex j = i + 1; j < t.clique_size; ++j) edges.emplace_back(next + i, next + j);
      next += static_cast<Vertex>(t.clique_size);
    }
  }
  SymmetryHints hints;
  if (uniform) hints = {true, true};
  else hints.vertex_transitive = false;
  return Graph::from_edges(next, edges, clique_sum_label(terms), hints);
}

inline Graph complement(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex u = 0; u < n; ++u) {
    const auto& nb = g.neighbors(u);
    std::size_t k = 0;
    for (Vertex v = 0; v < n; ++v) {
      while (k < nb.size() && nb[k] < v) ++k;
      if (v != u && !(k < nb.size() && nb[k] == v)) adj[u].push_back(v);
    }
  }
  SymmetryHints hints;
  hints.vertex_transitive = g.hints().vertex_transitive;
  return Graph::from_adjacency(std::move(adj), "complement(" + g.label() + ")", hints);
}

// ---------------------------------------------------------------------------
// Edge-list file format: "p <n>", then "e <u> <v>" lines; '#' comments.

inline Graph parse_edge_list(std::istream& in, std::string label = "file") {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
    if (tag == "p") {
      long long count;
      if (n) fail(ErrorCode::ParseError, "duplicate 'p' line" + where());
      if (!(ls >> count) || count < 1) fail(ErrorCode::ParseError, "bad vertex count" + where());
      n = static_cast<std::size_t>(count);
    } else if (tag == "e") {
      long long u, v;
      if (!n) fail(ErrorCode::ParseError, "'e' before 'p'" + where());
      if (!(ls >> u >> v)) fail(ErrorCode::ParseError, "bad edge" + where());
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= *n || static_cast<std::size_t>(v) >= *n)
        fail(ErrorCode::ParseError, "edge endpoint out of range" + where());
      if (u == v) fail(ErrorCode::ParseError, "self-loop" + where());
      edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    } else {
      fail(ErrorCode::ParseError, "unknown line tag '" + tag + "'" + where());
    }
    std::string extra;
    if (ls >> extra && extra[0] != '#')
      fail(ErrorCode::ParseError, "trailing token '" + extra + "'" + where());
  }
  if (!n) fail(ErrorCode::ParseError, "missing 'p' line");
  return Graph::from_edges(*n, edges, std::move(label));
}

inline Graph load_edge_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open edge list '" + path + "'");
  return parse_edge_list(in, "file:" + path);
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << "# " << g.label() << "\n";
  os << "p " << g.vertex_count() << "\n";
  for (auto [u, v] : g.edges()) os << "e " << u << " " << v << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Semimetric and words

/// 0 on the diagonal, 1 on edges, infinity otherwise.
inline ExtendedDistance semimetric(const Graph& g, Vertex v, Vertex w) {
  if (v >= g.vertex_count() || w >= g.vertex_count())
    fail(ErrorCode::InvalidArgument, "vertex index out of range");
  if (v == w) return ExtendedDistance(0);
  if (g.has_edge(v, w)) return ExtendedDistance(1);
  return ExtendedDistance::infinity();
}

using SequenceWord = std::vector<Vertex>;

inline ExtendedDistance seq_distance(const Graph& g, const SequenceWord& x, const SequenceWord& y) {
  if (x.size() != y.size()) fail(ErrorCode::InvalidArgument, "word length mismatch");
  ExtendedDistance total(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    total += semimetric(g, x[i], y[i]);
    if (total.is_infinite()) break;
  }
  return total;
}

/// g^n, or nullopt on overflow past `cap`.
inline std::optional<std::size_t> checked_power(std::size_t g, std::size_t n, std::size_t cap) {
  std::size_t p = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (p > cap / g) return std::nullopt;
    p *= g;
  }
  return p <= cap ? std::optional<std::size_t>(p) : std::nullopt;
}

/// Word <-> index in base-g positional order, first coordinate most significant.
inline SequenceWord decode_word(std::size_t index, std::size_t g, std::size_t n) {
  SequenceWord w(n);
  for (std::size_t i = n; i-- > 0;) {
    w[i] = static_cast<Vertex>(index % g);
    index /= g;
  }
  return w;
}

inline std::size_t encode_word(const SequenceWord& w, std::size_t g) {
  std::size_t index = 0;
  for (Vertex s : w) {
    if (s >= g) fail(ErrorCode::InvalidArgument, "symbol out of range");
    index = index * g + s;
  }
  return index;
}

namespace detail {

/// Calls f(index) for every word at finite distance 1..budget from `word`,
/// changing coordinates at positions >= pos.
template <class F>
void for_each_close_word(const Graph& base, SequenceWord& word, std::size_t pos, std::size_t budget,
                         const std::vector<std::size_t>& place, std::size_t index, F&& f) {
  if (budget == 0) return;
  for (std::size_t i = pos; i < word.size(); ++i) {
    const Vertex orig = word[i];
    for (Vertex nb : base.neighbors(orig)) {
      const std::size_t shifted = index - orig * place[i] + nb * place[i];
      f(shifted);
      word[i] = nb;
      for_each_close_word(base, word, i + 1, budget - 1, place, shifted, f);
      word[i] = orig;
    }
  }
}

inline std::vector<std::size_t> place_values(std::size_t g, std::size_t n) {
  std::vector<std::size_t> place(n);
  std::size_t p = 1;
  for (std::size_t i = n; i-- > 0;) {
    place[i] = p;
    p *= g;
  }
  return place;
}

}  // namespace detail

/// Words within distance 1..d of `word` (closed neighborhood minus the word itself),
/// as indices.
inline std::vector<std::size_t> close_words(const Graph& base, const SequenceWord& word,
                                            std::size_t d) {
  const std::size_t g = base.vertex_count();
  const auto place = detail::place_values(g, word.size());
  SequenceWord w = word;
  std::vector<std::size_t> out;
  detail::for_each_close_word(base, w, 0, std::min(d, word.size()), place, encode_word(word, g),
                              [&](std::size_t idx) { out.push_back(idx); });
  return out;
}

/// G(n,d): words of length n, adjacent iff 1 <= seq_distance <= d.
inline Graph power_graph(const Graph& base, std::size_t n, std::size_t d, const Limits& limits = {}) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "power graph needs n >= 1");
  if (d > n) fail(ErrorCode::InvalidArgument, "power graph needs d <= n");
  const std::size_t g = base.vertex_count();
  auto total = checked_power(g, n, limits.max_vertices);
  if (!total)
    fail(ErrorCode::CapExceeded, "|V|^n exceeds materialization cap of " +
                                     std::to_string(limits.max_vertices) + " vertices");
  const auto place = detail::place_values(g, n);
  std::vector<std::vector<Vertex>> adj(*total);
  SequenceWord word(n, 0);
  for (std::size_t idx = 0; idx < *total; ++idx) {
    word = decode_word(idx, g, n);
    auto& out = adj[idx];
    detail::for_each_close_word(base, word, 0, d, place, idx,
                                [&](std::size_t j) { out.push_back(static_cast<Vertex>(j)); });
  }
  SymmetryHints hints;
  if (base.hints().vertex_transitive == true) hints.vertex_transitive = true;
  std::string label = "trunc:" + base.label() + "," + std::to_string(n) + "," + std::to_string(d);
  return Graph::from_adjacency(std::move(adj), std::move(label), hints);
}

/// Strong power G^r; identical to power_graph(G, r, r).
inline Graph strong_power(const Graph& base, std::size_t r, const Limits& limits = {}) {
  Graph p = power_graph(base, r, r, limits);
  p.set_label(r == 1 ? base.label() : "pow:" + base.label() + "," + std::to_string(r));
  if (r == 1) p.set_hints(base.hints());
  return p;
}

}  // namespace graphcap
