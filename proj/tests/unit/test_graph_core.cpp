#include <gtest/gtest.h>

#include <sstream>

#include "graphcap/graph.hpp"
#include "graphcap/symmetry.hpp"

using namespace graphcap;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::NumericFailure;
}

}  // namespace

TEST(Constructors, CompleteCyclePath) {
  const Graph k4 = make_complete(4);
  EXPECT_EQ(k4.vertex_count(), 4u);
  EXPECT_EQ(k4.edge_count(), 6u);
  const Graph c5 = make_cycle(5);
  EXPECT_EQ(c5.edge_count(), 5u);
  EXPECT_TRUE(c5.has_edge(0, 4));
  EXPECT_FALSE(c5.has_edge(0, 2));
  const Graph p3 = make_path(3);
  EXPECT_EQ(p3.edge_count(), 2u);
  EXPECT_FALSE(p3.is_regular());
  EXPECT_EQ(make_complete(1).edge_count(), 0u);
  EXPECT_EQ(make_cycle(2).edge_count(), 1u);
}

TEST(Constructors, RejectsBadArguments) {
  EXPECT_EQ(code_of([] { make_cycle(0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { make_complete(0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { make_kneser(2, 3); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Graph::from_edges(3, {{0, 0}}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Graph::from_edges(3, {{0, 5}}); }), ErrorCode::InvalidArgument);
}

TEST(Constructors, KneserPetersen) {
  const Graph p = make_kneser(5, 2);
  EXPECT_EQ(p.vertex_count(), 10u);
  EXPECT_EQ(p.edge_count(), 15u);
  EXPECT_TRUE(p.is_regular());
  EXPECT_EQ(p.degree(0), 3u);
  const auto subsets = lexicographic_subsets(5, 2);
  ASSERT_EQ(subsets.size(), 10u);
  EXPECT_EQ(subsets.front(), (std::vector<int>{1, 2}));
  EXPECT_EQ(subsets.back(), (std::vector<int>{4, 5}));
}

TEST(Constructors, CliqueSum) {
  const Graph g = make_clique_sum({{1, 1}, {1, 2}});
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.label(), "sum:1xK1+1xK2");
}

TEST(Complement, Involution) {
  const Graph c5 = make_cycle(5);
  const Graph cc = complement(c5);
  EXPECT_EQ(cc.edge_count(), 5u);
  EXPECT_EQ(complement(cc), c5);
}

TEST(EdgeList, RoundTrip) {
  const Graph p = make_kneser(5, 2);
  std::istringstream in(to_edge_list(p));
  EXPECT_EQ(parse_edge_list(in), p);
}

TEST(EdgeList, CommentsAndErrors) {
  std::istringstream ok("# triangle\np 3\ne 0 1\ne 1 2 # side\ne 0 2\n");
  EXPECT_EQ(parse_edge_list(ok), make_complete(3));
  std::istringstream bad("p 3\ne 0 x\n");
  EXPECT_EQ(code_of([&] { parse_edge_list(bad); }), ErrorCode::ParseError);
}

TEST(Semimetric, Values) {
  const Graph c5 = make_cycle(5);
  EXPECT_EQ(semimetric(c5, 2, 2), 0u);
  EXPECT_EQ(semimetric(c5, 2, 3), 1u);
  EXPECT_TRUE(semimetric(c5, 0, 2).is_infinite());
  EXPECT_EQ(seq_distance(c5, {0, 0}, {1, 4}), 2u);
  EXPECT_TRUE(seq_distance(c5, {0, 0}, {2, 0}).is_infinite());
  EXPECT_TRUE((ExtendedDistance(3) + ExtendedDistance::infinity()).is_infinite());
  EXPECT_LT(ExtendedDistance(7), ExtendedDistance::infinity());
  // Only a semimetric: 0 -> 1 -> 2 costs 2 while 0 -> 2 is infinite.
  EXPECT_TRUE(seq_distance(c5, {0}, {2}).is_infinite());
}

TEST(Semimetric, SymmetricAndDefinite) {
  const Graph c5 = make_cycle(5);
  const std::size_t n = 3;
  for (std::size_t a = 0; a < 125; a += 7)
    for (std::size_t b = 0; b < 125; b += 5)
      for (std::size_t c = 0; c < 125; c += 11) {
        const auto x = decode_word(a, 5, n), y = decode_word(b, 5, n), z = decode_word(c, 5, n);
        EXPECT_EQ(seq_distance(c5, x, y), seq_distance(c5, y, x));
        EXPECT_EQ(seq_distance(c5, x, y) == 0u, a == b);
      }
}

TEST(Words, EncodingIsFirstCoordinateMajor) {
  EXPECT_EQ(encode_word({1, 0, 2}, 3), 9u + 2u);
  EXPECT_EQ(decode_word(11, 3, 3), (SequenceWord{1, 0, 2}));
  for (std::size_t i = 0; i < 81; ++i) EXPECT_EQ(encode_word(decode_word(i, 3, 4), 3), i);
}

TEST(PowerGraph, MatchesDefinition) {
  for (const Graph& base : {make_cycle(5), make_complete(3), make_path(3), make_cycle(4)}) {
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t d = 0; d <= n; ++d) {
        const Graph p = power_graph(base, n, d);
        const std::size_t words = p.vertex_count();
        for (Vertex u = 0; u < words; ++u)
          for (Vertex v = u + 1; v < words; ++v) {
            const auto dist = seq_distance(base, decode_word(u, base.vertex_count(), n),
                                           decode_word(v, base.vertex_count(), n));
            EXPECT_EQ(p.has_edge(u, v), dist <= d) << base.label() << " n=" << n << " d=" << d;
          }
      }
  }
}

TEST(PowerGraph, FullDistanceIsStrongPower) {
  const Graph c5 = make_cycle(5);
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_EQ(power_graph(c5, n, n), strong_power(c5, n));
  EXPECT_EQ(strong_power(c5, 2).edge_count(), 25u * 8u / 2u);
}

TEST(PowerGraph, EdgesMonotoneInDistance) {
  const Graph k3 = make_complete(3);
  const std::size_t n = 4;
  for (std::size_t d = 1; d <= n; ++d) {
    const Graph lo = power_graph(k3, n, d - 1), hi = power_graph(k3, n, d);
    for (auto [u, v] : lo.edges()) EXPECT_TRUE(hi.has_edge(u, v));
  }
  EXPECT_EQ(power_graph(k3, n, 0).edge_count(), 0u);
}

TEST(PowerGraph, CloseWordsMatchNeighborhood) {
  const Graph c5 = make_cycle(5);
  const Graph p = power_graph(c5, 3, 2);
  for (Vertex v = 0; v < p.vertex_count(); v += 13) {
    auto cw = close_words(c5, decode_word(v, 5, 3), 2);
    std::sort(cw.begin(), cw.end());
    std::vector<std::size_t> nb(p.neighbors(v).begin(), p.neighbors(v).end());
    EXPECT_EQ(cw, nb);
  }
}

TEST(PowerGraph, CapsAndArguments) {
  Limits small;
  small.max_vertices = 100;
  EXPECT_EQ(code_of([&] { power_graph(make_cycle(5), 3, 1, small); }), ErrorCode::CapExceeded);
  EXPECT_EQ(code_of([] { power_graph(make_cycle(5), 2, 3); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { power_graph(make_cycle(5), 0, 0); }), ErrorCode::InvalidArgument);
  EXPECT_FALSE(checked_power(10, 20, 1000000));
  EXPECT_EQ(*checked_power(5, 3, 125), 125u);
}

TEST(Symmetry, TransitivityPredicates) {
  EXPECT_TRUE(is_vertex_transitive(make_cycle(5)));
  EXPECT_TRUE(is_edge_transitive(make_cycle(5)));
  EXPECT_TRUE(is_vertex_transitive(make_kneser(5, 2)));
  EXPECT_TRUE(is_edge_transitive(make_kneser(5, 2)));
  EXPECT_FALSE(is_vertex_transitive(make_path(3)));
  EXPECT_TRUE(is_edge_transitive(make_path(3)));
  EXPECT_FALSE(is_vertex_transitive(make_clique_sum({{1, 1}, {1, 2}})));
  // Circular ladder (prism) on 6 vertices: vertex- but not edge-transitive.
  const Graph prism = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
  EXPECT_TRUE(is_vertex_transitive(prism));
  EXPECT_FALSE(is_edge_transitive(prism));
}

TEST(Symmetry, CapFallsBackOnHints) {
  Limits tight;
  tight.max_automorphism_vertices = 4;
  EXPECT_EQ(code_of([&] { is_vertex_transitive(make_path(5), tight); }), ErrorCode::CapExceeded);
  EXPECT_TRUE(is_vertex_transitive(make_cycle(5), tight));
}

TEST(Symmetry, AutomorphismCounts) {
  EXPECT_EQ(enumerate_automorphisms(make_cycle(5)).size(), 10u);
  EXPECT_EQ(enumerate_automorphisms(make_kneser(5, 2)).size(), 120u);
  for (const auto& p : enumerate_automorphisms(make_cycle(6))) EXPECT_TRUE(is_automorphism(make_cycle(6), p));
}

TEST(Homomorphism, SearchAndVerify) {
  const Graph c5 = make_cycle(5), k3 = make_complete(3);
  const auto f = find_homomorphism(c5, k3);
  ASSERT_TRUE(f);
  EXPECT_TRUE(is_homomorphism(c5, k3, *f));
  EXPECT_FALSE(find_homomorphism(c5, make_complete(2)));
  EXPECT_FALSE(find_homomorphism(make_complete(4), k3));
  EXPECT_TRUE(find_homomorphism(make_cycle(6), make_complete(2)));
}
