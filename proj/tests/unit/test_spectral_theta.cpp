#include <gtest/gtest.h>

#include <cmath>

#include "graphcap/graph.hpp"
#include "graphcap/spectral.hpp"

using namespace graphcap;

namespace {

const double kPhi = (1 + std::sqrt(5.0)) / 2;

std::vector<Graph> edge_transitive_graphs() {
  return {make_complete(2), make_complete(3), make_complete(5), make_cycle(4),
          make_cycle(5),    make_cycle(7),    make_kneser(5, 2), make_kneser(6, 2)};
}

double min_eigenvalue(const Matrix& m) { return jacobi_eigen(m).values.back(); }

}  // namespace

TEST(Spectrum, Examples) {
  const auto k4 = adjacency_spectrum(make_complete(4));
  ASSERT_EQ(k4.size(), 4u);
  EXPECT_NEAR(k4[0], 3, 1e-10);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(k4[i], -1, 1e-10);

  const auto c5 = adjacency_spectrum(make_cycle(5));
  const std::vector<double> want{2, kPhi - 1, kPhi - 1, -kPhi, -kPhi};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(c5[i], want[i], 1e-10);

  const auto p = adjacency_spectrum(make_kneser(5, 2));
  EXPECT_NEAR(p[0], 3, 1e-10);
  for (int i = 1; i <= 5; ++i) EXPECT_NEAR(p[i], 1, 1e-10);
  for (int i = 6; i < 10; ++i) EXPECT_NEAR(p[i], -2, 1e-10);
}

TEST(Spectrum, TraceIdentities) {
  for (const Graph& g : {make_cycle(9), make_kneser(6, 2), make_path(6), make_clique_sum({{1, 1}, {2, 3}})}) {
    const auto s = adjacency_spectrum(g);
    double sum = 0, sq = 0;
    for (double x : s) {
      sum += x;
      sq += x * x;
    }
    EXPECT_NEAR(sum, 0, 1e-8) << g.label();
    EXPECT_NEAR(sq, 2.0 * g.edge_count(), 1e-6 * 2.0 * g.edge_count()) << g.label();
    EXPECT_TRUE(std::is_sorted(s.rbegin(), s.rend()));
  }
}

TEST(Spectrum, EigenvectorsAreOrthonormal) {
  const Graph g = make_kneser(6, 2);
  const auto e = jacobi_eigen(adjacency_matrix(g));
  const std::size_t n = g.vertex_count();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += e.vectors(i, a) * e.vectors(i, b);
      EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, 1e-9);
    }
}

TEST(Theta, Examples) {
  EXPECT_NEAR(lovasz_theta_edge_transitive(make_cycle(5)), std::sqrt(5.0), 1e-9);
  for (std::size_t q = 2; q <= 6; ++q) EXPECT_NEAR(lovasz_theta_edge_transitive(make_complete(q)), 1, 1e-9);
  EXPECT_NEAR(lovasz_theta_edge_transitive(make_kneser(5, 2)), 4, 1e-9);
  EXPECT_NEAR(lovasz_theta_edge_transitive(make_kneser(7, 3)), 15, 1e-9);
}

TEST(Theta, SecondFormAgrees) {
  for (const Graph& g : edge_transitive_graphs()) {
    const auto s = adjacency_spectrum(g);
    const double g_n = static_cast<double>(g.vertex_count());
    EXPECT_NEAR(lovasz_theta_edge_transitive(g), -s.back() * g_n / (s.front() - s.back()), 1e-9) << g.label();
  }
}

TEST(Theta, Errors) {
  try {
    lovasz_theta_edge_transitive(Graph::from_edges(3, {}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EdgelessGraph);
  }
  try {
    lovasz_theta_edge_transitive(make_path(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unsupported);
  }
}

TEST(LovaszMatrix, Examples) {
  const Matrix k2 = lovasz_matrix(make_complete(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(k2(i, j), 1, 1e-12);
  const Matrix c5 = lovasz_matrix(make_cycle(5));
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(c5(i, i), std::sqrt(5.0), 1e-9);
}

TEST(LovaszMatrix, Properties) {
  for (const Graph& g : edge_transitive_graphs()) {
    const Matrix d = lovasz_matrix(g);
    const std::size_t n = g.vertex_count();
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0;
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_GE(d(i, j), -1e-12);
        EXPECT_NEAR(d(i, j), d(j, i), 1e-12);
        row += d(i, j);
      }
      EXPECT_NEAR(row, static_cast<double>(n), 1e-9) << g.label();
    }
    EXPECT_GE(min_eigenvalue(d), -1e-9) << g.label();
  }
}

TEST(LovaszMatrix, KernelContainsMinEigenspace) {
  for (const Graph& g : edge_transitive_graphs()) {
    const auto eig = jacobi_eigen(adjacency_matrix(g));
    std::size_t dim = 0;
    const Matrix pm = min_eigenspace_projector(eig, 1e-8 * std::abs(eig.values.front()), dim);
    const Matrix d = lovasz_matrix(g);
    double tr = 0;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
      for (std::size_t j = 0; j < g.vertex_count(); ++j) tr += pm(i, j) * d(j, i);
    EXPECT_NEAR(tr, 0, 1e-7) << g.label();
  }
}

TEST(EigenspaceConstants, Examples) {
  for (std::size_t q = 2; q <= 6; ++q) {
    const auto s = eigenspace_constants(make_complete(q));
    EXPECT_EQ(s.multiplicity_min, q - 1);
    // P_m = I - J/q, so -q (P_m)_{uv} = 1 on every edge.
    EXPECT_NEAR(s.c_const, 1.0, 1e-9);
    EXPECT_NEAR(s.q_prime, static_cast<double>(q), 1e-9);
  }
  const auto c5 = eigenspace_constants(make_cycle(5));
  EXPECT_EQ(c5.multiplicity_min, 2u);
  EXPECT_NEAR(c5.q_prime, std::sqrt(5.0), 1e-9);
  EXPECT_NEAR(c5.c_const, kPhi, 1e-9);
}

TEST(EigenspaceConstants, ThreeExpressionsAgree) {
  for (const Graph& g : edge_transitive_graphs()) {
    const auto s = eigenspace_constants(g);
    EXPECT_GT(s.lambda0, 0);
    EXPECT_LT(s.lambda_min, 0);
    EXPECT_GT(s.c_const, 0);
    EXPECT_NEAR(s.q_prime_from_multiplicity, s.q_prime, 1e-7 * s.q_prime) << g.label();
    EXPECT_NEAR(s.q_prime_from_spectrum, s.q_prime, 1e-7 * s.q_prime) << g.label();
    EXPECT_NEAR(s.q_prime_from_theta, s.q_prime, 1e-7 * s.q_prime) << g.label();
    EXPECT_NEAR(s.multiplicity_min * s.lambda_min, -s.c_const * s.lambda0, 1e-7) << g.label();
  }
}

TEST(EigenspaceConstants, PentagonSquareIsNonConstant) {
  try {
    eigenspace_constants(strong_power(make_cycle(5), 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonConstantC);
  }
}

TEST(EigenspaceConstants, GateErrors) {
  try {
    eigenspace_constants(make_path(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unsupported);
  }
  try {
    eigenspace_constants(make_complete(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EdgelessGraph);
  }
}
