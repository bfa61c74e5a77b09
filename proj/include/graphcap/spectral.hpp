#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "graphcap/error.hpp"
#include "graphcap/graph.hpp"
#include "graphcap/symmetry.hpp"

namespace graphcap {

/// Dense row-major square matrix.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

inline Matrix adjacency_matrix(const Graph& g) {
  Matrix a(g.vertex_count());
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v : g.neighbors(u)) a(u, v) = 1.0;
  return a;
}

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k is the eigenvector of values[k]
};

struct JacobiOptions {
  std::size_t max_sweeps = 100;
  std::size_t max_dimension = 1024;
};

/// Cyclic Jacobi rotations on a private copy of a symmetric matrix.
inline EigenDecomposition jacobi_eigen(Matrix a, const JacobiOptions& opts = {}) {
  const std::size_t n = a.size();
  if (n > opts.max_dimension)
    fail(ErrorCode::CapExceeded, "eigensolver limited to dimension " + std::to_string(opts.max_dimension));
  Matrix v(n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  double frob = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob += a(i, j) * a(i, j);
  frob = std::sqrt(frob);

  bool converged = n <= 1 || frob == 0.0;
  for (std::size_t sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-15 * frob) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) > 1e-12 * frob)
      fail(ErrorCode::NumericFailure, "Jacobi iteration did not converge");
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(idx[k], idx[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, idx[k]);
  }
  return out;
}

/// Adjacency eigenvalues, descending.
inline std::vector<double> adjacency_spectrum(const Graph& g, const JacobiOptions& opts = {}) {
  return jacobi_eigen(adjacency_matrix(g), opts).values;
}

struct SpectralData {
  std::vector<double> eigenvalues;
  double lambda0 = 0;
  double lambda_min = 0;
  double theta_L = 0;
  std::size_t multiplicity_min = 0;
  double c_const = 0;
  double q_prime = 0;
  // The three equivalent expressions for the effective alphabet size.
  double q_prime_from_multiplicity = 0;  // 1 + d/c
  double q_prime_from_spectrum = 0;      // 1 - lambda0/lambda_min
  double q_prime_from_theta = 0;         // g/theta_L
  // Spread of -g (P_m)_{uv} over all edges.
  double c_min = 0;
  double c_max = 0;
};

struct SpectralOptions {
  double grouping_tolerance = 1e-8;  // relative to the spectral radius
  double c_tolerance = 1e-7;
  double identity_tolerance = 1e-7;
  JacobiOptions jacobi;
};

namespace detail {

inline void require_edge(const Graph& g) {
  if (g.edge_count() == 0) fail(ErrorCode::EdgelessGraph, g.label() + " has no edges");
}

inline void require_regular(const Graph& g) {
  if (!g.is_regular())
    fail(ErrorCode::Unsupported,
         g.label() + " is not regular; theta is only computed for edge-transitive regular graphs");
}

/// Rejects graphs known not to be edge-transitive (by search when small, or hints).
inline void require_edge_transitive(const Graph& g, const Limits& limits) {
  bool et = true;
  try {
    et = is_edge_transitive(g, limits);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CapExceeded) throw;
  }
  if (!et)
    fail(ErrorCode::Unsupported,
         g.label() + " is not edge-transitive; general theta needs semidefinite programming");
}

inline double eigen_theta(double lambda0, double lambda_min, std::size_t g) {
  return static_cast<double>(g) / (1.0 - lambda0 / lambda_min);
}

}  // namespace detail

/// theta_L = |V| / (1 - lambda0/lambda_min), valid for edge-transitive regular graphs.
inline double lovasz_theta_edge_transitive(const Graph& g, const Limits& limits = {},
                                           const JacobiOptions& jopts = {}) {
  detail::require_edge(g);
  detail::require_regular(g);
  detail::require_edge_transitive(g, limits);
  const auto spec = adjacency_spectrum(g, jopts);
  return detail::eigen_theta(spec.front(), spec.back(), g.vertex_count());
}

/// D = g/(lambda0 - lambda_min) (A - lambda_min I).
inline Matrix lovasz_matrix(const Graph& g, const Limits& limits = {}, const JacobiOptions& jopts = {}) {
  detail::require_edge(g);
  detail::require_regular(g);
  detail::require_edge_transitive(g, limits);
  const auto spec = adjacency_spectrum(g, jopts);
  const double l0 = spec.front(), lm = spec.back();
  const double scale = static_cast<double>(g.vertex_count()) / (l0 - lm);
  Matrix d = adjacency_matrix(g);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) d(i, j) *= scale;
    d(i, i) -= scale * lm;
  }
  return d;
}

/// Orthogonal projector onto the eigenspace of the smallest adjacency eigenvalue.
inline Matrix min_eigenspace_projector(const EigenDecomposition& eig, double tol, std::size_t& dim) {
  const std::size_t n = eig.values.size();
  const double lm = eig.values.back();
  Matrix p(n);
  dim = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(eig.values[k] - lm) > tol) continue;
    ++dim;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) += eig.vectors(i, k) * eig.vectors(j, k);
  }
  return p;
}

/// Constants of the minimum eigenspace used by the converse bound. This is the
/// operational gate for that bound: the graph must be regular, have an edge,
/// and -g (P_m)_{uv} must agree on every edge (else NonConstantC).
inline SpectralData eigenspace_constants(const Graph& g, const SpectralOptions& opts = {}) {
  detail::require_edge(g);
  detail::require_regular(g);
  const std::size_t n = g.vertex_count();
  const auto eig = jacobi_eigen(adjacency_matrix(g), opts.jacobi);
  SpectralData s;
  s.eigenvalues = eig.values;
  s.lambda0 = eig.values.front();
  s.lambda_min = eig.values.back();
  const double radius = std::max(std::abs(s.lambda0), std::abs(s.lambda_min));
  const Matrix pm = min_eigenspace_projector(eig, opts.grouping_tolerance * radius, s.multiplicity_min);

  bool first = true;
  for (auto [u, v] : g.edges()) {
    const double c = -static_cast<double>(n) * pm(u, v);
    if (first) {
      s.c_min = s.c_max = c;
      first = false;
    }
    s.c_min = std::min(s.c_min, c);
    s.c_max = std::max(s.c_max, c);
  }
  if (s.c_max - s.c_min > opts.c_tolerance * std::max(1.0, std::abs(s.c_max)))
    fail(ErrorCode::NonConstantC, g.label() + ": -g (P_m)_{uv} ranges over [" +
                                      std::to_string(s.c_min) + ", " + std::to_string(s.c_max) +
                                      "] across edges");
  s.c_const = 0.5 * (s.c_min + s.c_max);
  s.theta_L = detail::eigen_theta(s.lambda0, s.lambda_min, n);
  s.q_prime_from_multiplicity = 1.0 + static_cast<double>(s.multiplicity_min) / s.c_const;
  s.q_prime_from_spectrum = 1.0 - s.lambda0 / s.lambda_min;
  s.q_prime_from_theta = static_cast<double>(n) / s.theta_L;
  s.q_prime = s.q_prime_from_spectrum;

  const double tol = opts.identity_tolerance;
  const double lhs = static_cast<double>(s.multiplicity_min) * s.lambda_min;
  const double rhs = -s.c_const * s.lambda0;
  if (!(s.c_const > 0) || std::abs(lhs - rhs) > tol * std::max(1.0, std::abs(lhs)))
    fail(ErrorCode::NumericFailure, g.label() + ": multiplicity identity d*lambda_min = -c*lambda0 fails");
  for (double alt : {s.q_prime_from_multiplicity, s.q_prime_from_theta})
    if (std::abs(alt - s.q_prime) > tol * s.q_prime)
      fail(ErrorCode::NumericFailure, g.label() + ": effective alphabet size expressions disagree");
  return s;
}

}  // namespace graphcap
