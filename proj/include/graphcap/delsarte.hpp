#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "graphcap/error.hpp"
#include "graphcap/graph.hpp"
#include "graphcap/simplex.hpp"
#include "graphcap/spectral.hpp"

namespace graphcap {

struct KrawtchoukParams {
  std::size_t n = 0;
  double q_prime = 2.0;
};

namespace detail {

/// Neumaier-compensated running sum.
template <class T = long double>
class CompensatedSum {
 public:
  void add(const T& x) {
    using std::abs;
    const T t = sum_ + x;
    if (abs(sum_) >= abs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_ = 0, comp_ = 0;
};

/// x(x-1)...(x-j+1)/j! for real x.
template <class T>
T generalized_binomial(const T& x, std::size_t j) {
  T r = 1;
  for (std::size_t i = 0; i < j; ++i) r *= (x - T(i)) / T(i + 1);
  return r;
}

template <class T>
T krawtchouk_t(std::size_t ell, const T& x, std::size_t n, const T& q_prime) {
  CompensatedSum<T> sum;
  const T nx = T(n) - x;
  const T base = q_prime - 1;
  T power = 1;
  // Walk j downwards so (q'-1)^(ell-j) is built by repeated multiplication.
  std::vector<T> terms(ell + 1);
  for (std::size_t k = 0; k <= ell; ++k) {
    const std::size_t j = ell - k;
    terms[j] = generalized_binomial(x, j) * generalized_binomial(nx, k) * power;
    power *= base;
  }
  for (std::size_t j = 0; j <= ell; ++j) sum.add(j % 2 ? T(-terms[j]) : terms[j]);
  return sum.value();
}

inline long double krawtchouk_ld(std::size_t ell, long double x, std::size_t n, long double q_prime) {
  return krawtchouk_t<long double>(ell, x, n, q_prime);
}

}  // namespace detail

inline constexpr std::size_t kMaxKrawtchoukLength = 128;

/// K_ell(x) = sum_j C(x,j) C(n-x,ell-j) (-1)^j (q'-1)^(ell-j) for real x and q'.
inline double krawtchouk(std::size_t ell, double x, const KrawtchoukParams& p) {
  if (ell > p.n) fail(ErrorCode::InvalidArgument, "Krawtchouk degree exceeds n");
  if (!(p.q_prime > 1)) fail(ErrorCode::InvalidArgument, "q' must exceed 1");
  return static_cast<double>(detail::krawtchouk_ld(ell, x, p.n, p.q_prime));
}

/// Optimum of the first linear program: minimize H(0) over H = sum_ell Hhat_ell K_ell
/// with Hhat_0 = 1, Hhat_ell >= 0 and H(x) <= 0 at every integer x in [d, n].
struct LPSolution {
  std::size_t n = 0;
  std::size_t d = 0;
  double q_prime = 0;
  std::vector<double> coefficients;                  // Hhat_0..Hhat_n
  double objective = 0;                              // H(0)
  std::vector<std::pair<std::size_t, double>> certificate;  // (x, H(x)) per constraint
  std::vector<double> distance_distribution;         // dual multipliers A_x, x in [d, n]
  double dual_objective = 0;                         // 1 + sum A_x
  std::size_t pivots = 0;
};

/// H(x) for the given coefficients, accumulated in extended precision.
inline double evaluate_lp_polynomial(const std::vector<double>& coefficients, double x, std::size_t n,
                                     double q_prime) {
  detail::CompensatedSum<> sum;
  for (std::size_t ell = 0; ell < coefficients.size(); ++ell)
    if (coefficients[ell] != 0.0)
      sum.add(static_cast<long double>(coefficients[ell]) * detail::krawtchouk_ld(ell, x, n, q_prime));
  return static_cast<double>(sum.value());
}

inline LPSolution a_lp1(std::size_t n, std::size_t d, double q_prime) {
  if (n < 1 || n > kMaxKrawtchoukLength)
    fail(ErrorCode::InvalidArgument, "LP length must lie in [1, 128]");
  if (d < 1 || d > n) fail(ErrorCode::InvalidArgument, "LP needs 1 <= d <= n");
  if (!(q_prime > 1)) fail(ErrorCode::InvalidArgument, "q' must exceed 1");

  // The tableau is badly conditioned for n around 64 and beyond, so the data and
  // the pivoting use 50-digit arithmetic.
  using Wide = boost::multiprecision::cpp_bin_float_50;
  // Variables v_ell = Hhat_ell K_ell(0) keep every column on a unit scale.
  std::vector<Wide> k0w(n + 1);
  std::vector<long double> k0(n + 1);
  const Wide qw(q_prime);
  for (std::size_t ell = 0; ell <= n; ++ell) {
    k0w[ell] = detail::krawtchouk_t<Wide>(ell, Wide(0), n, qw);
    k0[ell] = static_cast<long double>(k0w[ell]);
  }
  lp::LinearProgram<Wide> prog;
  prog.objective.assign(n, Wide(1));
  std::vector<std::vector<long double>> coeffs;
  for (std::size_t x = d; x <= n; ++x) {
    lp::LinearProgram<Wide>::Row row;
    row.coeffs.resize(n);
    std::vector<long double> c(n);
    for (std::size_t ell = 1; ell <= n; ++ell) {
      row.coeffs[ell - 1] = detail::krawtchouk_t<Wide>(ell, Wide(x), n, qw) / k0w[ell];
      c[ell - 1] = static_cast<long double>(row.coeffs[ell - 1]);
    }
    row.relation = lp::Relation::LessEqual;
    row.rhs = Wide(-1);
    prog.rows.push_back(std::move(row));
    coeffs.push_back(std::move(c));
  }
  auto sol = lp::solve(prog);
  if (sol.status != lp::Status::Optimal)
    fail(ErrorCode::NumericFailure, "Delsarte LP not solved to optimality (n=" + std::to_string(n) +
                                        ", d=" + std::to_string(d) + ")");

  LPSolution out;
  out.n = n;
  out.d = d;
  out.q_prime = q_prime;
  out.pivots = sol.pivots;

  std::vector<long double> v;
  for (const auto& x : sol.x) v.push_back(std::max(static_cast<long double>(x), 0.0L));
  auto build = [&](long double scale) {
    out.coefficients.assign(n + 1, 0.0);
    out.coefficients[0] = 1.0;
    for (std::size_t ell = 1; ell <= n; ++ell)
      out.coefficients[ell] = static_cast<double>(v[ell - 1] * scale / k0[ell]);
  };
  auto worst = [&] {
    double t = -1e300;
    for (std::size_t x = d; x <= n; ++x)
      t = std::max(t, evaluate_lp_polynomial(out.coefficients, static_cast<double>(x), n, q_prime));
    return t;
  };
  // Floating-point roundoff can leave binding constraints a hair above zero.
  // Scaling the non-constant part by (1+eps) lowers every H(x) <= small t to
  // (1+eps) t - eps <= 0 at the cost of a slightly larger (still valid) bound.
  long double scale = 1;
  build(scale);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double t = worst();
    if (t <= 0) break;
    if (t >= 0.5) fail(ErrorCode::NumericFailure, "LP certificate violated by " + std::to_string(t));
    scale *= 1.0L + 2.0L * t / (1.0L - t) + 1e-15L;
    build(scale);
  }

  for (std::size_t x = d; x <= n; ++x)
    out.certificate.emplace_back(x, evaluate_lp_polynomial(out.coefficients, static_cast<double>(x), n, q_prime));
  out.objective = evaluate_lp_polynomial(out.coefficients, 0.0, n, q_prime);

  // Dual: A_x = -y_x >= 0 with 1 + sum_x A_x K_ell(x)/K_ell(0) >= 0 for all ell.
  out.dual_objective = 1.0;
  for (std::size_t i = 0; i < sol.duals.size(); ++i) {
    const double a = static_cast<double>(-sol.duals[i]);
    out.distance_distribution.push_back(a);
    out.dual_objective += a;
  }
  const double scale_ref = std::max(1.0, out.objective);
  for (double a : out.distance_distribution)
    if (a < -1e-9 * scale_ref) fail(ErrorCode::NumericFailure, "LP dual has a negative component");
  for (std::size_t ell = 1; ell <= n; ++ell) {
    long double lhs = 1;
    for (std::size_t i = 0; i < prog.rows.size(); ++i)
      lhs += static_cast<long double>(out.distance_distribution[i]) * coeffs[i][ell - 1];
    if (lhs < -1e-7L * scale_ref) fail(ErrorCode::NumericFailure, "LP dual infeasible at degree " + std::to_string(ell));
  }
  if (std::abs(out.dual_objective - static_cast<double>(1 + sol.value)) > 1e-7 * scale_ref)
    fail(ErrorCode::NumericFailure, "LP primal and dual objectives disagree");
  return out;
}

/// theta_L^n A_LP1(n, max(d,1)); for d = 0 the constraint set [1, n] is exactly
/// the set of non-adjacent distances.
struct FiniteUpperBound {
  double value = 0;
  double theta_L = 0;
  LPSolution lp;
};

inline FiniteUpperBound finite_alpha_upper_detail(const Graph& g, std::size_t n, std::size_t d,
                                                  const SpectralOptions& opts = {}) {
  if (d > n) fail(ErrorCode::InvalidArgument, "need d <= n");
  const SpectralData s = eigenspace_constants(g, opts);
  FiniteUpperBound out;
  out.theta_L = s.theta_L;
  out.lp = a_lp1(n, std::max<std::size_t>(d, 1), s.q_prime);
  out.value = std::pow(s.theta_L, static_cast<double>(n)) * out.lp.objective;
  return out;
}

inline double finite_alpha_upper(const Graph& g, std::size_t n, std::size_t d,
                                 const SpectralOptions& opts = {}) {
  return finite_alpha_upper_detail(g, n, d, opts).value;
}

/// ceil(delta n), guarded against representation error such as 0.3*10.
inline std::size_t distance_for(double delta, std::size_t n) {
  const double x = delta * static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

/// (1/n) log A_LP1(n, ceil(delta n)) in nats.
inline double lp_rate(std::size_t n, double delta, double q_prime) {
  if (delta < 0 || delta > 1) fail(ErrorCode::InvalidArgument, "delta must lie in [0,1]");
  const std::size_t d = std::clamp<std::size_t>(distance_for(delta, n), 1, n);
  return std::log(a_lp1(n, d, q_prime).objective) / static_cast<double>(n);
}

}  // namespace graphcap
