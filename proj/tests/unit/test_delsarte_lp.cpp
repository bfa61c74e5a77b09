#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "graphcap/delsarte.hpp"
#include "graphcap/graph.hpp"
#include "graphcap/invariants.hpp"

using namespace graphcap;

namespace {

const double kSqrt5 = std::sqrt(5.0);

double binom(double n, double k) { return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)); }

void expect_certificate(const LPSolution& s) {
  ASSERT_EQ(s.coefficients.size(), s.n + 1);
  EXPECT_EQ(s.coefficients[0], 1.0);
  for (double c : s.coefficients) EXPECT_GE(c, -1e-12);
  for (std::size_t x = s.d; x <= s.n; ++x)
    EXPECT_LE(evaluate_lp_polynomial(s.coefficients, static_cast<double>(x), s.n, s.q_prime), 1e-9)
        << "n=" << s.n << " d=" << s.d << " x=" << x;
  EXPECT_NEAR(evaluate_lp_polynomial(s.coefficients, 0, s.n, s.q_prime), s.objective, 1e-9 * s.objective);
  EXPECT_EQ(s.certificate.size(), s.n - s.d + 1);
}

}  // namespace

TEST(Krawtchouk, Examples) {
  for (double x : {0.0, 1.5, 3.0}) EXPECT_EQ(krawtchouk(0, x, {7, 2.5}), 1.0);
  EXPECT_NEAR(krawtchouk(1, 2, {5, 2}), 1.0, 1e-14);
  EXPECT_NEAR(krawtchouk(2, 0, {4, kSqrt5}), 6 * (kSqrt5 - 1) * (kSqrt5 - 1), 1e-12);
  EXPECT_THROW(krawtchouk(5, 0, {4, 2}), Error);
  EXPECT_THROW(krawtchouk(1, 0, {4, 1}), Error);
}

TEST(Krawtchouk, LinearTermAtRandomPoints) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> xs(0, 40), qs(1.1, 6);
  std::uniform_int_distribution<std::size_t> ns(1, 60);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = ns(rng);
    const double x = xs(rng), q = qs(rng);
    EXPECT_NEAR(krawtchouk(1, x, {n, q}), static_cast<double>(n) * (q - 1) - q * x, 1e-10 * (1 + n * q));
    EXPECT_EQ(krawtchouk(0, x, {n, q}), 1.0);
  }
}

TEST(Krawtchouk, ValueAtZero) {
  for (std::size_t n : {4u, 9u, 20u})
    for (std::size_t ell = 0; ell <= n; ++ell)
      EXPECT_NEAR(krawtchouk(ell, 0, {n, 2.5}), binom(n, ell) * std::pow(1.5, ell),
                  1e-12 * binom(n, ell) * std::pow(1.5, ell));
}

TEST(Krawtchouk, Orthogonality) {
  for (double q : {2.0, 2.5, kSqrt5, 3.0})
    for (std::size_t n = 1; n <= 12; ++n)
      for (std::size_t l = 0; l <= n; ++l)
        for (std::size_t m = 0; m <= n; ++m) {
          long double sum = 0, scale = 0;
          for (std::size_t x = 0; x <= n; ++x) {
            const long double w = binom(n, x) * std::pow(q - 1, static_cast<double>(x));
            const long double t = w * krawtchouk(l, x, {n, q}) * krawtchouk(m, x, {n, q});
            sum += t;
            scale += std::abs(t);
          }
          const long double norm = std::pow(q, n) * binom(n, l) * std::pow(q - 1, static_cast<double>(l));
          const long double want = l == m ? norm : 0;
          EXPECT_LE(std::abs(sum - want), 1e-6 * std::max(scale, norm)) << q << " " << n << " " << l << " " << m;
        }
}

TEST(Krawtchouk, IntegerAlphabetSymmetry) {
  // (q-1)^x C(n,x) K_l(x) = (q-1)^l C(n,l) K_x(l) for integer q.
  const std::size_t n = 10;
  for (std::size_t l = 0; l <= n; ++l)
    for (std::size_t x = 0; x <= n; ++x) {
      const double a = std::pow(2.0, x) * binom(n, x) * krawtchouk(l, x, {n, 3});
      const double b = std::pow(2.0, l) * binom(n, l) * krawtchouk(x, l, {n, 3});
      EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(a)));
    }
}

TEST(LinearProgram, ClassicalValues) {
  EXPECT_NEAR(a_lp1(5, 3, 2).objective, 4.0, 1e-9);
  EXPECT_NEAR(a_lp1(8, 3, 2).objective, 25.6, 1e-8);
  EXPECT_NEAR(a_lp1(10, 3, 2).objective, 256.0 / 3, 1e-7);
  EXPECT_NEAR(a_lp1(2, 2, kSqrt5).objective, kSqrt5, 1e-9);
}

TEST(LinearProgram, ValidityFloorAndOracles) {
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_GE(a_lp1(n, n, 2.5).objective, 1 - 1e-9);
  EXPECT_GE(a_lp1(5, 2, 2).objective, 4 - 1e-9);
  EXPECT_GE(a_lp1(3, 3, 2).objective, 2 - 1e-9);
}

TEST(LinearProgram, Certificates) {
  for (double q : {2.0, 2.5, kSqrt5, 3.0})
    for (std::size_t n : {1u, 2u, 5u, 9u, 16u, 24u})
      for (std::size_t d = 1; d <= n; d += 1 + n / 6) {
        const auto s = a_lp1(n, d, q);
        expect_certificate(s);
        EXPECT_NEAR(s.dual_objective, s.objective, 1e-7 * s.objective);
        for (double a : s.distance_distribution) EXPECT_GE(a, -1e-9 * s.objective);
      }
}

TEST(LinearProgram, LargeLengthCertificate) {
  const auto s = a_lp1(64, 20, 2);
  expect_certificate(s);
  EXPECT_NEAR(s.objective, 3.78999e7, 1e3);
}

TEST(LinearProgram, MonotoneInDistance) {
  for (double q : {2.0, kSqrt5})
    for (std::size_t n : {6u, 12u, 20u}) {
      double prev = std::numeric_limits<double>::infinity();
      for (std::size_t d = 1; d <= n; ++d) {
        const double v = a_lp1(n, d, q).objective;
        EXPECT_LE(v, prev * (1 + 1e-9)) << n << " " << d;
        prev = v;
      }
    }
}

TEST(LinearProgram, Arguments) {
  EXPECT_THROW(a_lp1(0, 1, 2), Error);
  EXPECT_THROW(a_lp1(5, 0, 2), Error);
  EXPECT_THROW(a_lp1(5, 6, 2), Error);
  EXPECT_THROW(a_lp1(129, 3, 2), Error);
  EXPECT_THROW(a_lp1(5, 2, 1.0), Error);
}

TEST(FiniteUpper, Examples) {
  EXPECT_GE(finite_alpha_upper(make_complete(2), 5, 2), 4 - 1e-9);
  EXPECT_NEAR(finite_alpha_upper(make_complete(2), 5, 2), a_lp1(5, 2, 2).objective, 1e-9);
  EXPECT_GE(finite_alpha_upper(make_cycle(5), 2, 2), 5 - 1e-9);
  EXPECT_NEAR(finite_alpha_upper(make_cycle(5), 2, 2), 5 * a_lp1(2, 2, kSqrt5).objective, 1e-8);
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t d = 1; d <= n; ++d)
      EXPECT_NEAR(finite_alpha_upper(make_complete(3), n, d), a_lp1(n, d, 3).objective,
                  1e-9 * a_lp1(n, d, 3).objective);
  EXPECT_NEAR(finite_alpha_upper(make_complete(2), 4, 0), a_lp1(4, 1, 2).objective, 1e-9);
  try {
    finite_alpha_upper(strong_power(make_cycle(5), 2), 2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonConstantC);
  }
}

TEST(FiniteUpper, SandwichesOracle) {
  for (const Graph& g : {make_complete(2), make_complete(3), make_cycle(5)})
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t d = 0; d <= n; ++d)
        EXPECT_GE(finite_alpha_upper(g, n, d) * (1 + 1e-9), static_cast<double>(exact_alpha_power(g, n, d)))
            << g.label() << " " << n << " " << d;
}

TEST(LpRate, Examples) {
  EXPECT_EQ(distance_for(0.3, 10), 3u);
  EXPECT_EQ(distance_for(0.3, 16), 5u);
  const double r16 = lp_rate(16, 0.3, 2);
  EXPECT_NEAR(r16, std::log(a_lp1(16, 5, 2).objective) / 16, 1e-15);
  EXPECT_GE(r16, 0.173442691989 - 0.02);
  EXPECT_LT(lp_rate(40, 0.7, 2), 0.15);
  EXPECT_NEAR(lp_rate(30, 0.0, 2.5), std::log(a_lp1(30, 1, 2.5).objective) / 30, 1e-15);
  EXPECT_NEAR(lp_rate(30, 0.0, 2.5), std::log(2.5), 1e-9);
}
