#pragma once

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "graphcap/error.hpp"

namespace graphcap::lp {

enum class Relation { LessEqual, GreaterEqual, Equal };

/// minimize objective . x  subject to rows, x >= 0.
template <class Scalar>
struct LinearProgram {
  struct Row {
    std::vector<Scalar> coeffs;
    Relation relation = Relation::LessEqual;
    Scalar rhs{};
  };
  std::vector<Scalar> objective;
  std::vector<Row> rows;

  std::size_t variable_count() const { return objective.size(); }
};

enum class Status { Optimal, Infeasible, Unbounded };

template <class Scalar>
struct Solution {
  Status status = Status::Infeasible;
  std::vector<Scalar> x;
  /// Row multipliers y with objective - A^T y >= 0 at optimality; y >= 0 on
  /// >= rows and y <= 0 on <= rows.
  std::vector<Scalar> duals;
  Scalar value{};
  std::size_t pivots = 0;
};

/// epsilon^power of the scalar type, or zero for exact types.
template <class Scalar>
Scalar lp_tolerance(double power) {
  if constexpr (std::numeric_limits<Scalar>::is_exact) return Scalar(0);
  else {
    using std::pow;
    return Scalar(pow(std::numeric_limits<Scalar>::epsilon(), power));
  }
}

template <class Scalar>
Scalar pivot_tolerance() {
  return lp_tolerance<Scalar>(0.7);
}

namespace detail {

template <class Scalar>
class Tableau {
 public:
  Tableau(const LinearProgram<Scalar>& lp, Scalar eps) : eps_(eps) {
    const std::size_t n = lp.variable_count();
    const std::size_t m = lp.rows.size();
    std::size_t slack = 0, art = 0;
    for (const auto& r : lp.rows) {
      if (r.coeffs.size() != n) fail(ErrorCode::InvalidArgument, "LP row width mismatch");
      Relation rel = normalized(r);
      if (rel != Relation::Equal) ++slack;
      if (rel != Relation::LessEqual) ++art;
    }
    n_orig_ = n;
    first_art_ = n + slack;
    cols_ = n + slack + art;
    t_.assign(m, std::vector<Scalar>(cols_ + 1, Scalar(0)));
    basis_.assign(m, 0);
    init_col_.assign(m, 0);
    sign_.assign(m, 1);
    std::size_t s = n, a = first_art_;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& r = lp.rows[i];
      const bool flip = r.rhs < Scalar(0);
      sign_[i] = flip ? -1 : 1;
      for (std::size_t j = 0; j < n; ++j) t_[i][j] = flip ? Scalar(-r.coeffs[j]) : r.coeffs[j];
      t_[i][cols_] = flip ? Scalar(-r.rhs) : r.rhs;
      Relation rel = normalized(r);
      if (rel == Relation::LessEqual) {
        t_[i][s] = Scalar(1);
        basis_[i] = init_col_[i] = s++;
      } else {
        if (rel == Relation::GreaterEqual) t_[i][s++] = Scalar(-1);
        t_[i][a] = Scalar(1);
        basis_[i] = init_col_[i] = a++;
      }
    }
  }

  Solution<Scalar> solve(const std::vector<Scalar>& cost, std::size_t max_pivots) {
    Solution<Scalar> out;
    const std::size_t m = t_.size();
    // Phase 1: minimize the sum of artificials.
    if (first_art_ < cols_) {
      std::vector<Scalar> c1(cols_, Scalar(0));
      for (std::size_t j = first_art_; j < cols_; ++j) c1[j] = Scalar(1);
      set_objective(c1);
      optimize(max_pivots, out.pivots, true);
      if (-obj_[cols_] > feasibility_tolerance()) {
        out.status = Status::Infeasible;
        return out;
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (basis_[i] < first_art_) continue;
        for (std::size_t j = 0; j < first_art_; ++j)
          if (abs_value(t_[i][j]) > eps_) {
            pivot(i, j);
            ++out.pivots;
            break;
          }
      }
    }
    std::vector<Scalar> c2(cols_, Scalar(0));
    for (std::size_t j = 0; j < n_orig_; ++j) c2[j] = cost[j];
    set_objective(c2);
    if (!optimize(max_pivots, out.pivots, false)) {
      out.status = Status::Unbounded;
      return out;
    }
    out.status = Status::Optimal;
    out.x.assign(n_orig_, Scalar(0));
    for (std::size_t i = 0; i < m; ++i)
      if (basis_[i] < n_orig_) out.x[basis_[i]] = t_[i][cols_];
    out.value = -obj_[cols_];
    out.duals.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      Scalar y = -obj_[init_col_[i]];
      out.duals[i] = sign_[i] < 0 ? Scalar(-y) : y;
    }
    return out;
  }

 private:
  static Relation normalized(const typename LinearProgram<Scalar>::Row& r) {
    if (!(r.rhs < Scalar(0)) || r.relation == Relation::Equal) return r.relation;
    return r.relation == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
  }

  static Scalar abs_value(const Scalar& v) { return v < Scalar(0) ? Scalar(-v) : v; }

  Scalar feasibility_tolerance() const { return lp_tolerance<Scalar>(0.55); }

  void set_objective(const std::vector<Scalar>& c) {
    obj_.assign(cols_ + 1, Scalar(0));
    for (std::size_t j = 0; j < cols_; ++j) obj_[j] = c[j];
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const Scalar cb = c[basis_[i]];
      if (cb == Scalar(0)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= cb * t_[i][j];
    }
  }

  /// Most-negative reduced cost, switching permanently to Bland's rule after a
  /// run of degenerate pivots. Returns false if unbounded. Artificial columns never
  /// re-enter. Phase 1 is bounded below, so a column without a usable pivot there
  /// only reflects roundoff; it is skipped until the next pivot.
  bool optimize(std::size_t max_pivots, std::size_t& pivots, bool phase_one) {
    const std::size_t limit = first_art_;
    std::size_t degenerate_run = 0;
    std::vector<bool> blocked(limit, false);
    while (true) {
      const bool bland = degenerate_run >= kDegenerateSwitch;
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (blocked[j] || !(obj_[j] < -eps_)) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (enter == cols_ || obj_[j] < obj_[enter]) enter = j;
      }
      if (enter == cols_) return true;
      std::size_t leave = t_.size();
      Scalar best{};
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (!(t_[i][enter] > eps_)) continue;
        Scalar ratio = t_[i][cols_] / t_[i][enter];
        if (leave == t_.size()) {
          leave = i;
          best = ratio;
          continue;
        }
        const Scalar diff = ratio - best;
        if (diff < -ratio_tolerance(best)) {
          leave = i;
          best = ratio;
        } else if (!(diff > ratio_tolerance(best))) {
          const bool better = bland ? basis_[i] < basis_[leave]
                                    : abs_value(t_[i][enter]) > abs_value(t_[leave][enter]);
          if (better) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave == t_.size()) {
        if (!phase_one) return false;
        blocked[enter] = true;
        continue;
      }
      std::fill(blocked.begin(), blocked.end(), false);
      // Once Bland's rule takes over it stays in force, which rules out cycling.
      if (abs_value(best) <= ratio_tolerance(Scalar(0))) ++degenerate_run;
      else if (!bland) degenerate_run = 0;
      pivot(leave, enter);
      if (++pivots > max_pivots)
        fail(ErrorCode::NumericFailure, "simplex pivot limit exceeded");
    }
  }

  static constexpr std::size_t kDegenerateSwitch = 50;

  Scalar ratio_tolerance(const Scalar& ref) const {
    if constexpr (std::numeric_limits<Scalar>::is_exact) return Scalar(0);
    else return eps_ * (Scalar(1) + abs_value(ref));
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& pr = t_[r];
    const Scalar p = pr[c];
    for (auto& v : pr) v /= p;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r) continue;
      const Scalar f = t_[i][c];
      if (f == Scalar(0)) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (pr[j] != Scalar(0)) t_[i][j] -= f * pr[j];
    }
    const Scalar f = obj_[c];
    if (f != Scalar(0))
      for (std::size_t j = 0; j <= cols_; ++j)
        if (pr[j] != Scalar(0)) obj_[j] -= f * pr[j];
    basis_[r] = c;
  }

  Scalar eps_;
  std::size_t n_orig_ = 0, first_art_ = 0, cols_ = 0;
  std::vector<std::vector<Scalar>> t_;
  std::vector<Scalar> obj_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> init_col_;
  std::vector<int> sign_;
};

}  // namespace detail

/// Dense two-phase simplex; Bland's anti-cycling rule takes over on degeneracy. Works over any
/// ordered field type; with an exact type such as cpp_rational the result is
/// exact.
template <class Scalar>
Solution<Scalar> solve(const LinearProgram<Scalar>& lp, std::size_t max_pivots = 1'000'000) {
  detail::Tableau<Scalar> tableau(lp, pivot_tolerance<Scalar>());
  return tableau.solve(lp.objective, max_pivots);
}

}  // namespace graphcap::lp
