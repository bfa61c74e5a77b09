#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graphcap/delsarte.hpp"
#include "graphcap/error.hpp"
#include "graphcap/graph.hpp"
#include "graphcap/invariants.hpp"
#include "graphcap/symmetry.hpp"

namespace graphcap {

/// One (n, d) row of the check gv_sphere_count <= alpha(G(n,d)) <= finite_alpha_upper.
struct SandwichRow {
  std::size_t n = 0;
  std::size_t d = 0;
  std::optional<double> lower;        // absent if G is not known to be vertex-transitive
  std::optional<std::size_t> alpha;   // absent on timeout or cap
  std::optional<double> upper;        // absent if the converse does not apply
  std::string note;                   // reason for a missing column
  double seconds = 0;

  bool violated() const {
    constexpr double tol = 1e-9;
    if (alpha && lower && *lower > static_cast<double>(*alpha) * (1 + tol)) return true;
    if (alpha && upper && static_cast<double>(*alpha) > *upper * (1 + tol)) return true;
    if (!alpha && lower && upper && *lower > *upper * (1 + tol)) return true;
    return false;
  }
};

struct SandwichOptions {
  std::size_t max_n = 0;                              // 0: up to the vertex cap
  std::optional<std::chrono::milliseconds> timeout;   // per exact alpha computation
  Limits limits;
};

struct SandwichReport {
  std::string graph_label;
  std::vector<SandwichRow> rows;
  std::vector<std::string> notes;

  std::size_t violations() const {
    std::size_t k = 0;
    for (const auto& r : rows) k += r.violated();
    return k;
  }
  std::size_t unresolved() const {
    std::size_t k = 0;
    for (const auto& r : rows) k += !r.alpha;
    return k;
  }
};

/// Runs the sandwich for every 0 <= d <= n and every n up to max_n, or up to
/// the vertex cap when max_n is 0. An explicit max_n past the cap is refused
/// before any work is done.
inline SandwichReport run_sandwich(const Graph& g, const SandwichOptions& opts = {}) {
  if (opts.max_n && !checked_power(g.vertex_count(), opts.max_n, opts.limits.max_vertices))
    fail(ErrorCode::CapExceeded, "|V|^" + std::to_string(opts.max_n) + " exceeds the vertex cap of " +
                                     std::to_string(opts.limits.max_vertices));
  SandwichReport rep;
  rep.graph_label = g.label();

  bool vt = false;
  try {
    vt = is_vertex_transitive(g, opts.limits);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CapExceeded) throw;
    rep.notes.push_back("vertex-transitivity unknown; GV side skipped");
  }
  std::optional<std::size_t> alpha1;
  if (vt) {
    SearchOptions so;
    so.vertex_transitive = true;
    alpha1 = independence_number(g, so).size;
  } else if (rep.notes.empty()) {
    rep.notes.push_back(g.label() + " is not vertex-transitive; GV side skipped");
  }

  std::optional<std::string> lp_skip;
  try {
    eigenspace_constants(g);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonConstantC && e.code() != ErrorCode::Unsupported &&
        e.code() != ErrorCode::EdgelessGraph)
      throw;
    lp_skip = e.what();
    rep.notes.push_back(std::string("LP side skipped: ") + e.what());
  }

  for (std::size_t n = 1;; ++n) {
    if (opts.max_n && n > opts.max_n) break;
    if (!checked_power(g.vertex_count(), n, opts.limits.max_vertices)) break;
    for (std::size_t d = 0; d <= n; ++d) {
      SandwichRow row;
      row.n = n;
      row.d = d;
      const auto t0 = std::chrono::steady_clock::now();
      if (alpha1) row.lower = gv_sphere_count(g, *alpha1, n, d);
      if (!lp_skip && n <= kMaxKrawtchoukLength) row.upper = finite_alpha_upper(g, n, d);
      try {
        SearchOptions so;
        so.timeout = opts.timeout;
        row.alpha = exact_alpha_power(g, n, d, so, opts.limits);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Timeout && e.code() != ErrorCode::CapExceeded) throw;
        row.note = e.what();
      }
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

}  // namespace graphcap
