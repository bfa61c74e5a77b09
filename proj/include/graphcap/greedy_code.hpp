#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "graphcap/error.hpp"
#include "graphcap/graph.hpp"
#include "graphcap/invariants.hpp"
#include "graphcap/symmetry.hpp"

namespace graphcap {

struct GreedyRun {
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  std::vector<SequenceWord> final_set;
  /// Expected size guaranteed by the counting argument, |V|^n |S^n| / |N[S^n]|.
  double bound_target = 0;
};

struct GreedyOptions {
  std::size_t max_words = std::size_t{1} << 24;
  std::size_t max_automorphisms = 100000;
};

/// Random sequential construction of an independent set in G(n,d).
///
/// Each round draws T, a uniformly random translate of S^n under coordinate-wise
/// base automorphisms composed with a coordinate permutation. Words of T not yet
/// covered join the code, then the closed neighborhood N[T] is marked covered.
/// Translates only ever contain words over O, the Aut(G)-orbit of S, so the
/// set stops changing once every word of O^n is covered; the run ends there
/// or at `max_rounds`.
inline GreedyRun randomized_greedy_code(const Graph& g, std::size_t n, std::size_t d,
                                        const std::vector<Vertex>& s, std::uint64_t seed,
                                        std::size_t max_rounds, const GreedyOptions& opts = {}) {
  if (n < 1 || d > n) fail(ErrorCode::InvalidArgument, "need n >= 1 and 0 <= d <= n");
  if (s.empty()) fail(ErrorCode::InvalidArgument, "seed set S must be nonempty");
  for (Vertex v : s)
    if (v >= g.vertex_count()) fail(ErrorCode::InvalidArgument, "vertex index out of range");
  if (!is_independent_set(g, s)) fail(ErrorCode::NotIndependent, "S is not independent in G");
  const std::size_t q = g.vertex_count();
  const auto total = checked_power(q, n, opts.max_words);
  if (!total) fail(ErrorCode::CapExceeded, "|V|^n exceeds the word budget");

  const auto autos = enumerate_automorphisms(g, opts.max_automorphisms);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_auto(0, autos.size() - 1);

  // S^n as a list of words.
  std::vector<SequenceWord> base_words;
  {
    SequenceWord w(n);
    std::vector<std::size_t> digit(n, 0);
    while (true) {
      for (std::size_t i = 0; i < n; ++i) w[i] = s[digit[i]];
      base_words.push_back(w);
      std::size_t i = n;
      while (i > 0 && ++digit[i - 1] == s.size()) digit[--i] = 0;
      if (i == 0) break;
    }
  }

  GreedyRun run;
  run.seed = seed;
  run.bound_target = gv_sphere_count(g, s.size(), n, d);
  std::vector<bool> covered(*total, false);
  std::vector<std::size_t> chosen;
  std::vector<bool> reachable_symbol(q, false);
  for (const auto& a : autos)
    for (Vertex v : s) reachable_symbol[a[v]] = true;
  const auto orbit_size = static_cast<std::size_t>(std::count(reachable_symbol.begin(), reachable_symbol.end(), true));
  const std::size_t reachable_total = *checked_power(orbit_size, n, *total);
  std::size_t reachable_covered = 0;
  auto mark = [&](std::size_t idx) {
    if (covered[idx]) return;
    covered[idx] = true;
    const SequenceWord w = decode_word(idx, q, n);
    if (std::all_of(w.begin(), w.end(), [&](Vertex v) { return reachable_symbol[v]; })) ++reachable_covered;
  };
  std::vector<std::size_t> perm(n);
  std::vector<const Permutation*> coord_auto(n);
  std::vector<std::size_t> translate;

  for (std::size_t round = 1; round <= max_rounds; ++round) {
    run.iterations = round;
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < n; ++i) coord_auto[i] = &autos[pick_auto(rng)];

    translate.clear();
    SequenceWord image(n);
    for (const auto& w : base_words) {
      for (std::size_t i = 0; i < n; ++i) image[perm[i]] = (*coord_auto[perm[i]])[w[i]];
      translate.push_back(encode_word(image, q));
    }
    // T \ B is taken against the coverage before this round.
    for (std::size_t idx : translate)
      if (!covered[idx]) chosen.push_back(idx);
    for (std::size_t idx : translate) {
      mark(idx);
      for (std::size_t j : close_words(g, decode_word(idx, q, n), d)) mark(j);
    }
    if (reachable_covered == reachable_total) break;
  }

  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  for (std::size_t idx : chosen) run.final_set.push_back(decode_word(idx, q, n));
  for (std::size_t i = 0; i < run.final_set.size(); ++i)
    for (std::size_t j = i + 1; j < run.final_set.size(); ++j)
      if (seq_distance(g, run.final_set[i], run.final_set[j]) <= d)
        fail(ErrorCode::NumericFailure, "internal error: greedy code is not independent");
  return run;
}

}  // namespace graphcap
