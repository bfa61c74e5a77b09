#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphcap/error.hpp"
#include "graphcap/graph.hpp"
#include "graphcap/invariants.hpp"
#include "graphcap/rational.hpp"
#include "graphcap/spectral.hpp"
#include "graphcap/symmetry.hpp"

namespace graphcap {

// ---------------------------------------------------------------------------
// Closed-form rate functions (nats)

namespace detail {

inline void require_alphabet(double q) {
  if (!(q > 1) || !std::isfinite(q)) fail(ErrorCode::InvalidArgument, "alphabet size q must exceed 1");
}

inline void require_unit(double x, const char* what) {
  if (!(x >= 0 && x <= 1)) fail(ErrorCode::InvalidArgument, std::string(what) + " must lie in [0,1]");
}

inline double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

}  // namespace detail

/// H_q(x) = x log(q-1) - x log x - (1-x) log(1-x).
inline double entropy_hq(double q, double x) {
  detail::require_alphabet(q);
  detail::require_unit(x, "entropy argument");
  return x * std::log(q - 1) - detail::xlogx(x) - detail::xlogx(1 - x);
}

inline double plotkin_point(double q) {
  detail::require_alphabet(q);
  return 1 - 1 / q;
}

/// log q - H_q(delta), zero from the Plotkin point on.
inline double r_gv(double q, double delta) {
  detail::require_alphabet(q);
  detail::require_unit(delta, "delta");
  if (delta >= plotkin_point(q)) return 0.0;
  return std::max(0.0, std::log(q) - entropy_hq(q, delta));
}

/// H_q(((q-1) - (q-2) delta - 2 sqrt((q-1) delta (1-delta))) / q), zero from the
/// Plotkin point on. The inner argument is clamped to [0, 1-1/q].
inline double r_lp1(double q, double delta) {
  detail::require_alphabet(q);
  detail::require_unit(delta, "delta");
  const double p = plotkin_point(q);
  if (delta >= p) return 0.0;
  const double inner = ((q - 1) - (q - 2) * delta - 2 * std::sqrt((q - 1) * delta * (1 - delta))) / q;
  return entropy_hq(q, std::clamp(inner, 0.0, p));
}

// ---------------------------------------------------------------------------
// Bound rules

enum class BoundKind { Lower, Upper };

inline std::string to_string(BoundKind k) { return k == BoundKind::Lower ? "lower" : "upper"; }

struct RatePoint {
  double delta = 0;
  double rate_nats = 0;
  BoundKind kind = BoundKind::Lower;
  std::string provenance;
};

/// A bound on R*(G, .) as a function of delta, prepared once per graph.
struct BoundFunction {
  BoundKind kind = BoundKind::Lower;
  std::string provenance;
  std::function<double(double)> rate;

  RatePoint at(double delta) const {
    detail::require_unit(delta, "delta");
    return {delta, rate(delta), kind, provenance};
  }
};

/// Exact rate log|V| of an edgeless graph, as a matching lower/upper pair.
inline std::pair<BoundFunction, BoundFunction> edgeless_rate(const Graph& g) {
  const double r = std::log(static_cast<double>(g.vertex_count()));
  auto f = [r](double) { return r; };
  return {BoundFunction{BoundKind::Lower, "edgeless", f}, BoundFunction{BoundKind::Upper, "edgeless", f}};
}

/// log alpha + R_GV(|V|/alpha, delta) for a vertex-transitive graph.
inline BoundFunction vt_gv_bound(const Graph& g, const Limits& limits = {}) {
  if (g.edge_count() == 0) return edgeless_rate(g).first;
  bool vt;
  try {
    vt = is_vertex_transitive(g, limits);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CapExceeded) throw;
    fail(ErrorCode::Unsupported, g.label() + ": vertex-transitivity cannot be established");
  }
  if (!vt) fail(ErrorCode::Unsupported, g.label() + " is not vertex-transitive");
  SearchOptions opts;
  opts.vertex_transitive = true;
  const double alpha = static_cast<double>(independence_number(g, opts).size);
  const double q = static_cast<double>(g.vertex_count()) / alpha;
  return {BoundKind::Lower, "vt-GV", [alpha, q](double d) { return std::log(alpha) + r_gv(q, d); }};
}

inline RatePoint lower_bound_vt(const Graph& g, double delta) { return vt_gv_bound(g).at(delta); }

/// log(|V|/chi*) + R_GV(chi*, delta) with the exact fractional chromatic number.
inline BoundFunction frac_gv_bound(const Graph& g) {
  if (g.edge_count() == 0) return edgeless_rate(g).first;
  const double chi = to_double(fractional_chromatic(g));
  const double logv = std::log(static_cast<double>(g.vertex_count()));
  return {BoundKind::Lower, "frac-GV", [chi, logv](double d) { return logv - std::log(chi) + r_gv(chi, d); }};
}

inline RatePoint fractional_coloring_bound(const Graph& g, double delta) { return frac_gv_bound(g).at(delta); }

/// log theta_L + R_LP1(q', delta), gated on the eigenspace constants (regular,
/// at least one edge, c constant on edges).
inline BoundFunction lp_converse_bound(const Graph& g, const SpectralOptions& opts = {}) {
  const SpectralData s = eigenspace_constants(g, opts);
  const double theta = s.theta_L, q = s.q_prime;
  return {BoundKind::Upper, "LP-converse", [theta, q](double d) { return std::log(theta) + r_lp1(q, d); }};
}

inline RatePoint upper_bound_lp(const Graph& g, double delta) { return lp_converse_bound(g).at(delta); }

/// log(|V(G)|/|V(H)|) + a lower bound on R*(H), given a homomorphism G -> H.
inline BoundFunction hom_lift_bound(const Graph& g, const Graph& h, const BoundFunction& rate_h,
                                    const std::optional<Homomorphism>& witness = std::nullopt) {
  if (rate_h.kind != BoundKind::Lower)
    fail(ErrorCode::InvalidArgument, "homomorphism lifting needs a lower bound for the target");
  if (witness) {
    if (!is_homomorphism(g, h, *witness))
      fail(ErrorCode::NoHomomorphism, "supplied map is not a homomorphism " + g.label() + " -> " + h.label());
  } else if (!find_homomorphism(g, h)) {
    fail(ErrorCode::NoHomomorphism, "no homomorphism " + g.label() + " -> " + h.label());
  }
  const double shift = std::log(static_cast<double>(g.vertex_count()) / static_cast<double>(h.vertex_count()));
  auto inner = rate_h.rate;
  return {BoundKind::Lower, "hom-lift:" + h.label(), [shift, inner](double d) { return shift + inner(d); }};
}

inline RatePoint hom_lift_bound(const Graph& g, const Graph& h, double delta, const RatePoint& rate_h) {
  if (rate_h.kind != BoundKind::Lower)
    fail(ErrorCode::InvalidArgument, "homomorphism lifting needs a lower bound for the target");
  if (!find_homomorphism(g, h))
    fail(ErrorCode::NoHomomorphism, "no homomorphism " + g.label() + " -> " + h.label());
  const double shift = std::log(static_cast<double>(g.vertex_count()) / static_cast<double>(h.vertex_count()));
  return {delta, shift + rate_h.rate_nats, BoundKind::Lower, "hom-lift:" + h.label()};
}

/// (1/r) R*(G^r, r delta) <= R*(G, delta) <= (1/r) R*(G^r, delta). The lower side
/// is only defined for r delta <= 1.
struct PowerBound {
  std::size_t r = 1;
  std::optional<BoundFunction> lower_r;
  std::optional<BoundFunction> upper_r;

  std::string provenance() const { return "power:r=" + std::to_string(r); }

  std::optional<RatePoint> lower_at(double delta) const {
    if (!lower_r) return std::nullopt;
    const double rd = static_cast<double>(r) * delta;
    if (rd > 1 + 1e-12) return std::nullopt;
    return RatePoint{delta, lower_r->rate(std::min(rd, 1.0)) / static_cast<double>(r), BoundKind::Lower,
                     provenance()};
  }
  std::optional<RatePoint> upper_at(double delta) const {
    if (!upper_r) return std::nullopt;
    return RatePoint{delta, upper_r->rate(delta) / static_cast<double>(r), BoundKind::Upper, provenance()};
  }
};

inline std::pair<std::optional<RatePoint>, std::optional<RatePoint>> power_sandwich(
    std::size_t r, double delta, const std::optional<BoundFunction>& lower_r,
    const std::optional<BoundFunction>& upper_r) {
  if (r < 1) fail(ErrorCode::InvalidArgument, "power r must be at least 1");
  if (!lower_r && !upper_r) fail(ErrorCode::InvalidArgument, "power sandwich needs a bound on G^r");
  PowerBound p{r, lower_r, upper_r};
  return {p.lower_at(delta), p.upper_at(delta)};
}

/// Rules for G^r used by the power sandwich: vt-GV (or frac-GV) below, the LP
/// converse above; either side may be missing.
inline PowerBound power_bound(const Graph& g, std::size_t r, const Limits& limits = {},
                              std::vector<std::string>* notes = nullptr) {
  if (r < 2) fail(ErrorCode::InvalidArgument, "power rule needs r >= 2");
  const Graph gr = strong_power(g, r, limits);
  PowerBound out;
  out.r = r;
  try {
    out.lower_r = vt_gv_bound(gr, limits);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
    out.lower_r = frac_gv_bound(gr);
  }
  try {
    if (gr.edge_count() == 0) out.upper_r = edgeless_rate(gr).second;
    else out.upper_r = lp_converse_bound(gr);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonConstantC && e.code() != ErrorCode::Unsupported) throw;
    if (notes) notes->push_back(out.provenance() + " upper side skipped: " + e.what());
  }
  return out;
}

/// Hypotheses omega = chi = c and theta* omega = |V| checked exactly.
struct CliqueCover {
  std::size_t c = 0;
  std::size_t alpha = 0;
  Rational theta_star;
};

inline CliqueCover clique_cover_hypotheses(const Graph& g) {
  CliqueCover out;
  const std::size_t omega = clique_number(g);
  const std::size_t chi = chromatic_number(g);
  if (omega != chi)
    fail(ErrorCode::Unsupported, g.label() + ": omega = " + std::to_string(omega) + " differs from chi = " +
                                     std::to_string(chi));
  out.theta_star = fractional_clique_cover(g);
  if (out.theta_star * omega != Rational(static_cast<long long>(g.vertex_count())))
    fail(ErrorCode::Unsupported, g.label() + ": theta* omega = " + to_string(out.theta_star * omega) +
                                     " differs from |V|");
  out.c = omega;
  out.alpha = independence_number(g).size;
  return out;
}

/// log alpha + (bound on R*(K_c, delta)); both sides shift by the same amount.
inline std::pair<BoundFunction, BoundFunction> clique_cover_bounds(const Graph& g) {
  const CliqueCover h = clique_cover_hypotheses(g);
  const double la = std::log(static_cast<double>(h.alpha));
  if (h.c == 1) {
    auto f = [la](double) { return la; };
    return {BoundFunction{BoundKind::Lower, "clique-cover", f}, BoundFunction{BoundKind::Upper, "clique-cover", f}};
  }
  const double c = static_cast<double>(h.c);
  return {BoundFunction{BoundKind::Lower, "clique-cover", [la, c](double d) { return la + r_gv(c, d); }},
          BoundFunction{BoundKind::Upper, "clique-cover", [la, c](double d) { return la + r_lp1(c, d); }}};
}

inline std::pair<RatePoint, RatePoint> clique_cover_rate(const Graph& g, double delta) {
  auto [lo, up] = clique_cover_bounds(g);
  return {lo.at(delta), up.at(delta)};
}

// ---------------------------------------------------------------------------
// Sum of cliques a1 K_1 + ac K_c

struct SumCliquePoint {
  RatePoint point;
  double lambda = 0;
};

/// log a1 + max over lambda in [0,1] of H_q(lambda) + lambda R(K_c, delta/lambda),
/// q = ac/a1 + 1. Past delta/lambda = 1 the inner rate is held at its value at 1.
inline SumCliquePoint sum_of_cliques_rate(std::size_t a1, std::size_t c, std::size_t ac, double delta,
                                          const BoundFunction& rate_kc) {
  if (a1 < 1 || ac < 1 || c < 2) fail(ErrorCode::InvalidArgument, "sum of cliques needs a1, ac >= 1 and c >= 2");
  detail::require_unit(delta, "delta");
  const double q = static_cast<double>(ac) / static_cast<double>(a1) + 1;
  auto f = [&](double lambda) {
    if (lambda <= 0) return 0.0;
    const double inner = std::min(1.0, delta / lambda);
    return entropy_hq(q, std::min(lambda, 1.0)) + lambda * rate_kc.rate(inner);
  };
  constexpr double kStep = 1e-3;
  double best_l = 0, best_v = f(0);
  for (std::size_t i = 1; i <= 1000; ++i) {
    const double l = static_cast<double>(i) * kStep;
    const double v = f(l);
    if (v > best_v) {
      best_v = v;
      best_l = l;
    }
  }
  // Golden-section refinement inside the neighbouring grid cells.
  double lo = std::max(0.0, best_l - kStep), hi = std::min(1.0, best_l + kStep);
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double mid = 0.5 * (lo + hi);
  if (f(mid) > best_v) {
    best_v = f(mid);
    best_l = mid;
  }
  const std::string tag = rate_kc.kind == BoundKind::Lower ? "sum-clique-GV" : "sum-clique-LP";
  SumCliquePoint out;
  out.point = {delta, std::log(static_cast<double>(a1)) + best_v, rate_kc.kind, tag};
  out.lambda = best_l;
  return out;
}

/// Component structure a1 K_1 + ac K_c of a graph, if it has that shape.
struct CliqueSumShape {
  std::size_t a1 = 0;
  std::size_t c = 0;
  std::size_t ac = 0;
};

inline std::optional<CliqueSumShape> clique_sum_shape(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> seen(n, false);
  std::map<std::size_t, std::size_t> sizes;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = true;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex w : g.neighbors(comp[i]))
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
    for (Vertex v : comp)
      if (g.degree(v) + 1 != comp.size()) return std::nullopt;
    ++sizes[comp.size()];
  }
  CliqueSumShape out;
  for (auto [size, count] : sizes) {
    if (size == 1) out.a1 = count;
    else if (out.c == 0) {
      out.c = size;
      out.ac = count;
    } else {
      return std::nullopt;
    }
  }
  if (out.a1 == 0 || out.c == 0) return std::nullopt;
  return out;
}

inline BoundFunction sum_of_cliques_bound(const CliqueSumShape& s, BoundKind kind) {
  const double c = static_cast<double>(s.c);
  BoundFunction kc{kind, kind == BoundKind::Lower ? "GV" : "LP1",
                   kind == BoundKind::Lower ? std::function<double(double)>([c](double d) { return r_gv(c, d); })
                                            : std::function<double(double)>([c](double d) { return r_lp1(c, d); })};
  BoundFunction out;
  out.kind = kind;
  out.provenance = kind == BoundKind::Lower ? "sum-clique-GV" : "sum-clique-LP";
  out.rate = [s, kc](double d) { return sum_of_cliques_rate(s.a1, s.c, s.ac, d, kc).point.rate_nats; };
  return out;
}

// ---------------------------------------------------------------------------
// Envelope over a delta grid

struct RateCurve {
  std::string graph_label;
  std::vector<RatePoint> points;
};

struct EnvelopeConfig {
  bool vt = true;
  bool frac = false;
  bool lp = true;
  std::vector<std::size_t> powers{2};
  bool cover = false;
  bool sumclique_gv = false;
  bool sumclique_lp = false;
  std::vector<Graph> homlift_targets;
  Limits limits;
};

struct Envelope {
  RateCurve series;  // every applicable rule at every grid point
  RateCurve best;    // pointwise max lower / min upper, labelled by the winner
  std::vector<std::string> notes;  // rules that were skipped and why
};

inline std::vector<double> delta_grid(double lo, double hi, double step) {
  if (!(lo >= 0 && lo < hi && hi <= 1)) fail(ErrorCode::InvalidArgument, "need 0 <= delta_min < delta_max <= 1");
  if (!(step > 0)) fail(ErrorCode::InvalidArgument, "delta step must be positive");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) out.push_back(std::min(hi, lo + static_cast<double>(i) * step));
  if (hi - out.back() > 1e-12) out.push_back(hi);
  return out;
}

namespace detail {

inline void note_skip(std::vector<std::string>& notes, const std::string& rule, const Error& e) {
  notes.push_back(rule + " skipped: " + e.what());
}

template <class F>
void try_rule(std::vector<std::string>& notes, const std::string& rule, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::ParseError) throw;
    note_skip(notes, rule, e);
  }
}

}  // namespace detail

inline Envelope best_envelope(const Graph& g, const std::vector<double>& grid, const EnvelopeConfig& cfg = {}) {
  Envelope env;
  env.series.graph_label = env.best.graph_label = g.label();
  std::vector<BoundFunction> rules;
  std::vector<PowerBound> powers;

  if (g.edge_count() == 0) {
    auto [lo, up] = edgeless_rate(g);
    rules.push_back(lo);
    rules.push_back(up);
  } else {
    if (cfg.vt) detail::try_rule(env.notes, "vt", [&] { rules.push_back(vt_gv_bound(g, cfg.limits)); });
    if (cfg.frac) detail::try_rule(env.notes, "frac", [&] { rules.push_back(frac_gv_bound(g)); });
    if (cfg.lp) detail::try_rule(env.notes, "lp", [&] { rules.push_back(lp_converse_bound(g)); });
    for (std::size_t r : cfg.powers)
      detail::try_rule(env.notes, "power:" + std::to_string(r),
                       [&] { powers.push_back(power_bound(g, r, cfg.limits, &env.notes)); });
    if (cfg.cover)
      detail::try_rule(env.notes, "cover", [&] {
        auto [lo, up] = clique_cover_bounds(g);
        rules.push_back(lo);
        rules.push_back(up);
      });
    for (const Graph& h : cfg.homlift_targets)
      detail::try_rule(env.notes, "homlift:" + h.label(), [&] {
        BoundFunction target;
        try {
          target = vt_gv_bound(h, cfg.limits);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Unsupported) throw;
          target = frac_gv_bound(h);
        }
        rules.push_back(hom_lift_bound(g, h, target));
      });
    if (cfg.sumclique_gv || cfg.sumclique_lp) {
      const auto shape = clique_sum_shape(g);
      if (!shape) {
        env.notes.push_back("sumclique skipped: " + g.label() + " is not of the form a1 K1 + ac Kc");
      } else {
        if (cfg.sumclique_gv) rules.push_back(sum_of_cliques_bound(*shape, BoundKind::Lower));
        if (cfg.sumclique_lp) rules.push_back(sum_of_cliques_bound(*shape, BoundKind::Upper));
      }
    }
  }

  for (double d : grid) {
    std::vector<RatePoint> here;
    for (const auto& r : rules) here.push_back(r.at(d));
    for (const auto& p : powers) {
      if (auto lo = p.lower_at(d)) here.push_back(*lo);
      if (auto up = p.upper_at(d)) here.push_back(*up);
    }
    std::sort(here.begin(), here.end(), [](const RatePoint& a, const RatePoint& b) {
      return a.provenance != b.provenance ? a.provenance < b.provenance : a.kind < b.kind;
    });
    const RatePoint* lo = nullptr;
    const RatePoint* up = nullptr;
    for (const auto& p : here) {
      if (p.kind == BoundKind::Lower && (!lo || p.rate_nats > lo->rate_nats)) lo = &p;
      if (p.kind == BoundKind::Upper && (!up || p.rate_nats < up->rate_nats)) up = &p;
    }
    if (lo) env.best.points.push_back(*lo);
    if (up) env.best.points.push_back(*up);
    env.series.points.insert(env.series.points.end(), here.begin(), here.end());
  }
  return env;
}

}  // namespace graphcap
