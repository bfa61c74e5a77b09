// graphcap: bounds on the rate-distance tradeoff of truncated graph powers.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "graphcap/graphcap.hpp"

namespace {

using namespace graphcap;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kCap = 3 };

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument: return kUsage;
    case ErrorCode::CapExceeded:
    case ErrorCode::Timeout: return kCap;
    default: return kVerifyFailed;
  }
}

Limits limits_from_env() {
  Limits lim;
  if (const char* env = std::getenv("GRAPHCAP_MAX_VERTICES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (!*env || *end || v == 0) fail(ErrorCode::InvalidArgument, "GRAPHCAP_MAX_VERTICES must be a positive integer");
    lim.max_vertices = static_cast<std::size_t>(v);
  }
  return lim;
}

std::optional<std::chrono::milliseconds> timeout_of(long long ms) {
  if (ms <= 0) return std::nullopt;
  return std::chrono::milliseconds(ms);
}

std::string fmt(double v, int digits = 10) { return format_significant(v, digits); }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

// ---------------------------------------------------------------------------
// info

struct InfoArgs {
  std::string spec;
  long long timeout_ms = 0;
  bool json = false;
};

int cmd_info(const InfoArgs& a) {
  const Limits lim = limits_from_env();
  const Graph g = parse_graph_spec(a.spec, lim);
  SearchOptions so;
  so.timeout = timeout_of(a.timeout_ms);
  nlohmann::json j{{"schema", kJsonSchema}, {"graph", g.label()}};
  std::ostringstream os;
  os << "graph: " << g.label() << "\n";
  os << "vertices: " << g.vertex_count() << "\n";
  os << "edges: " << g.edge_count() << "\n";
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();

  auto guarded = [&](const std::string& name, auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::InvalidArgument) throw;
      os << name << ": unavailable (" << e.what() << ")\n";
      j[name] = nullptr;
    }
  };

  guarded("alpha", [&] {
    const auto r = independence_number(g, so);
    os << "alpha: " << r.size << "\n";
    j["alpha"] = r.size;
    j["alpha_witness"] = r.witness;
  });
  guarded("omega", [&] {
    const auto w = clique_number(g, so);
    os << "omega: " << w << "\n";
    j["omega"] = w;
  });
  guarded("chi", [&] {
    const auto c = chromatic_number(g, so);
    os << "chi: " << c << "\n";
    j["chi"] = c;
  });
  guarded("chi_fractional", [&] {
    const auto c = to_string(fractional_chromatic(g));
    os << "chi_fractional: " << c << "\n";
    j["chi_fractional"] = c;
  });
  guarded("theta_star", [&] {
    const auto t = to_string(fractional_clique_cover(g));
    os << "theta_star: " << t << "\n";
    j["theta_star"] = t;
  });
  os << "caro_wei: " << to_string(caro_wei(g)) << "\n";
  j["caro_wei"] = to_string(caro_wei(g));
  guarded("spectrum", [&] {
    const auto spec = adjacency_spectrum(g);
    os << "spectrum:";
    for (double v : spec) os << ' ' << fmt(v);
    os << "\n";
    j["spectrum"] = spec;
  });
  guarded("theta_L", [&] {
    const SpectralData s = eigenspace_constants(g);
    os << "theta_L: " << fmt(s.theta_L) << "\n";
    os << "q_prime: " << fmt(s.q_prime) << "\n";
    os << "c: " << fmt(s.c_const) << "\n";
    os << "multiplicity_min: " << s.multiplicity_min << "\n";
    j["theta_L"] = s.theta_L;
    j["spectral"] = to_json(s);
  });
  if (g.vertex_count() <= lim.max_automorphism_vertices) {
    const bool vt = is_vertex_transitive(g, lim), et = is_edge_transitive(g, lim);
    os << "vertex_transitive: " << (vt ? "yes" : "no") << "\n";
    os << "edge_transitive: " << (et ? "yes" : "no") << "\n";
    j["vertex_transitive"] = vt;
    j["edge_transitive"] = et;
  }
  std::cout << (a.json ? j.dump(2) + "\n" : os.str());
  return kOk;
}

// ---------------------------------------------------------------------------
// curve and figure presets

struct CurveArgs {
  std::string spec;
  std::string rules = "vt,lp";
  double delta_min = 0, delta_max = 1, step = 0.01;
  std::string log_base = "2";
  std::string format = "csv";
  std::string output;
  bool envelope = false;
};

EnvelopeConfig parse_rules(const std::string& text, const Limits& lim) {
  EnvelopeConfig cfg;
  cfg.vt = cfg.lp = false;
  cfg.powers.clear();
  cfg.limits = lim;
  std::stringstream ss(text);
  std::string rule;
  while (std::getline(ss, rule, ',')) {
    if (rule == "vt") cfg.vt = true;
    else if (rule == "frac") cfg.frac = true;
    else if (rule == "lp") cfg.lp = true;
    else if (rule == "cover") cfg.cover = true;
    else if (rule == "sumclique-gv") cfg.sumclique_gv = true;
    else if (rule == "sumclique-lp") cfg.sumclique_lp = true;
    else if (rule.rfind("power:", 0) == 0) {
      const std::string r = rule.substr(6);
      if (r.empty() || r.find_first_not_of("0123456789") != std::string::npos || std::stoul(r) < 2)
        fail(ErrorCode::InvalidArgument, "power rule needs an integer r >= 2: '" + rule + "'");
      cfg.powers.push_back(std::stoul(r));
    } else if (rule.rfind("homlift:", 0) == 0) {
      cfg.homlift_targets.push_back(parse_graph_spec(rule.substr(8), lim));
    } else {
      fail(ErrorCode::InvalidArgument, "unknown rule '" + rule + "'");
    }
  }
  return cfg;
}

int emit_curve(const Graph& g, const EnvelopeConfig& cfg, const CurveArgs& a) {
  const LogBase base = LogBase::parse(a.log_base);
  const auto grid = delta_grid(a.delta_min, a.delta_max, a.step);
  const Envelope env = best_envelope(g, grid, cfg);
  for (const auto& n : env.notes) std::cerr << "warning: " << n << "\n";
  const RateCurve& curve = a.envelope ? env.best : env.series;
  if (curve.points.empty()) {
    std::cerr << "error: no rule applies to " << g.label() << "\n";
    return kVerifyFailed;
  }
  std::string text;
  if (a.format == "csv") text = to_csv(curve, base);
  else if (a.format == "json") text = to_json(curve, base).dump(2) + "\n";
  else if (a.format == "svg") text = to_svg(curve, base);
  else fail(ErrorCode::InvalidArgument, "format must be csv, json or svg");
  write_output(a.output, text);
  return kOk;
}

int cmd_curve(const CurveArgs& a) {
  const Limits lim = limits_from_env();
  const Graph g = parse_graph_spec(a.spec, lim);
  return emit_curve(g, parse_rules(a.rules, lim), a);
}

struct FigureArgs {
  std::string name;
  int c = 5, a = 2;
  CurveArgs curve;
};

int cmd_figure(FigureArgs f) {
  const Limits lim = limits_from_env();
  if (f.name == "pentagon") {
    f.curve.spec = "C:5";
    f.curve.rules = "vt,power:2,lp";
  } else if (f.name == "k1k2") {
    f.curve.spec = "sum:1xK1+1xK2";
    f.curve.rules = "sumclique-gv,sumclique-lp";
  } else if (f.name == "kneser") {
    f.curve.spec = "kneser:" + std::to_string(f.c) + "," + std::to_string(f.a);
    f.curve.rules = "vt,lp";
  } else {
    fail(ErrorCode::InvalidArgument, "unknown figure '" + f.name + "' (pentagon, k1k2, kneser)");
  }
  const Graph g = parse_graph_spec(f.curve.spec, lim);
  return emit_curve(g, parse_rules(f.curve.rules, lim), f.curve);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string spec;
  std::size_t max_n = 3;
  long long timeout_ms = 0;
};

int cmd_verify(const VerifyArgs& a) {
  const Limits lim = limits_from_env();
  const Graph g = parse_graph_spec(a.spec, lim);
  SandwichOptions opts;
  opts.max_n = a.max_n;
  opts.timeout = timeout_of(a.timeout_ms);
  opts.limits = lim;
  const SandwichReport rep = run_sandwich(g, opts);
  for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
  std::cout << "n\td\tgv_lower\talpha\tlp_upper\tstatus\n";
  auto opt = [](const auto& v) -> std::string {
    if (!v) return "-";
    if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, double>) return fmt(*v, 8);
    else return std::to_string(*v);
  };
  for (const auto& r : rep.rows) {
    std::string status = r.violated() ? "VIOLATED" : (r.alpha ? "ok" : "unresolved: " + r.note);
    std::cout << r.n << '\t' << r.d << '\t' << opt(r.lower) << '\t' << opt(r.alpha) << '\t' << opt(r.upper) << '\t'
              << status << "\n";
  }
  if (rep.violations()) return kVerifyFailed;
  return rep.unresolved() ? kCap : kOk;
}

// ---------------------------------------------------------------------------
// lp and greedy

struct LpArgs {
  std::size_t n = 8, d = 3;
  double q = 2;
};

int cmd_lp(const LpArgs& a) {
  std::cout << to_json(a_lp1(a.n, a.d, a.q)).dump(2) << "\n";
  return kOk;
}

struct GreedyArgs {
  std::string spec;
  std::size_t n = 5, d = 2, rounds = 10000;
  std::uint64_t seed = 1;
  std::vector<Vertex> set{0};
};

int cmd_greedy(const GreedyArgs& a) {
  const Limits lim = limits_from_env();
  const Graph g = parse_graph_spec(a.spec, lim);
  GreedyOptions opts;
  opts.max_words = lim.max_vertices;
  const GreedyRun run = randomized_greedy_code(g, a.n, a.d, a.set, a.seed, a.rounds, opts);
  nlohmann::json j{{"schema", kJsonSchema},
                   {"graph", g.label()},
                   {"n", a.n},
                   {"d", a.d},
                   {"seed", run.seed},
                   {"iterations", run.iterations},
                   {"size", run.final_set.size()},
                   {"bound_target", run.bound_target},
                   {"words", witness_to_json(run.final_set, g.vertex_count())}};
  std::cout << j.dump(2) << "\n";
  return kOk;
}

void add_curve_options(CLI::App* sub, CurveArgs& a, bool with_rules) {
  if (with_rules) sub->add_option("--rules", a.rules, "vt,frac,lp,power:R,cover,homlift:SPEC,sumclique-gv,sumclique-lp");
  sub->add_option("--from", a.delta_min, "smallest delta")->capture_default_str();
  sub->add_option("--to", a.delta_max, "largest delta")->capture_default_str();
  sub->add_option("--step", a.step, "grid step")->capture_default_str();
  sub->add_option("--log-base", a.log_base, "e, 2 or 10")->check(CLI::IsMember({"e", "2", "10"}))->capture_default_str();
  sub->add_option("--format", a.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}))->capture_default_str();
  sub->add_option("-o,--output", a.output, "output file (default stdout)");
  sub->add_flag("--envelope", a.envelope, "only the best lower and upper bound per delta");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds on the rate-distance tradeoff of codes in truncated graph powers"};
  app.require_subcommand(1);

  InfoArgs info;
  auto* s_info = app.add_subcommand("info", "invariants of a graph");
  s_info->add_option("graph", info.spec, "graph spec, e.g. C:5 or kneser:5,2")->required();
  s_info->add_option("--timeout-ms", info.timeout_ms, "budget for each exact search");
  s_info->add_flag("--json", info.json, "JSON output");

  CurveArgs curve;
  auto* s_curve = app.add_subcommand("curve", "rate bounds over a delta grid");
  s_curve->add_option("graph", curve.spec, "graph spec")->required();
  add_curve_options(s_curve, curve, true);

  FigureArgs figure;
  auto* s_fig = app.add_subcommand("figure", "preset curves: pentagon, k1k2, kneser");
  s_fig->add_option("name", figure.name)->required();
  s_fig->add_option("--c", figure.c, "Kneser ground set size")->capture_default_str();
  s_fig->add_option("--a", figure.a, "Kneser subset size")->capture_default_str();
  figure.curve.step = 0.001;
  add_curve_options(s_fig, figure.curve, false);

  VerifyArgs verify;
  auto* s_ver = app.add_subcommand("verify", "check gv <= alpha(G(n,d)) <= LP bound for small n");
  s_ver->add_option("graph", verify.spec, "graph spec")->required();
  s_ver->add_option("--max-n", verify.max_n, "largest length n")->capture_default_str();
  s_ver->add_option("--timeout-ms", verify.timeout_ms, "budget for each exact alpha");

  LpArgs lp;
  auto* s_lp = app.add_subcommand("lp", "solve the Delsarte-type LP and print the certificate");
  s_lp->add_option("--n", lp.n)->required();
  s_lp->add_option("--d", lp.d)->required();
  s_lp->add_option("--q", lp.q, "effective alphabet size q' > 1")->capture_default_str();

  GreedyArgs greedy;
  auto* s_gr = app.add_subcommand("greedy", "randomized greedy code from translates of S^n");
  s_gr->add_option("graph", greedy.spec, "graph spec")->required();
  s_gr->add_option("--n", greedy.n)->capture_default_str();
  s_gr->add_option("--d", greedy.d)->capture_default_str();
  s_gr->add_option("--seed", greedy.seed)->capture_default_str();
  s_gr->add_option("--rounds", greedy.rounds)->capture_default_str();
  s_gr->add_option("--set", greedy.set, "independent set S of the base graph")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*s_info) return cmd_info(info);
    if (*s_curve) return cmd_curve(curve);
    if (*s_fig) return cmd_figure(figure);
    if (*s_ver) return cmd_verify(verify);
    if (*s_lp) return cmd_lp(lp);
    if (*s_gr) return cmd_greedy(greedy);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kUsage;
}
