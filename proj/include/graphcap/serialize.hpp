#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphcap/delsarte.hpp"
#include "graphcap/error.hpp"
#include "graphcap/graph.hpp"
#include "graphcap/rate_bounds.hpp"
#include "graphcap/spectral.hpp"

namespace graphcap {

inline constexpr int kJsonSchema = 1;

/// Logarithm base used when presenting rates; internal values stay in nats.
struct LogBase {
  std::string name = "2";
  double value = 2.0;

  static LogBase parse(const std::string& s) {
    if (s == "e") return {"e", std::exp(1.0)};
    if (s == "2") return {"2", 2.0};
    if (s == "10") return {"10", 10.0};
    fail(ErrorCode::InvalidArgument, "log base must be e, 2 or 10");
  }
  double from_nats(double r) const { return name == "e" ? r : r / std::log(value); }
};

/// printf("%.*g") with the given number of significant digits.
inline std::string format_significant(double v, int digits = 12) {
  if (v == 0) v = 0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

/// CSV with header delta,bound,kind,rate; rows ordered by delta then provenance.
inline std::string to_csv(const RateCurve& curve, const LogBase& base = {}) {
  std::vector<RatePoint> pts = curve.points;
  std::stable_sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
    if (a.delta != b.delta) return a.delta < b.delta;
    if (a.provenance != b.provenance) return a.provenance < b.provenance;
    return a.kind < b.kind;
  });
  std::ostringstream os;
  os << "delta,bound,kind,rate\n";
  for (const auto& p : pts)
    os << format_significant(p.delta) << ',' << p.provenance << ',' << to_string(p.kind) << ','
       << format_significant(base.from_nats(p.rate_nats)) << '\n';
  return os.str();
}

inline nlohmann::json to_json(const RateCurve& curve, const LogBase& base = {}) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : curve.points)
    pts.push_back({{"delta", p.delta},
                   {"bound", p.provenance},
                   {"kind", to_string(p.kind)},
                   {"rate", base.from_nats(p.rate_nats)}});
  return {{"schema", kJsonSchema}, {"graph", curve.graph_label}, {"log_base", base.name}, {"points", pts}};
}

inline nlohmann::json to_json(const SpectralData& s) {
  return {{"schema", kJsonSchema},
          {"eigenvalues", s.eigenvalues},
          {"lambda0", s.lambda0},
          {"lambda_min", s.lambda_min},
          {"theta_L", s.theta_L},
          {"multiplicity_min", s.multiplicity_min},
          {"c", s.c_const},
          {"q_prime", s.q_prime},
          {"q_prime_expressions",
           {s.q_prime_from_multiplicity, s.q_prime_from_spectrum, s.q_prime_from_theta}}};
}

inline nlohmann::json to_json(const LPSolution& lp) {
  nlohmann::json cert = nlohmann::json::array();
  for (auto [x, h] : lp.certificate) cert.push_back({{"x", x}, {"H", h}});
  return {{"schema", kJsonSchema},
          {"n", lp.n},
          {"d", lp.d},
          {"q_prime", lp.q_prime},
          {"objective", lp.objective},
          {"coefficients", lp.coefficients},
          {"certificate", cert},
          {"distance_distribution", lp.distance_distribution},
          {"dual_objective", lp.dual_objective}};
}

/// Word indices (base-|V| positional encoding) of a set of words.
inline nlohmann::json witness_to_json(const std::vector<SequenceWord>& words, std::size_t alphabet) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : words) out.push_back(encode_word(w, alphabet));
  return out;
}

/// Static SVG line plot: one polyline per (provenance, kind) series.
inline std::string to_svg(const RateCurve& curve, const LogBase& base = {}) {
  constexpr double W = 640, H = 420, L = 60, R = 170, T = 30, B = 50;
  std::map<std::pair<std::string, BoundKind>, std::vector<std::pair<double, double>>> series;
  double ymax = 0;
  for (const auto& p : curve.points) {
    const double y = base.from_nats(p.rate_nats);
    series[{p.provenance, p.kind}].emplace_back(p.delta, y);
    ymax = std::max(ymax, y);
  }
  if (ymax <= 0) ymax = 1;
  auto px = [&](double d) { return L + d * (W - L - R); };
  auto py = [&](double r) { return H - B - r / ymax * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << L << "\" y=\"20\" font-size=\"14\">" << curve.graph_label << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double d = i / 4.0, r = ymax * i / 4.0;
    os << "<text x=\"" << px(d) - 8 << "\" y=\"" << H - B + 18 << "\" font-size=\"11\">" << format_significant(d, 3)
       << "</text>\n";
    os << "<text x=\"5\" y=\"" << py(r) + 4 << "\" font-size=\"11\">" << format_significant(r, 3) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" font-size=\"12\">delta</text>\n";
  os << "<text x=\"5\" y=\"" << T - 8 << "\" font-size=\"12\">rate (log base " << base.name << ")</text>\n";
  std::size_t k = 0;
  for (const auto& [key, pts] : series) {
    const char* color = colors[k % (sizeof colors / sizeof *colors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
       << (key.second == BoundKind::Upper ? " stroke-dasharray=\"6,3\"" : "") << " points=\"";
    for (auto [d, r] : pts) os << format_significant(px(d), 6) << ',' << format_significant(py(r), 6) << ' ';
    os << "\"/>\n";
    const double ly = T + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\"/>\n";
    os << "<text x=\"" << W - R + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << key.first << " ("
       << to_string(key.second) << ")</text>\n";
    ++k;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace graphcap
