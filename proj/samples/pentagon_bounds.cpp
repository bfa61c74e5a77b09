// Lower and upper rate bounds for the pentagon, printed in bits.
#include <cmath>
#include <cstdio>

#include "graphcap/graphcap.hpp"

int main() {
  using namespace graphcap;
  const Graph c5 = make_cycle(5);
  EnvelopeConfig cfg;  // vt-GV, power:r=2 and the LP converse
  const Envelope env = best_envelope(c5, delta_grid(0.0, 1.0, 0.05), cfg);
  for (const auto& note : env.notes) std::printf("note: %s\n", note.c_str());
  std::printf("%-6s %-14s %-10s %-14s %-10s\n", "delta", "lower", "", "upper", "");
  for (std::size_t i = 0; i + 1 < env.best.points.size(); i += 2) {
    const RatePoint& lo = env.best.points[i];
    const RatePoint& up = env.best.points[i + 1];
    std::printf("%-6.2f %-14s %-10.6f %-14s %-10.6f\n", lo.delta, lo.provenance.c_str(), lo.rate_nats / std::log(2.0),
                up.provenance.c_str(), up.rate_nats / std::log(2.0));
  }
}
