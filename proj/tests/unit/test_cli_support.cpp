#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "graphcap/graph_spec.hpp"
#include "graphcap/serialize.hpp"

using namespace graphcap;

namespace {

std::string parse_error(const std::string& spec) {
  try {
    parse_graph_spec(spec);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError) << spec;
    return e.what();
  }
  ADD_FAILURE() << "accepted " << spec;
  return {};
}

RateCurve sample_curve() {
  RateCurve c;
  c.graph_label = "C:5";
  c.points = {{0.1, 0.5, BoundKind::Upper, "LP-converse"},
              {0.0, std::log(5.0), BoundKind::Lower, "vt-GV"},
              {0.1, 0.4, BoundKind::Lower, "vt-GV"},
              {0.0, std::log(5.0), BoundKind::Upper, "LP-converse"}};
  return c;
}

}  // namespace

TEST(GraphSpec, Families) {
  EXPECT_EQ(parse_graph_spec("K:4"), make_complete(4));
  EXPECT_EQ(parse_graph_spec("C:5"), make_cycle(5));
  EXPECT_EQ(parse_graph_spec("P:3"), make_path(3));
  EXPECT_EQ(parse_graph_spec("kneser:5,2"), make_kneser(5, 2));
  EXPECT_EQ(parse_graph_spec("sum:1xK1+1xK2"), make_clique_sum({{1, 1}, {1, 2}}));
  EXPECT_EQ(parse_graph_spec("pow:C:5,2"), strong_power(make_cycle(5), 2));
  EXPECT_EQ(parse_graph_spec("trunc:K:2,5,2"), power_graph(make_complete(2), 5, 2));
  EXPECT_EQ(parse_graph_spec("pow:kneser:5,2,1"), make_kneser(5, 2));
  EXPECT_EQ(parse_graph_spec("C:5").label(), "C:5");
  EXPECT_EQ(parse_graph_spec("pow:C:5,2").label(), "pow:C:5,2");
}

TEST(GraphSpec, ErrorsCarryColumns) {
  EXPECT_NE(parse_error("K:x").find("column 3"), std::string::npos);
  EXPECT_NE(parse_error("Q:3").find("column 1"), std::string::npos);
  EXPECT_NE(parse_error("kneser:5").find("column 9"), std::string::npos);
  EXPECT_NE(parse_error("C:5x").find("column 4"), std::string::npos);
  EXPECT_NE(parse_error("sum:1xK1+2K3").find("column 10"), std::string::npos);
  EXPECT_NE(parse_error("trunc:K:2,3,4").find("column 13"), std::string::npos);
  parse_error("C:0");
  parse_error("kneser:2,3");
  parse_error("");
}

TEST(GraphSpec, Caps) {
  Limits small;
  small.max_vertices = 50;
  try {
    parse_graph_spec("pow:C:5,3", small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
  }
}

TEST(GraphSpec, EdgeListFile) {
  const std::string path = ::testing::TempDir() + "graphcap_petersen.txt";
  {
    std::ofstream out(path);
    out << to_edge_list(make_kneser(5, 2));
  }
  EXPECT_EQ(parse_graph_spec("file:" + path), make_kneser(5, 2));
  std::remove(path.c_str());
  try {
    parse_graph_spec("file:/nonexistent/graph");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(Serialize, LogBase) {
  EXPECT_NEAR(LogBase::parse("2").from_nats(std::log(8.0)), 3.0, 1e-15);
  EXPECT_NEAR(LogBase::parse("10").from_nats(std::log(100.0)), 2.0, 1e-15);
  EXPECT_EQ(LogBase::parse("e").from_nats(1.25), 1.25);
  EXPECT_THROW(LogBase::parse("3"), Error);
}

TEST(Serialize, CsvFormat) {
  const std::string csv = to_csv(sample_curve());
  EXPECT_EQ(csv,
            "delta,bound,kind,rate\n"
            "0,LP-converse,upper,2.32192809489\n"
            "0,vt-GV,lower,2.32192809489\n"
            "0.1,LP-converse,upper,0.721347520444\n"
            "0.1,vt-GV,lower,0.577078016356\n");
  EXPECT_EQ(format_significant(-0.0), "0");
  EXPECT_EQ(format_significant(1.0 / 3), "0.333333333333");
}

TEST(Serialize, CsvRoundTrip) {
  const RateCurve c = sample_curve();
  std::istringstream in(to_csv(c, LogBase::parse("e")));
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string delta, bound, kind, rate;
    std::getline(ls, delta, ',');
    std::getline(ls, bound, ',');
    std::getline(ls, kind, ',');
    std::getline(ls, rate, ',');
    bool found = false;
    for (const auto& p : c.points)
      if (std::abs(p.delta - std::stod(delta)) < 1e-12 && p.provenance == bound && to_string(p.kind) == kind) {
        EXPECT_NEAR(std::stod(rate), p.rate_nats, 1e-11 * std::max(1.0, p.rate_nats));
        found = true;
      }
    EXPECT_TRUE(found) << line;
    ++rows;
  }
  EXPECT_EQ(rows, c.points.size());
}

TEST(Serialize, JsonRoundTrip) {
  const RateCurve c = sample_curve();
  const auto j = nlohmann::json::parse(to_json(c, LogBase::parse("e")).dump());
  EXPECT_EQ(j["schema"], kJsonSchema);
  EXPECT_EQ(j["graph"], "C:5");
  ASSERT_EQ(j["points"].size(), c.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    EXPECT_EQ(j["points"][i]["delta"].get<double>(), c.points[i].delta);
    EXPECT_EQ(j["points"][i]["rate"].get<double>(), c.points[i].rate_nats);
    EXPECT_EQ(j["points"][i]["bound"], c.points[i].provenance);
    EXPECT_EQ(j["points"][i]["kind"], to_string(c.points[i].kind));
  }
}

TEST(Serialize, SpectralAndLpJson) {
  const auto s = to_json(eigenspace_constants(make_cycle(5)));
  EXPECT_EQ(s["multiplicity_min"], 2);
  EXPECT_NEAR(s["theta_L"].get<double>(), std::sqrt(5.0), 1e-9);
  const auto lp = a_lp1(5, 3, 2);
  const auto j = nlohmann::json::parse(to_json(lp).dump());
  EXPECT_EQ(j["coefficients"].get<std::vector<double>>(), lp.coefficients);
  EXPECT_EQ(j["certificate"].size(), 3u);
  EXPECT_EQ(j["objective"].get<double>(), lp.objective);
}

TEST(Serialize, WitnessIndices) {
  const auto j = witness_to_json({{0, 0, 0}, {1, 1, 1}}, 2);
  EXPECT_EQ(j, nlohmann::json::parse("[0, 7]"));
}

TEST(Serialize, SvgHasOneSeriesPerRule) {
  const std::string svg = to_svg(sample_curve());
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  std::size_t lines = 0;
  for (std::size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++lines;
  EXPECT_EQ(lines, 2u);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(svg.find("vt-GV"), std::string::npos);
}
