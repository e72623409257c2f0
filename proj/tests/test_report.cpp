#include <sstream>

#include "doctest.h"
#include "gridtriage/report.hpp"
#include "support.hpp"

using namespace gridtriage;
using namespace gtest_support;

namespace {

Assessment bundled_assessment(Mode mode = Mode::literal) {
  ScenarioConfig config;
  config.v_real = 80.0;
  config.use_observed = true;
  config.mode = mode;
  return run_assessment(bundled_dataset(), config);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("ranking CSV layout") {
  const Assessment a = bundled_assessment();
  std::stringstream out;
  write_ranking(a, out, RankingFormat::csv);
  const auto lines = split_lines(out.str());

  REQUIRE(lines.size() == 100);  // header + 99 lines
  CHECK(lines[0] ==
        "line_id,feeder_id,damaged_poles,t_rep_h,v_dyn,v_line_dyn,rank,tier");
  // rows are grouped by feeder rank (1, 3, 2) and ordered by rank inside
  CHECK(lines[1].find(",1,") != std::string::npos);
  CHECK(lines[1].substr(lines[1].size() - 7) == ",1,high");
  CHECK(lines[34].find(",3,") != std::string::npos);

  SUBCASE("re-parsing reproduces the ranks exactly") {
    for (std::size_t i = 1; i < lines.size(); ++i) {
      std::stringstream row(lines[i]);
      std::string field;
      std::vector<std::string> fields;
      while (std::getline(row, field, ',')) fields.push_back(field);
      REQUIRE(fields.size() == 8);
      const LineId id = std::stoll(fields[0]);
      const auto it = std::find_if(a.lines.begin(), a.lines.end(),
                                   [id](const LineValuation& lv) {
                                     return lv.line_id == id;
                                   });
      REQUIRE(it != a.lines.end());
      CHECK(std::stoi(fields[6]) == it->rank);
      CHECK(fields[7] == to_string(it->tier));
      CHECK(std::stod(fields[5]) == it->line_value);  // full precision
    }
  }
}

TEST_CASE("ranking export is byte-identical across runs") {
  std::stringstream first, second;
  write_ranking(bundled_assessment(), first, RankingFormat::csv);
  write_ranking(bundled_assessment(), second, RankingFormat::csv);
  CHECK(first.str() == second.str());

  std::stringstream json1, json2;
  write_ranking(bundled_assessment(), json1, RankingFormat::json);
  write_ranking(bundled_assessment(), json2, RankingFormat::json);
  CHECK(json1.str() == json2.str());
}

TEST_CASE("empty assessment yields only the header") {
  Assessment empty;
  std::stringstream out;
  write_ranking(empty, out, RankingFormat::csv);
  CHECK(out.str() ==
        "line_id,feeder_id,damaged_poles,t_rep_h,v_dyn,v_line_dyn,rank,tier\n");
}

TEST_CASE("heat map DOT structure") {
  const Network& net = bundled_dataset().network;
  const Assessment a = bundled_assessment();
  std::stringstream out;
  write_heatmap_dot(a, net, out);
  const std::string dot = out.str();
  const auto lines = split_lines(dot);

  CHECK(lines.front() == "digraph network {");
  CHECK(lines.back() == "}");

  int nodes = 0, edges = 0, red = 0, orange = 0, green = 0;
  for (const auto& line : lines) {
    if (line.find("->") != std::string::npos) {
      ++edges;
      if (line.find("color=red") != std::string::npos) ++red;
      if (line.find("color=orange") != std::string::npos) ++orange;
      if (line.find("color=green") != std::string::npos) ++green;
    } else if (line.size() > 2 && line.find(';') != std::string::npos &&
               line.find('=') == std::string::npos) {
      ++nodes;  // bare node statements
    }
  }
  CHECK(edges == 99);
  CHECK(nodes + 1 == 100);  // slack node carries a shape attribute
  // every feeder splits 11/11/11, so the whole graph splits 33/33/33
  CHECK(red == 33);
  CHECK(orange == 33);
  CHECK(green == 33);
  CHECK(dot.find("[shape=box]") != std::string::npos);
  CHECK(dot.find("label=\"1\"") != std::string::npos);
}

TEST_CASE("single-feeder heat map counts 34 nodes and 33 edges") {
  const Dataset& ds = bundled_dataset();
  std::vector<Bus> buses{make_bus(1)};
  std::vector<Line> lines;
  for (const Bus& b : ds.network.buses()) {
    if (b.id >= 101 && b.id <= 133) buses.push_back(b);
  }
  for (const Line& l : ds.network.lines()) {
    if (l.feeder_id == "1") lines.push_back(l);
  }
  const Network feeder = build_network(buses, lines, 1);
  ClassTable table = validate_class_table(reference_classes());
  std::vector<ObservedDamage> observed;
  for (const ObservedDamage& od : ds.observed_damage) {
    if (od.line >= 101 && od.line <= 133) observed.push_back(od);
  }
  Dataset single{"feeder1", {}, std::move(table), feeder, std::move(observed)};

  ScenarioConfig config;
  config.use_observed = true;
  const Assessment a = run_assessment(single, config);
  std::stringstream out;
  write_heatmap_dot(a, feeder, out);
  const auto dot_lines = split_lines(out.str());
  int nodes = 0, edges = 0;
  for (const auto& line : dot_lines) {
    if (line.find("->") != std::string::npos) {
      ++edges;
    } else if (line.find(';') != std::string::npos &&
               line.find("rankdir") == std::string::npos) {
      ++nodes;
    }
  }
  CHECK(nodes == 34);
  CHECK(edges == 33);
}

TEST_CASE("an undamaged network renders entirely green") {
  const Dataset& ds = bundled_dataset();
  std::vector<ObservedDamage> intact;
  Dataset calm{ds.name, ds.notes, ds.classes, ds.network, {}};
  // observed source with zero-damage records for every line
  for (const Line& l : ds.network.lines()) {
    intact.push_back(ObservedDamage{l.id, {}});
  }
  calm.observed_damage = std::move(intact);

  ScenarioConfig config;
  config.use_observed = true;
  const Assessment a = run_assessment(calm, config);
  for (const auto& lv : a.lines) {
    CHECK(lv.line_value == 0.0);
    CHECK(lv.tier == Tier::low);
  }
  std::stringstream out;
  write_heatmap_dot(a, ds.network, out);
  CHECK(out.str().find("color=red") == std::string::npos);
  CHECK(out.str().find("color=orange") == std::string::npos);
}

TEST_CASE("sweep CSV layout and determinism") {
  const auto rows = wind_sweep(bundled_dataset(), 0.0, 130.0, 5.0);
  std::stringstream out;
  write_sweep_csv(rows, out);
  const auto lines = split_lines(out.str());
  REQUIRE(lines.size() == 28);  // header + 27 rows
  CHECK(lines[0] ==
        "v,f1_class1,f1_class2,f1_class3,f1_class4,f1_total,"
        "f2_class1,f2_class2,f2_class3,f2_class4,f2_total,"
        "f3_class1,f3_class2,f3_class3,f3_class4,f3_total,total");
  CHECK(lines[17] == "80,6,44,46,12,108,7,35,51,12,105,6,38,49,9,102,315");
  CHECK(lines[26] == "125,15,106,98,21,240,18,85,110,20,233,17,93,105,15,230,703");

  std::stringstream again;
  write_sweep_csv(wind_sweep(bundled_dataset(), 0.0, 130.0, 5.0), again);
  CHECK(again.str() == out.str());
}
