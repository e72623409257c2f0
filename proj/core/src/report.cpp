#include "gridtriage/report.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <string>

#include "json.hpp"

namespace gridtriage {

namespace {

/// Shortest decimal form that parses back to the same double.
std::string number(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

const char* color_of(Tier tier) {
  switch (tier) {
    case Tier::high: return "red";
    case Tier::medium: return "orange";
    case Tier::low: return "green";
  }
  return "green";
}

template <typename WriteFn>
void export_to_file(const std::filesystem::path& path, WriteFn&& write) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write(out);
  out.flush();
  if (!out) throw IoError("failed while writing " + path.string());
}

void write_ranking_csv(const Assessment& assessment, std::ostream& out) {
  out << "line_id,feeder_id,damaged_poles,t_rep_h,v_dyn,v_line_dyn,rank,tier\n";
  for (const LineValuation& lv : assessment.lines) {
    out << lv.line_id << ',' << lv.feeder_id << ',' << lv.damaged_poles << ','
        << number(lv.repair_time_h) << ',' << number(lv.dynamic_value) << ','
        << number(lv.line_value) << ',' << lv.rank << ',' << to_string(lv.tier)
        << '\n';
  }
}

void write_ranking_json(const Assessment& assessment, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["scenario"] = {
      {"v_real", assessment.meta.v_real},
      {"rounding", to_string(assessment.meta.rounding)},
      {"mode", to_string(assessment.meta.mode)},
      {"t_rep_av_h", assessment.meta.average_pole_repair_h},
      {"damage_source", assessment.meta.damage_source == DamageSource::observed
                            ? "observed"
                            : "estimated"},
  };
  auto feeders = nlohmann::ordered_json::array();
  for (const FeederValuation& fv : assessment.feeders) {
    feeders.push_back({{"feeder_id", fv.feeder_id},
                       {"w_f", fv.value},
                       {"rank", fv.rank}});
  }
  doc["feeders"] = std::move(feeders);
  auto lines = nlohmann::ordered_json::array();
  for (const LineValuation& lv : assessment.lines) {
    lines.push_back({{"line_id", lv.line_id},
                     {"feeder_id", lv.feeder_id},
                     {"damaged_poles", lv.damaged_poles},
                     {"t_rep_h", lv.repair_time_h},
                     {"v_dyn", lv.dynamic_value},
                     {"v_line_dyn", lv.line_value},
                     {"rank", lv.rank},
                     {"tier", to_string(lv.tier)}});
  }
  doc["lines"] = std::move(lines);
  out << doc.dump(2) << '\n';
}

}  // namespace

void write_ranking(const Assessment& assessment, std::ostream& out,
                   RankingFormat format) {
  if (format == RankingFormat::csv) {
    write_ranking_csv(assessment, out);
  } else {
    write_ranking_json(assessment, out);
  }
}

void export_ranking(const Assessment& assessment,
                    const std::filesystem::path& path, RankingFormat format) {
  export_to_file(path, [&](std::ostream& out) {
    write_ranking(assessment, out, format);
  });
}

void write_heatmap_dot(const Assessment& assessment, const Network& net,
                       std::ostream& out) {
  std::map<LineId, const LineValuation*> by_line;
  for (const LineValuation& lv : assessment.lines) {
    by_line.emplace(lv.line_id, &lv);
  }

  out << "digraph network {\n";
  out << "  rankdir=LR;\n";
  out << "  " << net.slack_bus() << " [shape=box];\n";
  for (const Bus& b : net.buses()) {
    if (b.id == net.slack_bus()) continue;
    out << "  " << b.id << ";\n";
  }
  for (const Line& l : net.lines()) {
    auto it = by_line.find(l.id);
    if (it == by_line.end()) {
      throw std::invalid_argument("assessment does not cover line " +
                                  std::to_string(l.id));
    }
    out << "  " << l.from_bus << " -> " << l.to_bus << " [color="
        << color_of(it->second->tier) << ", label=\"" << it->second->rank
        << "\"];\n";
  }
  out << "}\n";
}

void export_heatmap(const Assessment& assessment, const Network& net,
                    const std::filesystem::path& path) {
  export_to_file(path, [&](std::ostream& out) {
    write_heatmap_dot(assessment, net, out);
  });
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  if (rows.empty()) {
    out << "v\n";
    return;
  }
  out << 'v';
  for (const auto& [feeder, per_class] : rows.front().damaged) {
    for (const auto& [cls, unused] : per_class) {
      out << ",f" << feeder << "_class" << cls;
    }
    out << ",f" << feeder << "_total";
  }
  out << ",total\n";
  for (const SweepRow& row : rows) {
    out << number(row.v_real);
    for (const auto& [feeder, per_class] : row.damaged) {
      for (const auto& [cls, count] : per_class) {
        out << ',' << count;
      }
      out << ',' << row.feeder_totals.at(feeder);
    }
    out << ',' << row.total << '\n';
  }
}

void export_sweep(const std::vector<SweepRow>& rows,
                  const std::filesystem::path& path) {
  export_to_file(path, [&](std::ostream& out) {
    write_sweep_csv(rows, out);
  });
}

}  // namespace gridtriage
