#include "gridtriage/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gridtriage {

namespace {
constexpr double kHoursPerYear = 8760.0;
}

const char* to_string(Mode mode) {
  return mode == Mode::literal ? "literal" : "line-trep";
}

const char* to_string(Tier tier) {
  switch (tier) {
    case Tier::high: return "high";
    case Tier::medium: return "medium";
    case Tier::low: return "low";
  }
  return "low";
}

const char* to_string(Rounding rounding) {
  return rounding == Rounding::nearest ? "nearest" : "ceil";
}

double static_load_value(const Bus& bus) {
  return bus.load_kw * kHoursPerYear * bus.load_factor * bus.voll;
}

double dynamic_load_value(const Bus& bus, double repair_time_h) {
  if (!(repair_time_h >= 0.0)) {
    throw std::invalid_argument("repair time must be non-negative");
  }
  return static_load_value(bus) * repair_time_h;
}

std::unordered_map<LineId, double> line_dynamic_values(
    const Network& net,
    const std::unordered_map<LineId, double>& dynamic_values) {
  return net.subtree_sums(dynamic_values);
}

double line_dynamic_value(const Network& net,
                          const std::unordered_map<LineId, double>& dynamic_values,
                          LineId line) {
  net.line(line);  // throws UnknownLine
  return line_dynamic_values(net, dynamic_values).at(line);
}

double feeder_value(const Network& net,
                    const std::unordered_map<LineId, double>& line_values,
                    const FeederId& feeder) {
  double total = 0.0;
  for (LineId id : net.lines_of_feeder(feeder)) {
    auto it = line_values.find(id);
    if (it == line_values.end()) {
      throw std::invalid_argument("feeder_value: missing line value for line " +
                                  std::to_string(id));
    }
    total += it->second;
  }
  return total;
}

Assessment rank_assessment(
    const Network& net,
    const std::unordered_map<LineId, LineValueRecord>& line_records,
    const std::unordered_map<FeederId, double>& feeder_values,
    const AssessmentMeta& meta) {
  Assessment assessment;
  assessment.meta = meta;

  for (const FeederId& feeder : net.feeders()) {
    auto it = feeder_values.find(feeder);
    FeederValuation fv;
    fv.feeder_id = feeder;
    fv.value = (it == feeder_values.end()) ? 0.0 : it->second;
    assessment.feeders.push_back(std::move(fv));
  }
  std::sort(assessment.feeders.begin(), assessment.feeders.end(),
            [](const FeederValuation& a, const FeederValuation& b) {
              if (a.value != b.value) return a.value > b.value;
              return a.feeder_id < b.feeder_id;
            });
  for (std::size_t i = 0; i < assessment.feeders.size(); ++i) {
    assessment.feeders[i].rank = static_cast<int>(i + 1);
  }

  for (const FeederValuation& fv : assessment.feeders) {
    std::vector<LineValuation> block;
    for (LineId id : net.lines_of_feeder(fv.feeder_id)) {
      auto rec = line_records.find(id);
      if (rec == line_records.end()) {
        throw std::invalid_argument("rank_assessment: missing record for line " +
                                    std::to_string(id));
      }
      LineValuation lv;
      lv.line_id = id;
      lv.feeder_id = fv.feeder_id;
      lv.damaged_poles = rec->second.damaged_poles;
      lv.repair_time_h = rec->second.repair_time_h;
      lv.static_value = rec->second.static_value;
      lv.dynamic_value = rec->second.dynamic_value;
      lv.line_value = rec->second.line_value;
      block.push_back(std::move(lv));
    }
    std::sort(block.begin(), block.end(),
              [](const LineValuation& a, const LineValuation& b) {
                if (a.line_value != b.line_value) return a.line_value > b.line_value;
                if (a.repair_time_h != b.repair_time_h) {
                  return a.repair_time_h < b.repair_time_h;
                }
                return a.line_id < b.line_id;
              });

    // Contiguous thirds: high takes ceil(N/3), medium half of the rest.
    // A line without any outage value never deserves attention, so zero
    // values drop to the low tier no matter where they sit.
    const std::size_t n = block.size();
    const std::size_t high = (n + 2) / 3;
    const std::size_t medium = (n - high + 1) / 2;
    for (std::size_t i = 0; i < n; ++i) {
      block[i].rank = static_cast<int>(i + 1);
      if (block[i].line_value == 0.0) {
        block[i].tier = Tier::low;
      } else if (i < high) {
        block[i].tier = Tier::high;
      } else if (i < high + medium) {
        block[i].tier = Tier::medium;
      } else {
        block[i].tier = Tier::low;
      }
    }
    assessment.lines.insert(assessment.lines.end(), block.begin(), block.end());
  }

  return assessment;
}

}  // namespace gridtriage
