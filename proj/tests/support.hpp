#pragma once

// Shared test helpers: toy network builders, seeded random radial networks,
// and brute-force oracles kept independent of the library's tree machinery.

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gridtriage/dataset.hpp"
#include "gridtriage/fragility.hpp"
#include "gridtriage/network.hpp"

namespace gtest_support {

using namespace gridtriage;

inline std::string data_dir() { return GRIDTRIAGE_DATA_DIR; }

inline const Dataset& bundled_dataset() {
  static const Dataset ds =
      load_dataset(std::filesystem::path(data_dir()) / "33bus-3feeders.json");
  return ds;
}

inline Bus make_bus(BusId id, double load_kw = 0.0, double load_factor = 1.0,
                    double voll = 0.0) {
  return Bus{id, load_kw, load_factor, voll};
}

inline Line make_line(LineId id, BusId from, BusId to,
                      const FeederId& feeder = "f", double travel = 0.0,
                      std::map<ClassId, int> poles = {{1, 1}}) {
  Line l;
  l.id = id;
  l.from_bus = from;
  l.to_bus = to;
  l.feeder_id = feeder;
  l.travel_time_h = travel;
  l.poles_by_class = std::move(poles);
  return l;
}

/// The standard fragility table used across tests (four age bands).
inline std::vector<LifetimeClass> reference_classes() {
  return {
      {1, 0.0, 5.0, 0.05, 60.0, 120.0},
      {2, 5.0, 10.0, 0.07, 59.5, 115.0},
      {3, 10.0, 15.0, 0.09, 59.0, 110.0},
      {4, 15.0, 20.0, 0.11, 58.0, 100.0},
  };
}

struct RawNetwork {
  std::vector<Bus> buses;
  std::vector<Line> lines;
  BusId slack = 1;
};

/// Random radial network: `n_lines` lines attached uniformly at random,
/// `n_feeders` subtrees hanging off the slack bus.
inline RawNetwork random_radial(std::mt19937& rng, int n_lines,
                                int n_feeders = 1) {
  RawNetwork net;
  n_feeders = std::min(n_feeders, std::max(1, n_lines));
  net.buses.push_back(make_bus(1));
  std::uniform_real_distribution<double> load(0.0, 500.0);
  std::uniform_real_distribution<double> lf(0.1, 1.0);
  std::uniform_real_distribution<double> travel(0.0, 1.0);

  // bus for line i is i+1; the first n_feeders lines hang off the slack
  std::vector<BusId> attach_points;
  std::vector<FeederId> feeder_of_bus(static_cast<std::size_t>(n_lines) + 2);
  for (int i = 0; i < n_lines; ++i) {
    const BusId bus = i + 2;
    BusId from;
    FeederId feeder;
    if (i < n_feeders) {
      from = 1;
      feeder = "f" + std::to_string(i + 1);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, attach_points.size() - 1);
      from = attach_points[pick(rng)];
      feeder = feeder_of_bus[static_cast<std::size_t>(from)];
    }
    feeder_of_bus[static_cast<std::size_t>(bus)] = feeder;
    attach_points.push_back(bus);
    net.buses.push_back(make_bus(bus, load(rng), lf(rng), 3200.0));
    net.lines.push_back(make_line(i + 2, from, bus, feeder, travel(rng)));
  }
  return net;
}

/// Oracle: downstream set of `line` by deleting the line and checking which
/// lines end up outside the slack's component. Works on the raw edge list.
inline std::vector<LineId> brute_force_downstream(const RawNetwork& raw,
                                                  LineId line) {
  std::map<BusId, std::vector<const Line*>> adjacency;
  for (const Line& l : raw.lines) {
    if (l.id == line) continue;
    adjacency[l.from_bus].push_back(&l);
    adjacency[l.to_bus].push_back(&l);
  }
  std::set<BusId> visited{raw.slack};
  std::deque<BusId> frontier{raw.slack};
  while (!frontier.empty()) {
    const BusId at = frontier.front();
    frontier.pop_front();
    for (const Line* l : adjacency[at]) {
      const BusId other = l->from_bus == at ? l->to_bus : l->from_bus;
      if (visited.insert(other).second) frontier.push_back(other);
    }
  }
  std::vector<LineId> downstream;
  for (const Line& l : raw.lines) {
    if (l.id == line) continue;
    if (!visited.count(l.from_bus) || !visited.count(l.to_bus)) {
      downstream.push_back(l.id);
    }
  }
  std::sort(downstream.begin(), downstream.end());
  return downstream;
}

/// Oracle: sum of per-line values over {line} and its brute-force downstream
/// set, by explicit enumeration.
inline double brute_force_subtree_value(
    const RawNetwork& raw, const std::unordered_map<LineId, double>& values,
    LineId line) {
  double total = values.at(line);
  for (LineId id : brute_force_downstream(raw, line)) total += values.at(id);
  return total;
}

}  // namespace gtest_support
