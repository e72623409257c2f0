#pragma once

#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "gridtriage/errors.hpp"
#include "gridtriage/ids.hpp"

namespace gridtriage {

struct Bus {
  BusId id = 0;
  double load_kw = 0.0;
  double load_factor = 1.0;  // average-to-peak demand ratio, in (0, 1]
  double voll = 0.0;         // value of lost load, currency per kWh-scale unit
};

struct Line {
  LineId id = 0;
  BusId from_bus = 0;  // nearer the slack bus once the network is built
  BusId to_bus = 0;
  FeederId feeder_id;
  double travel_time_h = 0.0;  // crew travel time from the slack bus, [0, 1]
  std::map<ClassId, int> poles_by_class;

  int total_poles() const;
  int poles_in_class(ClassId cls) const;
};

/// Radial distribution network: a forest of feeder trees sharing one slack
/// bus. Immutable after construction, so concurrent reads are safe.
class Network {
 public:
  BusId slack_bus() const { return slack_; }
  std::size_t bus_count() const { return buses_.size(); }
  std::size_t line_count() const { return lines_.size(); }

  bool has_bus(BusId id) const;
  bool has_line(LineId id) const;
  const Bus& bus(BusId id) const;    // throws DanglingReference
  const Line& line(LineId id) const;  // throws UnknownLine

  std::span<const Bus> buses() const { return buses_; }    // sorted by id
  std::span<const Line> lines() const { return lines_; }   // sorted by id
  std::span<const FeederId> feeders() const { return feeders_; }

  /// Lines of one feeder, sorted by id. Feeders partition the line set.
  const std::vector<LineId>& lines_of_feeder(const FeederId& feeder) const;

  /// The line delivering power to `bus` (nullopt for the slack bus).
  std::optional<LineId> line_feeding(BusId bus) const;

  /// The line one step closer to the slack (nullopt for feeder-head lines).
  std::optional<LineId> parent_line(LineId line) const;
  std::span<const LineId> child_lines(LineId line) const;

  /// All lines de-energized when `line` is cut: the subtree below its
  /// receiving bus, excluding the line itself. Sorted by id.
  std::vector<LineId> downstream_lines(LineId line) const;

  /// Line ids ordered parents-before-children (stable across runs).
  std::span<const LineId> topological_lines() const { return topo_; }

  /// For every line, the sum of `per_line` over the line itself and all of
  /// its downstream lines, computed in one bottom-up pass. `per_line` must
  /// cover every line of the network.
  std::unordered_map<LineId, double> subtree_sums(
      const std::unordered_map<LineId, double>& per_line) const;

 private:
  friend Network build_network(std::vector<Bus> buses, std::vector<Line> lines,
                               BusId slack_bus);
  Network() = default;

  std::size_t bus_index(BusId id) const;
  std::size_t line_index(LineId id) const;

  BusId slack_ = 0;
  std::vector<Bus> buses_;
  std::vector<Line> lines_;
  std::unordered_map<BusId, std::size_t> bus_index_;
  std::unordered_map<LineId, std::size_t> line_index_;
  std::unordered_map<BusId, LineId> feed_line_;
  std::vector<std::optional<LineId>> parent_;            // by line index
  std::vector<std::vector<LineId>> children_;            // by line index
  std::vector<LineId> topo_;
  std::vector<FeederId> feeders_;
  std::map<FeederId, std::vector<LineId>> feeder_lines_;
};

/// Validates and orients the network. Lines supplied with from/to reversed
/// are silently re-oriented so that from_bus is nearer the slack; the result
/// is independent of input ordering.
///
/// Throws DuplicateId, DanglingReference, CycleDetected, DisconnectedBus for
/// structural defects and ValidationError for field-range violations
/// (load_factor, travel time, pole counts, feeder consistency).
Network build_network(std::vector<Bus> buses, std::vector<Line> lines,
                      BusId slack_bus);

}  // namespace gridtriage
