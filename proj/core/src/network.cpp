#include "gridtriage/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace gridtriage {

namespace {

std::string bus_str(BusId id) { return "bus " + std::to_string(id); }
std::string line_str(LineId id) { return "line " + std::to_string(id); }

void check_bus_fields(const Bus& b) {
  const std::string where = bus_str(b.id) + ": ";
  if (b.id <= 0) throw ValidationError("bus ids must be positive, got " + std::to_string(b.id));
  if (!(b.load_kw >= 0.0) || !std::isfinite(b.load_kw)) {
    throw ValidationError(where + "load_kw must be a finite non-negative number");
  }
  if (!(b.load_factor > 0.0 && b.load_factor <= 1.0)) {
    throw ValidationError(where + "load_factor must be in (0, 1], got " +
                          std::to_string(b.load_factor));
  }
  if (!(b.voll >= 0.0) || !std::isfinite(b.voll)) {
    throw ValidationError(where + "voll must be a finite non-negative number");
  }
}

void check_line_fields(const Line& l) {
  const std::string where = line_str(l.id) + ": ";
  if (l.id <= 0) throw ValidationError("line ids must be positive, got " + std::to_string(l.id));
  if (!(l.travel_time_h >= 0.0 && l.travel_time_h <= 1.0)) {
    throw ValidationError(where + "travel_time_h must be in [0, 1], got " +
                          std::to_string(l.travel_time_h));
  }
  for (const auto& [cls, count] : l.poles_by_class) {
    if (count < 0) {
      throw ValidationError(where + "pole count for class " +
                            std::to_string(cls) + " must be non-negative");
    }
  }
  if (l.total_poles() < 1) {
    throw ValidationError(where + "a line must carry at least one pole");
  }
}

}  // namespace

int Line::total_poles() const {
  int total = 0;
  for (const auto& [cls, count] : poles_by_class) total += count;
  return total;
}

int Line::poles_in_class(ClassId cls) const {
  auto it = poles_by_class.find(cls);
  return it == poles_by_class.end() ? 0 : it->second;
}

bool Network::has_bus(BusId id) const { return bus_index_.count(id) > 0; }
bool Network::has_line(LineId id) const { return line_index_.count(id) > 0; }

std::size_t Network::bus_index(BusId id) const {
  auto it = bus_index_.find(id);
  if (it == bus_index_.end()) {
    throw DanglingReference("unknown " + bus_str(id));
  }
  return it->second;
}

std::size_t Network::line_index(LineId id) const {
  auto it = line_index_.find(id);
  if (it == line_index_.end()) {
    throw UnknownLine("unknown " + line_str(id));
  }
  return it->second;
}

const Bus& Network::bus(BusId id) const { return buses_[bus_index(id)]; }
const Line& Network::line(LineId id) const { return lines_[line_index(id)]; }

const std::vector<LineId>& Network::lines_of_feeder(const FeederId& feeder) const {
  auto it = feeder_lines_.find(feeder);
  if (it == feeder_lines_.end()) {
    throw UnknownFeeder("unknown feeder \"" + feeder + "\"");
  }
  return it->second;
}

std::optional<LineId> Network::line_feeding(BusId bus) const {
  bus_index(bus);  // existence check
  auto it = feed_line_.find(bus);
  if (it == feed_line_.end()) return std::nullopt;
  return it->second;
}

std::optional<LineId> Network::parent_line(LineId line) const {
  return parent_[line_index(line)];
}

std::span<const LineId> Network::child_lines(LineId line) const {
  return children_[line_index(line)];
}

std::vector<LineId> Network::downstream_lines(LineId line) const {
  std::vector<LineId> out;
  std::vector<LineId> stack(children_[line_index(line)].begin(),
                            children_[line_index(line)].end());
  while (!stack.empty()) {
    const LineId current = stack.back();
    stack.pop_back();
    out.push_back(current);
    const auto& kids = children_[line_index_.at(current)];
    stack.insert(stack.end(), kids.begin(), kids.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::unordered_map<LineId, double> Network::subtree_sums(
    const std::unordered_map<LineId, double>& per_line) const {
  if (per_line.size() != lines_.size()) {
    throw std::invalid_argument(
        "subtree_sums: per-line values must cover every line (" +
        std::to_string(per_line.size()) + " given, " +
        std::to_string(lines_.size()) + " lines)");
  }
  std::unordered_map<LineId, double> sums;
  sums.reserve(lines_.size());
  // children first
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    const LineId id = *it;
    auto value = per_line.find(id);
    if (value == per_line.end()) {
      throw std::invalid_argument("subtree_sums: missing value for " +
                                  line_str(id));
    }
    double total = value->second;
    for (LineId child : children_[line_index_.at(id)]) {
      total += sums.at(child);
    }
    sums.emplace(id, total);
  }
  return sums;
}

Network build_network(std::vector<Bus> buses, std::vector<Line> lines,
                      BusId slack_bus) {
  Network net;
  net.slack_ = slack_bus;

  std::sort(buses.begin(), buses.end(),
            [](const Bus& a, const Bus& b) { return a.id < b.id; });
  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return a.id < b.id; });

  for (const Bus& b : buses) {
    check_bus_fields(b);
    if (!net.bus_index_.emplace(b.id, net.buses_.size()).second) {
      throw DuplicateId("duplicate " + bus_str(b.id));
    }
    net.buses_.push_back(b);
  }
  if (net.bus_index_.find(slack_bus) == net.bus_index_.end()) {
    throw DanglingReference("slack " + bus_str(slack_bus) + " does not exist");
  }

  for (const Line& l : lines) {
    check_line_fields(l);
    if (!net.line_index_.emplace(l.id, net.lines_.size()).second) {
      throw DuplicateId("duplicate " + line_str(l.id));
    }
    if (net.bus_index_.find(l.from_bus) == net.bus_index_.end()) {
      throw DanglingReference(line_str(l.id) + " references unknown " +
                              bus_str(l.from_bus));
    }
    if (net.bus_index_.find(l.to_bus) == net.bus_index_.end()) {
      throw DanglingReference(line_str(l.id) + " references unknown " +
                              bus_str(l.to_bus));
    }
    if (l.from_bus == l.to_bus) {
      throw CycleDetected(line_str(l.id) + " connects " + bus_str(l.from_bus) +
                          " to itself");
    }
    net.lines_.push_back(l);
  }

  // Undirected incidence, then orient away from the slack by breadth-first
  // traversal. Deterministic: neighbors are visited in sorted line order.
  std::unordered_map<BusId, std::vector<std::size_t>> incident;
  for (std::size_t i = 0; i < net.lines_.size(); ++i) {
    incident[net.lines_[i].from_bus].push_back(i);
    incident[net.lines_[i].to_bus].push_back(i);
  }

  net.parent_.assign(net.lines_.size(), std::nullopt);
  net.children_.assign(net.lines_.size(), {});
  std::vector<bool> line_visited(net.lines_.size(), false);
  std::unordered_map<BusId, bool> bus_visited;
  bus_visited[slack_bus] = true;

  std::deque<BusId> frontier{slack_bus};
  while (!frontier.empty()) {
    const BusId at = frontier.front();
    frontier.pop_front();
    auto inc = incident.find(at);
    if (inc == incident.end()) continue;
    for (std::size_t li : inc->second) {
      Line& l = net.lines_[li];
      if (line_visited[li]) continue;
      const BusId other = (l.from_bus == at) ? l.to_bus : l.from_bus;
      if (bus_visited.count(other)) {
        throw CycleDetected(line_str(l.id) + " closes a loop between " +
                            bus_str(l.from_bus) + " and " + bus_str(l.to_bus));
      }
      if (l.from_bus != at) {
        std::swap(l.from_bus, l.to_bus);  // re-orient toward the slack
      }
      line_visited[li] = true;
      bus_visited[other] = true;
      net.feed_line_.emplace(other, l.id);
      frontier.push_back(other);
    }
  }

  for (const Bus& b : net.buses_) {
    if (!bus_visited.count(b.id)) {
      throw DisconnectedBus(bus_str(b.id) + " is unreachable from the slack " +
                            bus_str(slack_bus));
    }
  }

  // Parent/child structure over lines, plus feeder consistency: a line
  // inherits its feeder from its parent line; feeder-head lines define it.
  for (std::size_t i = 0; i < net.lines_.size(); ++i) {
    const Line& l = net.lines_[i];
    if (l.from_bus == slack_bus) continue;
    const LineId parent_id = net.feed_line_.at(l.from_bus);
    const std::size_t pi = net.line_index_.at(parent_id);
    net.parent_[i] = parent_id;
    net.children_[pi].push_back(l.id);
    if (net.lines_[pi].feeder_id != l.feeder_id) {
      throw ValidationError(line_str(l.id) + " is labeled feeder \"" +
                            l.feeder_id + "\" but its upstream " +
                            line_str(parent_id) + " belongs to feeder \"" +
                            net.lines_[pi].feeder_id + "\"");
    }
  }
  for (auto& kids : net.children_) std::sort(kids.begin(), kids.end());

  // Topological order: feeder heads first, then down the tree, by line id.
  net.topo_.reserve(net.lines_.size());
  std::deque<LineId> order;
  for (const Line& l : net.lines_) {
    if (l.from_bus == slack_bus) order.push_back(l.id);
  }
  while (!order.empty()) {
    const LineId id = order.front();
    order.pop_front();
    net.topo_.push_back(id);
    for (LineId child : net.children_[net.line_index_.at(id)]) {
      order.push_back(child);
    }
  }

  for (const Line& l : net.lines_) {
    net.feeder_lines_[l.feeder_id].push_back(l.id);
  }
  for (const auto& [feeder, ids] : net.feeder_lines_) {
    net.feeders_.push_back(feeder);
  }
  std::sort(net.feeders_.begin(), net.feeders_.end());

  return net;
}

}  // namespace gridtriage
