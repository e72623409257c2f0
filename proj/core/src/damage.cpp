#include "gridtriage/damage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridtriage {

int round_count(double value, Rounding rounding) {
  switch (rounding) {
    case Rounding::nearest:
      return static_cast<int>(std::llround(value));
    case Rounding::ceil: {
      const double snapped = std::round(value);
      if (std::abs(value - snapped) < 1e-9) {
        return static_cast<int>(snapped);
      }
      return static_cast<int>(std::ceil(value));
    }
  }
  return 0;  // unreachable
}

int damaged_in_class(double probability, int pole_count, Rounding rounding) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw std::invalid_argument("damaged_in_class: probability out of [0, 1]: " +
                                std::to_string(probability));
  }
  if (pole_count < 0) {
    throw std::invalid_argument("damaged_in_class: negative pole count");
  }
  const int damaged = round_count(probability * pole_count, rounding);
  return std::clamp(damaged, 0, pole_count);
}

LineDamage estimate_line_damage(const Network& net, const ClassTable& table,
                                std::span<const ClassDamage> per_class_damage,
                                LineId line, Rounding rounding) {
  const Line& l = net.line(line);

  LineDamage result;
  result.line_id = line;
  result.source = DamageSource::estimated;

  double expected_total = 0.0;
  for (const auto& [cls, on_line] : l.poles_by_class) {
    if (on_line == 0) continue;
    table.by_id(cls);  // classes on a line must exist in the table
    auto record = std::find_if(
        per_class_damage.begin(), per_class_damage.end(),
        [cls = cls](const ClassDamage& d) { return d.class_id == cls; });
    if (record == per_class_damage.end()) {
      throw std::invalid_argument("estimate_line_damage: no class damage for "
                                  "class " + std::to_string(cls) +
                                  " present on line " + std::to_string(line));
    }
    if (record->pole_count == 0) {
      throw EmptyClassOnFeeder(
          "line " + std::to_string(line) + " has poles in class " +
          std::to_string(cls) + " but the feeder class size is 0");
    }
    const double share = static_cast<double>(record->damaged_count) /
                         static_cast<double>(record->pole_count);
    const double expected = share * on_line;
    result.expected_by_class[cls] = expected;
    expected_total += expected;
  }

  const int total = std::clamp(round_count(expected_total, rounding), 0,
                               l.total_poles());
  result.damaged_total = total;

  // Largest-remainder apportionment of the rounded total over the fractional
  // contributions, capped at the line's inventory. Ties go to the lower
  // class id, so the split is deterministic and sums exactly to the total.
  std::vector<std::pair<ClassId, double>> remainders;
  int assigned = 0;
  for (const auto& [cls, expected] : result.expected_by_class) {
    const int cap = l.poles_in_class(cls);
    const int base = std::min(static_cast<int>(std::floor(expected)), cap);
    result.damaged_by_class[cls] = base;
    assigned += base;
    remainders.emplace_back(cls, expected - std::floor(expected));
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  int leftover = total - assigned;
  while (leftover > 0) {
    bool progressed = false;
    for (const auto& [cls, unused] : remainders) {
      if (leftover == 0) break;
      if (result.damaged_by_class[cls] < l.poles_in_class(cls)) {
        ++result.damaged_by_class[cls];
        --leftover;
        progressed = true;
      }
    }
    if (!progressed) break;  // every class at its cap; total was clamped too
  }

  return result;
}

LineDamage ingest_observed_damage(const Network& net, LineId line,
                                  const std::map<ClassId, int>& damaged_by_class) {
  const Line& l = net.line(line);

  LineDamage result;
  result.line_id = line;
  result.source = DamageSource::observed;

  for (const auto& [cls, count] : damaged_by_class) {
    if (count < 0) {
      throw std::invalid_argument("observed damage for line " +
                                  std::to_string(line) + " class " +
                                  std::to_string(cls) + " is negative");
    }
    const int inventory = l.poles_in_class(cls);
    if (count > inventory) {
      throw DamageExceedsInventory(
          "line " + std::to_string(line) + ": " + std::to_string(count) +
          " damaged poles reported in class " + std::to_string(cls) +
          " but the line holds only " + std::to_string(inventory));
    }
    if (count == 0) continue;
    result.damaged_by_class[cls] = count;
    result.expected_by_class[cls] = count;
    result.damaged_total += count;
  }
  return result;
}

double repair_time(const LineDamage& damage, const Line& line,
                   const RepairParams& params) {
  if (!(params.average_pole_repair_h > 0.0)) {
    throw std::invalid_argument("average pole repair time must be positive");
  }
  if (damage.damaged_total == 0) return 0.0;
  return damage.damaged_total * params.average_pole_repair_h +
         line.travel_time_h;
}

double repair_time(const LineDamage& damage, const Line& line,
                   std::span<const double> per_pole_hours) {
  if (static_cast<int>(per_pole_hours.size()) != damage.damaged_total) {
    throw std::invalid_argument(
        "per-pole durations: expected " + std::to_string(damage.damaged_total) +
        " entries, got " + std::to_string(per_pole_hours.size()));
  }
  if (damage.damaged_total == 0) return 0.0;
  const double repair =
      std::accumulate(per_pole_hours.begin(), per_pole_hours.end(), 0.0);
  return repair + line.travel_time_h;
}

}  // namespace gridtriage
