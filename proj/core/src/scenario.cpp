#include "gridtriage/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace gridtriage {

namespace {

void check_config(const ScenarioConfig& config) {
  if (!(config.v_real >= 0.0) || !std::isfinite(config.v_real)) {
    throw ValidationError("scenario wind speed must be a finite value >= 0");
  }
  if (!(config.average_pole_repair_h > 0.0)) {
    throw ValidationError("average pole repair time must be positive");
  }
}

}  // namespace

int FeederClassDamage::total() const {
  int sum = 0;
  for (const ClassDamage& d : classes) sum += d.damaged_count;
  return sum;
}

std::vector<FeederClassDamage> class_damage_stage(const Dataset& dataset,
                                                  double v_real,
                                                  Rounding rounding) {
  if (!(v_real >= 0.0) || !std::isfinite(v_real)) {
    throw ValidationError("scenario wind speed must be a finite value >= 0");
  }
  const auto class_sizes = dataset.feeder_class_poles();

  std::vector<FeederClassDamage> result;
  for (const FeederId& feeder : dataset.network.feeders()) {
    FeederClassDamage fcd;
    fcd.feeder = feeder;
    const auto& sizes = class_sizes.at(feeder);
    for (const LifetimeClass& cls : dataset.classes.classes()) {
      ClassDamage damage;
      damage.class_id = cls.id;
      damage.probability = failure_probability(cls, v_real);
      damage.pole_count = sizes.at(cls.id);
      damage.damaged_count =
          damaged_in_class(damage.probability, damage.pole_count, rounding);
      fcd.classes.push_back(damage);
    }
    result.push_back(std::move(fcd));
  }
  return result;
}

std::map<LineId, LineDamage> line_damage_stage(const Dataset& dataset,
                                               const ScenarioConfig& config) {
  check_config(config);
  std::map<LineId, LineDamage> damage;

  if (config.use_observed) {
    if (!dataset.has_observed()) {
      throw ValidationError(
          "observed damage requested but the dataset has no records");
    }
    for (const ObservedDamage& od : dataset.observed_damage) {
      damage.emplace(od.line,
                     ingest_observed_damage(dataset.network, od.line, od.by_class));
    }
    for (const Line& l : dataset.network.lines()) {
      if (!damage.count(l.id)) {
        LineDamage intact;
        intact.line_id = l.id;
        intact.source = DamageSource::observed;
        damage.emplace(l.id, std::move(intact));
      }
    }
  } else {
    const auto stage = class_damage_stage(dataset, config.v_real, config.rounding);
    std::map<FeederId, std::span<const ClassDamage>> by_feeder;
    for (const FeederClassDamage& fcd : stage) {
      by_feeder.emplace(fcd.feeder, fcd.classes);
    }
    for (const Line& l : dataset.network.lines()) {
      damage.emplace(l.id,
                     estimate_line_damage(dataset.network, dataset.classes,
                                          by_feeder.at(l.feeder_id), l.id,
                                          config.rounding));
    }
  }

  const RepairParams params{config.average_pole_repair_h};
  for (auto& [id, d] : damage) {
    d.repair_time_h = repair_time(d, dataset.network.line(id), params);
  }
  return damage;
}

Assessment run_assessment(const Dataset& dataset, const ScenarioConfig& config) {
  check_config(config);
  const Network& net = dataset.network;

  const auto damage = line_damage_stage(dataset, config);

  std::unordered_map<LineId, double> static_values;
  std::unordered_map<LineId, double> dynamic_values;
  for (const Line& l : net.lines()) {
    const Bus& bus = net.bus(l.to_bus);
    const double repair_h = damage.at(l.id).repair_time_h;
    static_values.emplace(l.id, static_load_value(bus));
    dynamic_values.emplace(l.id, dynamic_load_value(bus, repair_h));
  }

  std::unordered_map<LineId, double> line_values;
  if (config.mode == Mode::literal) {
    line_values = line_dynamic_values(net, dynamic_values);
  } else {
    // line-trep: the line's own outage duration applied to every load its
    // cut disconnects.
    const auto static_below = net.subtree_sums(static_values);
    for (const Line& l : net.lines()) {
      line_values.emplace(
          l.id, damage.at(l.id).repair_time_h * static_below.at(l.id));
    }
  }

  std::unordered_map<FeederId, double> feeder_values;
  for (const FeederId& feeder : net.feeders()) {
    feeder_values.emplace(feeder, feeder_value(net, line_values, feeder));
  }

  std::unordered_map<LineId, LineValueRecord> records;
  for (const Line& l : net.lines()) {
    LineValueRecord rec;
    rec.static_value = static_values.at(l.id);
    rec.dynamic_value = dynamic_values.at(l.id);
    rec.line_value = line_values.at(l.id);
    rec.repair_time_h = damage.at(l.id).repair_time_h;
    rec.damaged_poles = damage.at(l.id).damaged_total;
    records.emplace(l.id, rec);
  }

  AssessmentMeta meta;
  meta.v_real = config.v_real;
  meta.rounding = config.rounding;
  meta.mode = config.mode;
  meta.average_pole_repair_h = config.average_pole_repair_h;
  meta.damage_source =
      config.use_observed ? DamageSource::observed : DamageSource::estimated;

  return rank_assessment(net, records, feeder_values, meta);
}

std::vector<SweepRow> wind_sweep(const Dataset& dataset, double v_min,
                                 double v_max, double step, Rounding rounding) {
  if (!(v_min >= 0.0) || !(v_min <= v_max) || !(step > 0.0) ||
      !std::isfinite(step)) {
    throw InvalidRange("wind sweep requires 0 <= v_min <= v_max and step > 0");
  }

  std::vector<SweepRow> rows;
  const double span = v_max - v_min;
  const auto steps = static_cast<std::size_t>(std::floor(span / step + 1e-9));
  for (std::size_t i = 0; i <= steps; ++i) {
    const double v = v_min + static_cast<double>(i) * step;
    SweepRow row;
    row.v_real = v;
    for (const FeederClassDamage& fcd : class_damage_stage(dataset, v, rounding)) {
      int feeder_total = 0;
      for (const ClassDamage& d : fcd.classes) {
        row.damaged[fcd.feeder][d.class_id] = d.damaged_count;
        feeder_total += d.damaged_count;
      }
      row.feeder_totals[fcd.feeder] = feeder_total;
      row.total += feeder_total;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gridtriage
