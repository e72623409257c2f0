#pragma once

#include <map>
#include <vector>

#include "gridtriage/dataset.hpp"
#include "gridtriage/valuation.hpp"

namespace gridtriage {

struct ScenarioConfig {
  double v_real = 80.0;  // scenario wind speed [m/s], >= 0
  Rounding rounding = Rounding::nearest;
  Mode mode = Mode::literal;
  double average_pole_repair_h = 4.0;
  /// When true the dataset's observed-damage records drive the pipeline
  /// instead of fragility estimates; lines without a record count as intact.
  bool use_observed = false;
};

/// Damage stage output for one feeder, ordered by class id.
struct FeederClassDamage {
  FeederId feeder;
  std::vector<ClassDamage> classes;
  int total() const;
};

/// Fragility evaluation + per-class damaged counts for every feeder.
std::vector<FeederClassDamage> class_damage_stage(const Dataset& dataset,
                                                  double v_real,
                                                  Rounding rounding);

/// Per-line damage for every line (estimated from the class stage, or
/// ingested from the dataset's observed records).
std::map<LineId, LineDamage> line_damage_stage(const Dataset& dataset,
                                               const ScenarioConfig& config);

/// Runs the whole pipeline: failure probabilities, class damage (or observed
/// ingestion), line damage, repair times, dynamic values, line and feeder
/// ranking. Deterministic for fixed inputs.
Assessment run_assessment(const Dataset& dataset, const ScenarioConfig& config);

struct SweepRow {
  double v_real = 0.0;
  /// Damaged poles per feeder and class (round(q*n) on feeder class sizes).
  std::map<FeederId, std::map<ClassId, int>> damaged;
  std::map<FeederId, int> feeder_totals;
  int total = 0;
};

/// Damage stage evaluated at each speed v_min, v_min+step, ... up to v_max.
/// Damaged counts are non-decreasing in wind speed, column by column.
/// Throws InvalidRange for v_min > v_max or step <= 0.
std::vector<SweepRow> wind_sweep(const Dataset& dataset, double v_min,
                                 double v_max, double step,
                                 Rounding rounding = Rounding::nearest);

}  // namespace gridtriage
