#pragma once

#include <map>
#include <span>

#include "gridtriage/fragility.hpp"
#include "gridtriage/network.hpp"

namespace gridtriage {

/// How fractional expected pole counts become integers.
///
/// `nearest` (round half away from zero) reproduces the reference damage
/// tables; `ceil` is the pessimistic alternative. Ceil snaps values within
/// 1e-9 of an integer to that integer first, so products that are whole
/// numbers up to floating noise do not get inflated by one pole.
enum class Rounding { nearest, ceil };

int round_count(double value, Rounding rounding);

/// Damage of one lifetime class across a feeder.
struct ClassDamage {
  ClassId class_id = 0;
  double probability = 0.0;  // failure probability at the scenario wind speed
  int pole_count = 0;        // poles of this class on the feeder
  int damaged_count = 0;
};

enum class DamageSource { estimated, observed };

struct LineDamage {
  LineId line_id = 0;
  std::map<ClassId, int> damaged_by_class;
  /// Per-class contributions before rounding. For observed damage these are
  /// the integer counts verbatim.
  std::map<ClassId, double> expected_by_class;
  int damaged_total = 0;  // always equals the sum of damaged_by_class
  double repair_time_h = 0.0;
  DamageSource source = DamageSource::estimated;
};

struct RepairParams {
  double average_pole_repair_h = 4.0;
};

/// Damaged poles in a class of `pole_count` poles failing with probability
/// `probability`, rounded by `rounding` and clamped to [0, pole_count].
int damaged_in_class(double probability, int pole_count, Rounding rounding);

/// Spreads the feeder-level class damage onto one line in proportion to the
/// line's share of each class's poles. The fractional contributions are kept
/// at full precision and rounded once at the line total; integer per-class
/// counts are then apportioned largest-remainder (ties to the lower class
/// id), capped by the line's inventory, so they always sum to the total.
LineDamage estimate_line_damage(const Network& net, const ClassTable& table,
                                std::span<const ClassDamage> per_class_damage,
                                LineId line,
                                Rounding rounding = Rounding::nearest);

/// Records damage counts reported from the field. Counts must not exceed the
/// line's per-class inventory.
LineDamage ingest_observed_damage(const Network& net, LineId line,
                                  const std::map<ClassId, int>& damaged_by_class);

/// Hours to return the line to service: damaged poles times the average
/// per-pole repair time, plus crew travel. An undamaged line costs nothing
/// (no crew is dispatched).
double repair_time(const LineDamage& damage, const Line& line,
                   const RepairParams& params);

/// Same, with an explicit per-pole duration for each damaged pole
/// (size must equal damage.damaged_total).
double repair_time(const LineDamage& damage, const Line& line,
                   std::span<const double> per_pole_hours);

}  // namespace gridtriage
