#pragma once

#include <span>
#include <vector>

#include "gridtriage/errors.hpp"
#include "gridtriage/ids.hpp"

namespace gridtriage {

/// A pole age band sharing one piecewise-linear fragility curve.
///
/// Below v_th the failure probability stays at the reliability baseline p0;
/// between v_th and v_max it rises linearly; above v_max failure is certain.
struct LifetimeClass {
  ClassId id = 0;
  double lifetime_low_y = 0.0;
  double lifetime_high_y = 0.0;
  double p0 = 0.0;     // baseline failure probability, in (0, 1)
  double v_th = 0.0;   // wind speed where failure departs from p0 [m/s]
  double v_max = 0.0;  // wind speed where failure reaches certainty [m/s]
};

/// Validated, age-ordered list of lifetime classes (front = youngest poles).
class ClassTable {
 public:
  std::span<const LifetimeClass> classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  bool contains(ClassId id) const;
  const LifetimeClass& by_id(ClassId id) const;  // throws InvalidLifetimeClass

 private:
  friend ClassTable validate_class_table(std::vector<LifetimeClass> classes);
  explicit ClassTable(std::vector<LifetimeClass> classes)
      : classes_(std::move(classes)) {}

  std::vector<LifetimeClass> classes_;
};

/// Checks per-class field ranges plus the cross-class ordering rules:
/// lifetime ranges contiguous and ascending, p0 strictly increasing,
/// v_th non-increasing, v_max strictly decreasing. Class ids must be 1..k.
///
/// Older poles are both more likely to fail at rest (larger p0) and give up
/// sooner in wind (lower v_max), so at any speed an older class is never the
/// safer one.
ClassTable validate_class_table(std::vector<LifetimeClass> classes);

/// Slope of the linear segment: (1 - p0) / (v_max - v_th). Always positive.
double slope(const LifetimeClass& cls);

/// Failure probability of one pole of this class at wind speed v_real.
/// Both segment boundaries evaluate on the linear branch (the curve is
/// continuous there, so the assignment is observationally irrelevant).
/// Result is clamped to [p0, 1].
double failure_probability(const LifetimeClass& cls, double v_real);

}  // namespace gridtriage
